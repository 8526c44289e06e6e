#include "morsecs/morse_model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "morsecs/errors.hpp"
#include "morsecs/quadrature.hpp"
#include "morsecs/specfun.hpp"

namespace morsecs {

const char* to_string(LadderVariant v) {
  switch (v) {
    case LadderVariant::OscillatorLike: return "oscillator";
    case LadderVariant::EnergyLike: return "energy";
    case LadderVariant::Terminating: return "terminating";
  }
  return "?";
}

ModelParams ModelParams::from_nu(double nu, double beta, double hbar, double m_r) {
  if (!std::isfinite(nu) || nu <= 1.0)
    throw DomainError("ModelParams: nu must be finite and > 1, got " + std::to_string(nu));
  if (!(beta > 0.0) || !(hbar > 0.0) || !(m_r > 0.0))
    throw DomainError("ModelParams: beta, hbar and m_r must be positive");
  ModelParams params;
  params.nu = nu;
  params.beta = beta;
  params.hbar = hbar;
  params.m_r = m_r;
  params.p = (nu - 1.0) / 2.0;
  params.n_max = static_cast<int>(std::floor(params.p));
  if (params.n_max < 1)
    throw DomainError("ModelParams: well too shallow, fewer than two bound states (nu = " +
                      std::to_string(nu) + ")");
  if (params.p == std::floor(params.p))
    throw DomainError("ModelParams: integral p = " + std::to_string(params.p) +
                      " is degenerate (top-state normalization vanishes); perturb nu");
  return params;
}

ModelParams params_from_spectroscopic(double omega_e, double omega_e_x_e, double beta, double hbar,
                                      double m_r) {
  if (!(omega_e > omega_e_x_e) || !(omega_e_x_e > 0.0))
    throw DomainError("params_from_spectroscopic: need omega_e > omega_e_x_e > 0");
  return ModelParams::from_nu(omega_e / omega_e_x_e, beta, hbar, m_r);
}

namespace {

void check_index(const ModelParams& params, int n, int lo, const char* where) {
  if (n < lo || n > params.n_max)
    throw DomainError(std::string(where) + ": index " + std::to_string(n) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(params.n_max) + "]");
}

}  // namespace

double energy(const ModelParams& params, int n) {
  check_index(params, n, 0, "energy");
  const double eps = params.epsilon(n);
  return -(params.hbar * params.hbar / (2.0 * params.m_r)) * params.beta * params.beta * eps * eps;
}

double shifted_energy(const ModelParams& params, int n) {
  check_index(params, n, 0, "shifted_energy");
  return static_cast<double>(n) * (2.0 * params.p - static_cast<double>(n));
}

double log_norm_const_unitless(const ModelParams& params, int n) {
  check_index(params, n, 0, "norm_const");
  const double two_eps = 2.0 * params.epsilon(n);
  return 0.5 * (std::log(two_eps) + log_gamma(n + 1.0) - log_gamma(2.0 * params.p - n + 1.0));
}

ScaledReal norm_const(const ModelParams& params, int n) {
  return ScaledReal::from_log(log_norm_const_unitless(params, n) + 0.5 * std::log(params.beta), 1);
}

EigenState eigen_state(const ModelParams& params, int n) {
  check_index(params, n, 0, "eigen_state");
  return {n, params.epsilon(n), energy(params, n), norm_const(params, n)};
}

double eigenfunction_value(const ModelParams& params, int n, double x) {
  check_index(params, n, 0, "eigenfunction_value");
  if (!std::isfinite(x)) throw DomainError("eigenfunction_value: x must be finite");
  const double y = params.nu * std::exp(-params.beta * x);
  if (!(y > 0.0) || y > 1e300) return 0.0;  // deep in either tail
  const double eps = params.epsilon(n);
  const ScaledReal lag = assoc_laguerre_scaled(n, 2.0 * eps, y);
  if (lag.is_zero()) return 0.0;
  const double log_mag = log_norm_const_unitless(params, n) + 0.5 * std::log(params.beta) -
                         0.5 * y + eps * std::log(y) + lag.log_abs();
  if (log_mag < -745.0) return 0.0;
  return static_cast<double>(lag.sign()) * std::exp(log_mag);
}

double k_factor(const ModelParams& params, LadderVariant variant, int n) {
  check_index(params, n, 1, "k_factor");
  const double nd = static_cast<double>(n);
  switch (variant) {
    case LadderVariant::OscillatorLike: return nd;
    case LadderVariant::EnergyLike: return nd * (2.0 * params.p - nd);
    case LadderVariant::Terminating: return nd * (params.n_max + 1.0 - nd);
  }
  throw DomainError("k_factor: unknown variant");
}

ScaledReal rho(const ModelParams& params, LadderVariant variant, int n) {
  check_index(params, n, 0, "rho");
  ScaledReal r(1.0);
  for (int i = 1; i <= n; ++i) r *= k_factor(params, variant, i);
  return r;
}

LadderResult ladder_apply(const ModelParams& params, LadderVariant variant,
                          LadderDirection direction, std::span<const std::complex<double>> c) {
  const std::size_t dim = static_cast<std::size_t>(params.n_max) + 1;
  if (c.size() != dim)
    throw DomainError("ladder_apply: coefficient vector must have length n_max + 1 = " +
                      std::to_string(dim));
  LadderResult out;
  out.coeffs.assign(dim, {0.0, 0.0});
  if (direction == LadderDirection::Lower) {
    for (int n = 1; n <= params.n_max; ++n)
      out.coeffs[n - 1] += std::sqrt(k_factor(params, variant, n)) * c[n];
  } else {
    for (int n = 0; n + 1 <= params.n_max; ++n)
      out.coeffs[n + 1] += std::sqrt(k_factor(params, variant, n + 1)) * c[n];
    // Raising out of the basis: amplitude sqrt(k(n_max+1)) c[n_max] has
    // nowhere to go. The terminating variant has k(n_max+1) = 0 exactly.
    if (variant != LadderVariant::Terminating && c[dim - 1] != std::complex<double>{0.0, 0.0})
      out.truncated = true;
  }
  return out;
}

double ho_limit_energy(int n, double k_force, double beta, double hbar, double m_r) {
  if (n < 0) throw DomainError("ho_limit_energy: n must be non-negative");
  if (!(k_force > 0.0) || !(beta > 0.0) || !(hbar > 0.0) || !(m_r > 0.0))
    throw DomainError("ho_limit_energy: parameters must be positive");
  const double nu = 2.0 * std::sqrt(m_r * k_force) / (beta * beta * hbar);
  const double a = (nu - 1.0) / 2.0 - static_cast<double>(n);
  const double b = nu / 2.0;
  return -(hbar * hbar / (2.0 * m_r)) * beta * beta * (a * a - b * b);
}

double eigen_overlap(const ModelParams& params, int m, int n, int order) {
  check_index(params, m, 0, "eigen_overlap");
  check_index(params, n, 0, "eigen_overlap");
  const double em = params.epsilon(m);
  const double en = params.epsilon(n);
  const double alpha = em + en - 1.0;
  const QuadratureRule rule = gauss_laguerre_rule(order, alpha);
  const double log_pref =
      log_norm_const_unitless(params, m) + log_norm_const_unitless(params, n) + rule.log_mass;
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double y = rule.nodes[i];
    const ScaledReal lm = assoc_laguerre_scaled(m, 2.0 * em, y);
    const ScaledReal ln = assoc_laguerre_scaled(n, 2.0 * en, y);
    if (lm.is_zero() || ln.is_zero()) continue;
    const double lt = rule.log_weights[i] + log_pref + lm.log_abs() + ln.log_abs();
    acc += static_cast<double>(lm.sign() * ln.sign()) * std::exp(lt);
  }
  return acc;
}

const std::vector<MoleculePreset>& builtin_presets() {
  static const std::vector<MoleculePreset> presets = {
      {"hcl", 57.44, 0.0, 0.0},
      {"cs2", 524.55, 0.0, 0.0},
  };
  return presets;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<MoleculePreset> parse_presets(std::istream& in) {
  std::vector<MoleculePreset> out;
  MoleculePreset current;
  bool open = false;
  std::string line;
  int lineno = 0;
  auto flush = [&] {
    if (open) {
      if (current.nu <= 0.0 && !(current.omega_e > 0.0 && current.omega_e_xe > 0.0))
        throw ConfigError("preset [" + current.name + "] needs nu or the omega_e pair");
      out.push_back(current);
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("preset file line " + std::to_string(lineno) +
                                             ": unterminated section header");
      flush();
      current = MoleculePreset{};
      current.name = trim(t.substr(1, t.size() - 2));
      if (current.name.empty())
        throw ConfigError("preset file line " + std::to_string(lineno) + ": empty section name");
      open = true;
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos || !open)
      throw ConfigError("preset file line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    double parsed = 0.0;
    try {
      std::size_t used = 0;
      parsed = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw ConfigError("preset file line " + std::to_string(lineno) + ": bad number '" + val + "'");
    }
    if (key == "nu") current.nu = parsed;
    else if (key == "omega_e") current.omega_e = parsed;
    else if (key == "omega_e_xe") current.omega_e_xe = parsed;
    else throw ConfigError("preset file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  flush();
  return out;
}

std::vector<MoleculePreset> load_presets_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open preset file: " + path);
  return parse_presets(in);
}

ModelParams resolve_preset(const MoleculePreset& preset, double beta, double hbar, double m_r) {
  if (preset.nu > 0.0) return ModelParams::from_nu(preset.nu, beta, hbar, m_r);
  return params_from_spectroscopic(preset.omega_e, preset.omega_e_xe, beta, hbar, m_r);
}

}  // namespace morsecs
