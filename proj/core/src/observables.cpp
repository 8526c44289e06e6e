#include "morsecs/observables.hpp"

#include <cmath>
#include <string>

#include "morsecs/errors.hpp"
#include "morsecs/specfun.hpp"

namespace morsecs {

namespace {

constexpr double kDoublingTol = 1e-8;      // order-doubling agreement for x^2
constexpr double kVarianceFloor = -1e-10;  // tolerated negative variance noise

void check_pair(const ModelParams& params, int n, int k, const char* where) {
  if (n < 0 || k < 0 || n + k > params.n_max)
    throw DomainError(std::string(where) + ": need 0 <= n, n+k <= n_max, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
}

double log_gamma_ratio_part(const ModelParams& params, int n, int k) {
  // log of N'_{n+k} N'_n Gamma(nu-k-n) / n!   (the shared core of Eqs. x/p/p^2)
  return log_norm_const_unitless(params, n + k) + log_norm_const_unitless(params, n) +
         log_gamma(params.nu - k - n) - log_gamma(n + 1.0);
}

}  // namespace

const char* to_string(Observable obs) {
  switch (obs) {
    case Observable::X: return "x";
    case Observable::P: return "p";
    case Observable::P2: return "p2";
    case Observable::X2: return "x2";
  }
  return "?";
}

AlphaFrequency alpha_frequency(const ModelParams& params, int n, int k) {
  check_pair(params, n, k, "alpha_frequency");
  const double kd = static_cast<double>(k);
  const double value = (params.hbar * params.beta * params.beta / (2.0 * params.m_r)) * kd *
                       (2.0 * (params.p - n) - kd);
  return {n, k, value};
}

double x_elem(const ModelParams& params, int n, int k) {
  check_pair(params, n, k, "x_elem");
  if (k == 0) {
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) sum += 1.0 / (params.nu - n - j);
    return (std::log(params.nu) - digamma(params.nu - 1.0 - 2.0 * n) + sum) / params.beta;
  }
  const double denom = params.nu - k - 1.0 - 2.0 * n;  // never zero: 2(p-n) is not an integer
  const double log_mag = log_gamma_ratio_part(params, n, k) - std::log(static_cast<double>(k)) -
                         std::log(std::fabs(denom));
  const double sign = ((k % 2 == 0) ? -1.0 : 1.0) * ((denom < 0.0) ? -1.0 : 1.0);
  return sign * std::exp(log_mag) / params.beta;
}

std::complex<double> p_elem(const ModelParams& params, int n, int k) {
  check_pair(params, n, k, "p_elem");
  if (k == 0) return {0.0, 0.0};
  const double log_mag = log_gamma_ratio_part(params, n, k) - std::log(2.0);
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;
  return {0.0, sign * params.hbar * params.beta * std::exp(log_mag)};
}

double p2_elem(const ModelParams& params, int n, int k) {
  check_pair(params, n, k, "p2_elem");
  const double hb2 = params.hbar * params.hbar * params.beta * params.beta;
  if (k == 0) return -hb2 * (2.0 * n + 1.0) * (2.0 * n + 1.0 - params.nu) / 4.0;
  const double factor = (k - 1.0) * params.nu - k * (k + 2.0 * n + 1.0);
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;
  return sign * hb2 * std::exp(log_gamma_ratio_part(params, n, k)) * factor / 4.0;
}

namespace {

struct LogVal {
  double log_abs;
  double sign;
};

// L_j^{2 eps_j} at every node of the rule, in log form.
std::vector<LogVal> laguerre_row(const ModelParams& params, int j, const QuadratureRule& rule) {
  std::vector<LogVal> row(rule.order);
  const double alpha_j = 2.0 * params.epsilon(j);
  for (int i = 0; i < rule.order; ++i) {
    const ScaledReal value = assoc_laguerre_scaled(j, alpha_j, rule.nodes[i]);
    row[i] = {value.log_abs(), static_cast<double>(value.sign())};
  }
  return row;
}

// integral of N'_m N'_n e^-y y^(eps_m+eps_n-1) L_m L_n (ln(nu/y))^2 dy against
// a rule whose weight exponent matches the pair exactly.
double x2_pair_integral(const ModelParams& params, int m, int n, const QuadratureRule& rule,
                        const std::vector<LogVal>& row_m, const std::vector<LogVal>& row_n) {
  const double log_pref = rule.log_mass + log_norm_const_unitless(params, m) +
                          log_norm_const_unitless(params, n);
  const double log_nu = std::log(params.nu);
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double lt = rule.log_weights[i] + log_pref + row_m[i].log_abs + row_n[i].log_abs;
    if (lt < -745.0) continue;
    const double lx = log_nu - std::log(rule.nodes[i]);
    acc += row_m[i].sign * row_n[i].sign * std::exp(lt) * lx * lx;
  }
  return acc / (params.beta * params.beta);
}

void check_doubling(double coarse, double fine, int n, int k) {
  if (std::fabs(coarse - fine) > kDoublingTol * std::max({1.0, std::fabs(coarse), std::fabs(fine)}))
    throw AccuracyError("x2_elem: quadrature not converged at (n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + "): " + std::to_string(coarse) + " vs " +
                        std::to_string(fine));
}

int default_order(const ModelParams&, int quad_order) {
  // 400 keeps the order-doubled x^2 entries inside 1e-10 agreement over the
  // Gauss branch; the squared-log factor converges too slowly for that at 200.
  return quad_order > 0 ? quad_order : 400;
}

int class_order(int base, int c) {
  // keep 2*order - 1 - c (the polynomial budget left for the squared-log
  // factor after the Laguerre product of degree c) roughly constant
  return base + (c + 1) / 2;
}

// Pairs whose weight exponent drops below this integrate in the exponential
// variable instead: the Gauss family cannot resolve the squared-log factor
// once the measure has real mass near y = 0 (top-of-well states).
constexpr double kGaussAlphaCutoff = 30.0;

// x^2 entry by the trapezoid rule in u = beta x, where the integrand
// N'_m N'_n e^{-y} y^{eps_m+eps_n} L_m L_n u^2 (y = nu e^{-u}) is entire and
// decays double-exponentially on the left, exponentially on the right; the
// step resolves the fastest Laguerre oscillation. Returns the half-step
// result, checked against the full-step subsample.
double x2_exp_trapezoid(const ModelParams& params, int m, int n) {
  const double s = params.epsilon(m) + params.epsilon(n);
  const double mn = static_cast<double>(m + n);
  const double log_pref =
      log_norm_const_unitless(params, m) + log_norm_const_unitless(params, n);
  const double am = 2.0 * params.epsilon(m);
  const double an = 2.0 * params.epsilon(n);

  // range: envelope exponent with slop on both flanks
  double y_hi = s + mn + 1.0;
  auto envelope = [&](double y) {
    return log_pref - y + s * std::log(y) + mn * std::log1p(y) + 30.0;
  };
  while (envelope(y_hi) > -60.0) y_hi *= 1.5;
  const double log_l0 = log_gamma(m + am + 1.0) - log_gamma(am + 1.0) - log_gamma(m + 1.0) +
                        log_gamma(n + an + 1.0) - log_gamma(an + 1.0) - log_gamma(n + 1.0);
  const double u_lo = std::log(params.nu) - std::log(y_hi);
  const double u_hi =
      std::max(std::log(params.nu) - (-60.0 - log_pref - log_l0) / s, u_lo + 1.0);

  const double step = std::min(0.5 / std::sqrt(s + mn + 4.0), 0.8 / (s + mn + 30.0));
  long half_steps = static_cast<long>(std::ceil((u_hi - u_lo) / step));
  half_steps += half_steps % 2;  // even, so the coarse pass is a strict subsample
  const long fine_steps = 2 * half_steps;
  if (fine_steps > 4000000)
    throw AccuracyError("x2_elem: trapezoid grid blew up at (m=" + std::to_string(m) +
                        ", n=" + std::to_string(n) + ")");

  double acc_fine = 0.0;
  double acc_coarse = 0.0;
  for (long i = 0; i <= fine_steps; ++i) {
    const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) / fine_steps;
    const double y = params.nu * std::exp(-u);
    const double base = log_pref - y + s * std::log(y);
    if (base + log_l0 < -700.0 && base + mn * std::log1p(y) < -700.0) continue;
    const ScaledReal lm = assoc_laguerre_scaled(m, am, y);
    const ScaledReal ln = assoc_laguerre_scaled(n, an, y);
    const double lt = base + lm.log_abs() + ln.log_abs();
    if (lt < -700.0) continue;
    const double sample = static_cast<double>(lm.sign() * ln.sign()) * std::exp(lt) * u * u;
    acc_fine += sample;
    if (i % 2 == 0) acc_coarse += sample;
  }
  const double width = u_hi - u_lo;
  const double fine = acc_fine * width / fine_steps;
  const double coarse = acc_coarse * width / half_steps;
  check_doubling(coarse, fine, n, m - n);
  return fine / (params.beta * params.beta);
}

}  // namespace

double x2_elem(const ModelParams& params, int n, int k, const QuadratureRule& rule) {
  check_pair(params, n, k, "x2_elem");
  const int m = n + k;
  const double alpha = params.epsilon(m) + params.epsilon(n) - 1.0;
  if (alpha < kGaussAlphaCutoff) return x2_exp_trapezoid(params, m, n);
  const int order = class_order(rule.order, m + n);
  const QuadratureRule* coarse = &rule;
  QuadratureRule rebuilt;
  if (rule.order != order ||
      std::fabs(rule.alpha - alpha) > 1e-12 * std::max(1.0, std::fabs(alpha))) {
    rebuilt = gauss_laguerre_rule(order, alpha);
    coarse = &rebuilt;
  }
  const QuadratureRule fine = gauss_laguerre_rule(2 * order, alpha);
  const double i1 = x2_pair_integral(params, m, n, *coarse, laguerre_row(params, m, *coarse),
                                     laguerre_row(params, n, *coarse));
  const double i2 =
      x2_pair_integral(params, m, n, fine, laguerre_row(params, m, fine), laguerre_row(params, n, fine));
  check_doubling(i1, i2, n, k);
  return i2;
}

MatrixElementTable::MatrixElementTable(Observable obs, int dim) : obs_(obs), dim_(dim) {
  if (dim < 1) throw DomainError("MatrixElementTable: dimension must be positive");
  tri_.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0);
}

namespace {
inline std::size_t tri_index(int dim, int n, int k) {
  // row n holds entries k = 0..dim-1-n
  return static_cast<std::size_t>(n) * dim - static_cast<std::size_t>(n) * (n - 1) / 2 +
         static_cast<std::size_t>(k);
}
}  // namespace

double MatrixElementTable::value(int n, int k) const {
  if (n < 0 || k < 0 || n + k >= dim_) throw DomainError("MatrixElementTable: index out of range");
  return tri_[tri_index(dim_, n, k)];
}

double& MatrixElementTable::value(int n, int k) {
  if (n < 0 || k < 0 || n + k >= dim_) throw DomainError("MatrixElementTable: index out of range");
  return tri_[tri_index(dim_, n, k)];
}

std::complex<double> MatrixElementTable::element(int m, int n) const {
  const int lo = std::min(m, n);
  const int k = std::abs(m - n);
  const double v = value(lo, k);
  if (!skewsymmetric()) return {v, 0.0};
  // stored: imaginary coefficient of <p>_{lo+k, lo}
  return (m >= n) ? std::complex<double>{0.0, v} : std::complex<double>{0.0, -v};
}

MatrixElementTable build_table(const ModelParams& params, Observable obs, int quad_order) {
  const int dim = params.n_max;
  MatrixElementTable table(obs, dim);

  if (obs != Observable::X2) {
    for (int n = 0; n < dim; ++n) {
      for (int k = 0; n + k < dim; ++k) {
        switch (obs) {
          case Observable::X: table.value(n, k) = x_elem(params, n, k); break;
          case Observable::P: table.value(n, k) = p_elem(params, n, k).imag(); break;
          case Observable::P2: table.value(n, k) = p2_elem(params, n, k); break;
          default: break;
        }
      }
    }
    return table;
  }

  // x^2: one rule pair per anti-diagonal c = m + n (the weight exponent
  // depends only on c), Laguerre rows shared across the pairs of the class.
  // Classes past the Gauss cutoff fall back to the exponential trapezoid.
  const int order = default_order(params, quad_order);
  for (int c = 0; c <= 2 * (dim - 1); ++c) {
    const double alpha = params.nu - 2.0 - static_cast<double>(c);
    const int jlo = std::max(0, c - (dim - 1));
    if (alpha < kGaussAlphaCutoff) {
      for (int n = jlo; 2 * n <= c; ++n) table.value(n, c - 2 * n) = x2_exp_trapezoid(params, c - n, n);
      continue;
    }
    const QuadratureRule coarse = gauss_laguerre_rule(class_order(order, c), alpha);
    const QuadratureRule fine = gauss_laguerre_rule(2 * class_order(order, c), alpha);
    const int jhi = std::min(c, dim - 1);
    std::vector<std::vector<LogVal>> rows_coarse(jhi - jlo + 1), rows_fine(jhi - jlo + 1);
    for (int j = jlo; j <= jhi; ++j) {
      rows_coarse[j - jlo] = laguerre_row(params, j, coarse);
      rows_fine[j - jlo] = laguerre_row(params, j, fine);
    }
    for (int n = jlo; 2 * n <= c; ++n) {
      const int m = c - n;
      const double i1 =
          x2_pair_integral(params, m, n, coarse, rows_coarse[m - jlo], rows_coarse[n - jlo]);
      const double i2 = x2_pair_integral(params, m, n, fine, rows_fine[m - jlo], rows_fine[n - jlo]);
      check_doubling(i1, i2, n, m - n);
      table.value(n, m - n) = i2;
    }
  }
  return table;
}

ObservableTables build_tables(const ModelParams& params, int quad_order) {
  return {build_table(params, Observable::X, quad_order),
          build_table(params, Observable::P, quad_order),
          build_table(params, Observable::P2, quad_order),
          build_table(params, Observable::X2, quad_order)};
}

double expectation(const SqueezedState& state, const MatrixElementTable& table, double t) {
  const int dim = static_cast<int>(state.c.size());
  if (dim != table.dim())
    throw ConfigError("expectation: table dimension " + std::to_string(table.dim()) +
                      " does not match state dimension " + std::to_string(dim));
  const ModelParams& params = state.params;
  double acc = 0.0;
  if (!table.skewsymmetric()) {
    for (int n = 0; n < dim; ++n) acc += std::norm(state.c[n]) * table.value(n, 0);
    for (int n = 0; n < dim; ++n) {
      for (int k = 1; n + k < dim; ++k) {
        const std::complex<double> q = std::conj(state.c[n]) * state.c[n + k];
        const double at = alpha_frequency(params, n, k).value * t;
        acc += 2.0 * (q.real() * std::cos(at) + q.imag() * std::sin(at)) * table.value(n, k);
      }
    }
    return acc;
  }
  for (int n = 0; n < dim; ++n) {
    for (int k = 1; n + k < dim; ++k) {
      const std::complex<double> q = std::conj(state.c[n]) * state.c[n + k];
      const double at = alpha_frequency(params, n, k).value * t;
      acc += (q.real() * std::sin(at) - q.imag() * std::cos(at)) * table.value(n, k);
    }
  }
  return -2.0 * acc;  // 2i times the imaginary table entries
}

TrajectoryPoint dispersions(const SqueezedState& state, const ObservableTables& tables, double t) {
  TrajectoryPoint pt;
  pt.t = t;
  pt.x_mean = expectation(state, tables.x, t);
  pt.p_mean = expectation(state, tables.p, t);
  double x_var = expectation(state, tables.x2, t) - pt.x_mean * pt.x_mean;
  double p_var = expectation(state, tables.p2, t) - pt.p_mean * pt.p_mean;
  for (double* var : {&x_var, &p_var}) {
    if (*var < kVarianceFloor)
      throw AccuracyError("dispersions: variance " + std::to_string(*var) +
                          " below the numerical tolerance at t = " + std::to_string(t));
    if (*var < 0.0) {
      *var = 0.0;
      pt.clamped = true;
    }
  }
  pt.x_var = x_var;
  pt.p_var = p_var;
  pt.uncertainty = x_var * p_var;
  return pt;
}

std::vector<TrajectoryPoint> trajectory(const SqueezedState& state, const ObservableTables& tables,
                                        std::span<const double> times) {
  std::vector<TrajectoryPoint> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(dispersions(state, tables, t));
  return out;
}

}  // namespace morsecs
