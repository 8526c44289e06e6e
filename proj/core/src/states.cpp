#include "morsecs/states.hpp"

#include <cmath>
#include <string>

#include "morsecs/errors.hpp"
#include "morsecs/specfun.hpp"

namespace morsecs {

namespace {

void check_normalizable(std::complex<double> gamma) {
  if (!(std::abs(gamma) < 1.0))
    throw DomainError("squeezed state not normalizable: |gamma| = " +
                      std::to_string(std::abs(gamma)) + " >= 1");
}

std::complex<double> int_pow(std::complex<double> b, int n) {
  std::complex<double> r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

}  // namespace

CoeffSequence coeffs_recurrence(const ModelParams& params, LadderVariant variant,
                                std::complex<double> z, std::complex<double> gamma, int N) {
  check_normalizable(gamma);
  if (N < 0 || N > params.n_max)
    throw DomainError("coeffs_recurrence: N must lie in [0, n_max]");
  CoeffSequence seq;
  seq.z = z;
  seq.gamma = gamma;
  seq.variant = variant;
  seq.Z.reserve(N + 1);
  seq.Z.emplace_back(std::complex<double>{1.0, 0.0});
  if (N >= 1) seq.Z.emplace_back(z);
  for (int n = 1; n < N; ++n) {
    ScaledComplex next = seq.Z[n] * z - seq.Z[n - 1] * (gamma * k_factor(params, variant, n));
    seq.Z.push_back(next);
  }
  return seq;
}

std::complex<double> coeffs_closed_osc(std::complex<double> z, std::complex<double> gamma, int n) {
  if (n < 0) throw DomainError("coeffs_closed_osc: n must be non-negative");
  if (gamma == std::complex<double>{0.0, 0.0}) return int_pow(z, n);
  const std::complex<double> sq = std::sqrt(gamma / 2.0);
  const std::complex<double> w = z / std::sqrt(2.0 * gamma);
  return int_pow(sq, n) * hermite_complex(n, w);
}

std::complex<double> coeffs_closed_energy(const ModelParams& params, std::complex<double> z,
                                          std::complex<double> gamma, int n) {
  if (n < 0 || n > params.n_max)
    throw DomainError("coeffs_closed_energy: n outside [0, n_max]");
  if (n == 0) return {1.0, 0.0};
  if (gamma == std::complex<double>{0.0, 0.0}) return int_pow(z, n);
  const double A = 2.0 * params.p;
  const std::complex<double> sg = std::sqrt(gamma);
  const std::complex<double> v = z / (2.0 * sg) - (1.0 - A) / 2.0;
  const std::complex<double> f = hyp2f1_terminating(n, v, A);
  if (f == std::complex<double>{0.0, 0.0}) return {0.0, 0.0};
  // Magnitude through logs: the Gamma ratio alone can overflow for deep wells.
  const double log_mag =
      0.5 * n * std::log(std::norm(sg)) + std::log(std::abs(f)) + log_gamma(A) - log_gamma(A - n);
  std::complex<double> phase = int_pow(sg / std::abs(sg), n) * (f / std::abs(f));
  if (n % 2 != 0) phase = -phase;
  return std::exp(log_mag) * phase;
}

std::complex<double> vacuum_coeff(const ModelParams& params, LadderVariant variant,
                                  std::complex<double> gamma, int n) {
  check_normalizable(gamma);
  if (n < 0 || n > params.n_max) throw DomainError("vacuum_coeff: n outside [0, n_max]");
  if (n % 2 != 0) return {0.0, 0.0};
  const int m = n / 2;
  switch (variant) {
    case LadderVariant::OscillatorLike: {
      // (2m)!/m! (-gamma/2)^m
      const double log_fact = log_gamma(2.0 * m + 1.0) - log_gamma(m + 1.0);
      return std::exp(log_fact) * int_pow(-gamma / 2.0, m);
    }
    case LadderVariant::EnergyLike: {
      if (m == 0) return {1.0, 0.0};
      // 4^{m-1} (1-2p) (3/2)_{m-1} (3/2-p)_{m-1} gamma^m
      ScaledComplex acc(std::complex<double>{1.0, 0.0});
      acc *= pochhammer(1.5, m - 1);
      acc *= pochhammer(1.5 - params.p, m - 1);
      acc *= ScaledReal(std::ldexp(1.0 - 2.0 * params.p, 2 * (m - 1)));
      acc *= int_pow(gamma, m);
      return acc.to_complex();
    }
    case LadderVariant::Terminating:
      throw DomainError("vacuum_coeff: no closed form for the terminating variant");
  }
  throw DomainError("vacuum_coeff: unknown variant");
}

SqueezedState build_state(const ModelParams& params, LadderVariant variant,
                          std::complex<double> z, std::complex<double> gamma) {
  check_normalizable(gamma);
  SqueezedState state;
  state.params = params;
  state.coeffs = coeffs_recurrence(params, variant, z, gamma, params.n_max);

  // N(z, gamma) = sum_{n=0}^{[p]-1} |Z(n)|^2 / rho(n); all terms positive.
  const int dim = params.n_max;
  std::vector<ScaledReal> rho_seq(dim + 1);
  rho_seq[0] = ScaledReal(1.0);
  for (int n = 1; n <= dim; ++n) rho_seq[n] = rho_seq[n - 1] * k_factor(params, variant, n);

  ScaledReal norm;
  for (int n = 0; n < dim; ++n) norm += state.coeffs.Z[n].abs2() / rho_seq[n];
  state.norm = norm;

  state.c.resize(dim);
  const ScaledReal sqrt_norm = sqrt(norm);
  for (int n = 0; n < dim; ++n)
    state.c[n] = (state.coeffs.Z[n] / (sqrt(rho_seq[n]) * sqrt_norm)).to_complex();
  return state;
}

ResidualReport residual(const SqueezedState& state) {
  const ModelParams& params = state.params;
  const LadderVariant variant = state.variant();
  const int top = params.n_max;  // [p]
  const ScaledReal sqrt_norm = sqrt(state.norm);
  const ScaledReal rho_top = rho(params, variant, top);
  const ScaledReal rho_below = rho_top / k_factor(params, variant, top);

  ResidualReport report;
  report.lambda1 = (state.coeffs.Z[top] / (sqrt(rho_below) * sqrt_norm)).to_complex();
  ScaledComplex l0 = state.coeffs.Z[top - 1] *
                     (state.coeffs.gamma * k_factor(params, variant, top));
  report.lambda0 = (l0 / (sqrt(rho_top) * sqrt_norm)).to_complex();
  report.residual_norm = std::hypot(std::abs(report.lambda1), std::abs(report.lambda0));

  // Cross-check through the ladder action: (A- + gamma A+ - z) c must be
  // supported on the top two indices with amplitudes (-lambda1, +lambda0).
  std::vector<std::complex<double>> full(top + 1, {0.0, 0.0});
  for (int n = 0; n < top; ++n) full[n] = state.c[n];
  const LadderResult lowered = ladder_apply(params, variant, LadderDirection::Lower, full);
  const LadderResult raised = ladder_apply(params, variant, LadderDirection::Raise, full);
  for (int n = 0; n <= top; ++n) {
    const std::complex<double> r =
        lowered.coeffs[n] + state.coeffs.gamma * raised.coeffs[n] - state.coeffs.z * full[n];
    if (n < top - 1) {
      report.support_leak = std::max(report.support_leak, std::abs(r));
    } else if (n == top - 1) {
      report.amplitude_dev = std::max(report.amplitude_dev, std::abs(r + report.lambda1));
    } else {
      report.amplitude_dev = std::max(report.amplitude_dev, std::abs(r - report.lambda0));
    }
  }
  return report;
}

double probability(const SqueezedState& state, int n) {
  if (n < 0 || n >= static_cast<int>(state.c.size()))
    throw DomainError("probability: n outside [0, n_max-1]");
  return std::norm(state.c[n]);
}

NumberStats number_stats(const SqueezedState& state) {
  NumberStats stats;
  double second = 0.0;
  for (std::size_t n = 0; n < state.c.size(); ++n) {
    const double pn = std::norm(state.c[n]);
    stats.mean += static_cast<double>(n) * pn;
    second += static_cast<double>(n) * static_cast<double>(n) * pn;
  }
  stats.variance = second - stats.mean * stats.mean;
  return stats;
}

double mandel_q(const SqueezedState& state) {
  const NumberStats stats = number_stats(state);
  if (!(stats.mean > 0.0))
    throw DomainError("mandel_q: undefined statistic, <N> = 0 for this state");
  return (stats.variance - stats.mean) / stats.mean;
}

std::complex<double> wavefunction(const SqueezedState& state, double x, double t) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t n = 0; n < state.c.size(); ++n) {
    const double psi = eigenfunction_value(state.params, static_cast<int>(n), x);
    if (psi == 0.0) continue;
    const double phase = -energy(state.params, static_cast<int>(n)) * t / state.params.hbar;
    acc += state.c[n] * psi * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace morsecs
