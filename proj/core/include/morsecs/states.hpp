#pragma once

#include <complex>
#include <vector>

#include "morsecs/morse_model.hpp"
#include "morsecs/scaled_real.hpp"

namespace morsecs {

/// Coefficients Z(z, gamma, n) of the squeezed-state expansion, held in
/// scaled form: the recurrence values outgrow double range deep wells.
/// Z has entries for n = 0..N inclusive (one past the state sum, for the
/// truncation correction).
struct CoeffSequence {
  std::complex<double> z;
  std::complex<double> gamma;
  LadderVariant variant = LadderVariant::EnergyLike;
  std::vector<ScaledComplex> Z;
};

/// Z(0) = 1, Z(1) = z, then Z(n+1) = z Z(n) - gamma k(n) Z(n-1) up to n = N.
/// Requires |gamma| < 1 (normalizability) and N <= n_max.
CoeffSequence coeffs_recurrence(const ModelParams& params, LadderVariant variant,
                                std::complex<double> z, std::complex<double> gamma, int N);

/// Oscillator-like closed form (gamma/2)^{n/2} H(n, z / sqrt(2 gamma)),
/// principal square roots; z^n when gamma = 0. Verification route for the
/// recurrence, not the hot path.
std::complex<double> coeffs_closed_osc(std::complex<double> z, std::complex<double> gamma, int n);

/// Energy-like closed form
///   (-1)^n gamma^{n/2} (Gamma(2p)/Gamma(2p-n)) 2F1(-n, -v; 1-2p; 2),
/// v = z/(2 sqrt(gamma)) + (2p-1)/2; z^n when gamma = 0, 1 for n = 0.
std::complex<double> coeffs_closed_energy(const ModelParams& params, std::complex<double> z,
                                          std::complex<double> gamma, int n);

/// Squeezed-vacuum coefficient Z(0, gamma, n); odd n vanish identically.
/// Even closed forms exist for the oscillator-like and energy-like variants.
std::complex<double> vacuum_coeff(const ModelParams& params, LadderVariant variant,
                                  std::complex<double> gamma, int n);

/// A normalized squeezed coherent state: amplitudes c_n over the bound states
/// n = 0..n_max-1 with sum |c_n|^2 = 1. Immutable once built.
struct SqueezedState {
  ModelParams params;
  CoeffSequence coeffs;  // Z(0..n_max), one entry past the state sum
  ScaledReal norm;       // N(z, gamma) = sum |Z(n)|^2 / rho(n) over the state sum
  std::vector<std::complex<double>> c;  // size n_max

  LadderVariant variant() const { return coeffs.variant; }
};

SqueezedState build_state(const ModelParams& params, LadderVariant variant,
                          std::complex<double> z, std::complex<double> gamma);

/// Truncation correction of the eigenvalue equation: (A- + gamma A+ - z)
/// applied to the state is supported only on the top two basis states, with
/// amplitudes -lambda1 and +lambda0.
struct ResidualReport {
  std::complex<double> lambda1;  // Z([p]) / sqrt(rho([p]-1) N)
  std::complex<double> lambda0;  // gamma k([p]) Z([p]-1) / sqrt(rho([p]) N)
  double residual_norm = 0.0;    // sqrt(|lambda1|^2 + |lambda0|^2)
  double support_leak = 0.0;     // largest ladder-route amplitude below index [p]-1
  double amplitude_dev = 0.0;    // ladder route vs closed form on the top two indices
};

ResidualReport residual(const SqueezedState& state);

/// P(n) = |c_n|^2.
double probability(const SqueezedState& state, int n);

struct NumberStats {
  double mean = 0.0;
  double variance = 0.0;
};

NumberStats number_stats(const SqueezedState& state);

/// Mandel Q = (variance - mean) / mean of the number distribution.
/// Throws DomainError when the mean vanishes (pure ground state).
double mandel_q(const SqueezedState& state);

/// Psi(x, t) = sum_n c_n e^{-i E_n t / hbar} psi_n(x).
std::complex<double> wavefunction(const SqueezedState& state, double x, double t);

}  // namespace morsecs
