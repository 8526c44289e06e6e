#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "morsecs/scaled_real.hpp"

namespace morsecs {

/// Choice of the ladder strength k(n), which fixes the moment factors rho(n)
/// and therefore the whole family of squeezed coherent states.
///   OscillatorLike: k(n) = n
///   EnergyLike:     k(n) = n (2p - n)
///   Terminating:    k(n) = n ([p] + 1 - n), so raising annihilates the top state
enum class LadderVariant { OscillatorLike, EnergyLike, Terminating };

const char* to_string(LadderVariant v);

/// Parameters of one Morse well. Immutable after construction; p = (nu-1)/2
/// and n_max = floor(p) are derived once. Construction rejects wells with
/// fewer than two bound states and the degenerate case of integral p (the
/// top-state normalization would vanish).
struct ModelParams {
  double nu = 0.0;    // dimensionless well depth
  double beta = 1.0;  // inverse length scale of the well
  double hbar = 1.0;
  double m_r = 0.5;   // reduced mass; hbar/(2 m_r) = 1 with the defaults
  double p = 0.0;     // (nu - 1) / 2
  int n_max = 0;      // floor(p), index of the highest bound state

  static ModelParams from_nu(double nu, double beta = 1.0, double hbar = 1.0, double m_r = 0.5);

  double epsilon(int n) const { return p - static_cast<double>(n); }
};

/// nu = omega_e / (omega_e x_e) from the spectroscopic constants.
ModelParams params_from_spectroscopic(double omega_e, double omega_e_x_e, double beta = 1.0,
                                      double hbar = 1.0, double m_r = 0.5);

/// E_n = -(hbar^2 / 2 m_r) beta^2 (p - n)^2, n in [0, n_max].
double energy(const ModelParams& params, int n);

/// Shifted energy e(n) = n (2p - n) = eps_0^2 - eps_n^2.
double shifted_energy(const ModelParams& params, int n);

/// ln of the normalization constant with beta stripped out:
/// N_n = sqrt(beta) * exp(log_norm_const_unitless).
double log_norm_const_unitless(const ModelParams& params, int n);

/// Normalization factor N_n = sqrt(2 beta (p-n) Gamma(n+1) / Gamma(2p-n+1)).
ScaledReal norm_const(const ModelParams& params, int n);

/// One bound state: index, decay exponent, energy and normalization.
struct EigenState {
  int n = 0;
  double epsilon = 0.0;
  double energy = 0.0;
  ScaledReal norm_const;
};

EigenState eigen_state(const ModelParams& params, int n);

/// psi_n(x) = N_n e^{-y/2} y^{eps_n} L_n^{2 eps_n}(y) with y = nu e^{-beta x},
/// evaluated in log space (the bare factors under/overflow far from the well).
double eigenfunction_value(const ModelParams& params, int n, double x);

/// Ladder strength k(n) of the given variant, 1 <= n <= n_max.
double k_factor(const ModelParams& params, LadderVariant variant, int n);

/// Moment factor rho(n) = prod_{i=1..n} k(i), rho(0) = 1.
ScaledReal rho(const ModelParams& params, LadderVariant variant, int n);

enum class LadderDirection { Lower, Raise };

struct LadderResult {
  std::vector<std::complex<double>> coeffs;
  bool truncated = false;  // a nonzero amplitude was raised out of the basis
};

/// Apply A- or A+ to a coefficient vector over the full basis (length
/// n_max + 1). Raising from n_max is dropped and flagged unless the variant
/// terminates there by construction.
LadderResult ladder_apply(const ModelParams& params, LadderVariant variant,
                          LadderDirection direction, std::span<const std::complex<double>> c);

/// Energy levels of the well shifted by its depth; tends to the flat-bottom
/// limit hbar sqrt(k_force/m_r) (n + 1/2) as beta -> 0.
double ho_limit_energy(int n, double k_force, double beta, double hbar, double m_r);

/// <psi_m | psi_n> by Gauss quadrature adapted to the pair (exact for the
/// polynomial part of the integrand).
double eigen_overlap(const ModelParams& params, int m, int n, int order = 200);

/// Named molecule: either nu directly or the spectroscopic pair.
struct MoleculePreset {
  std::string name;
  double nu = 0.0;        // takes precedence when > 0
  double omega_e = 0.0;
  double omega_e_xe = 0.0;
};

/// Built-in presets (hcl, cs2).
const std::vector<MoleculePreset>& builtin_presets();

/// Parse presets from a sectioned key = value stream:
///   [name]
///   nu = 57.44        (or omega_e = ... / omega_e_xe = ...)
std::vector<MoleculePreset> parse_presets(std::istream& in);
std::vector<MoleculePreset> load_presets_file(const std::string& path);

ModelParams resolve_preset(const MoleculePreset& preset, double beta = 1.0, double hbar = 1.0,
                           double m_r = 0.5);

}  // namespace morsecs
