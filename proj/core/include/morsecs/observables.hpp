#pragma once

#include <complex>
#include <span>
#include <vector>

#include "morsecs/morse_model.hpp"
#include "morsecs/quadrature.hpp"
#include "morsecs/states.hpp"

namespace morsecs {

enum class Observable { X, P, P2, X2 };

const char* to_string(Observable obs);

/// Transition frequency alpha(n, k) = (hbar beta^2 / 2 m_r) k (2(p-n) - k);
/// equals (E_{n+k} - E_n) / hbar.
struct AlphaFrequency {
  int n = 0;
  int k = 0;
  double value = 0.0;
};

AlphaFrequency alpha_frequency(const ModelParams& params, int n, int k);

/// <x>_{n+k,n}; diagonal from the digamma form, off-diagonal from the Gamma
/// ratio, both assembled in log space. General beta scales x by 1/beta.
double x_elem(const ModelParams& params, int n, int k);

/// <p>_{n+k,n}: purely imaginary, zero on the diagonal, skewsymmetric.
std::complex<double> p_elem(const ModelParams& params, int n, int k);

/// <p^2>_{n+k,n}.
double p2_elem(const ModelParams& params, int n, int k);

/// <x^2>_{n+k,n} by Gauss quadrature adapted to the pair; no analytic form is
/// available. The rule supplies the order; it is rebuilt at the pair's exact
/// weight exponent when it does not match. An order-doubled evaluation guards
/// convergence (AccuracyError beyond 1e-8 relative).
double x2_elem(const ModelParams& params, int n, int k, const QuadratureRule& rule);

/// Triangular table of <obs>_{n+k,n} over the state basis n = 0..n_max-1.
/// For P the stored number is the imaginary coefficient of <p>_{n+k,n}.
/// Immutable after construction.
class MatrixElementTable {
 public:
  MatrixElementTable(Observable obs, int dim);

  Observable observable() const { return obs_; }
  bool skewsymmetric() const { return obs_ == Observable::P; }
  int dim() const { return dim_; }

  /// Stored value for the ordered pair (n+k, n), k >= 0.
  double value(int n, int k) const;
  double& value(int n, int k);

  /// Full element <obs>_{m,n} with symmetry applied (P comes back imaginary).
  std::complex<double> element(int m, int n) const;

 private:
  Observable obs_;
  int dim_;
  std::vector<double> tri_;
};

/// Analytic table for X, P or P2; quadrature table for X2 (order-doubling
/// checked entry by entry). quad_order 0 picks 200, or 400 past 100 states.
MatrixElementTable build_table(const ModelParams& params, Observable obs, int quad_order = 0);

struct ObservableTables {
  MatrixElementTable x, p, p2, x2;
};

ObservableTables build_tables(const ModelParams& params, int quad_order = 0);

/// <obs>(z, gamma; t): the time-dependent expectation assembled from the
/// symmetric (cos/sin regrouped) or skewsymmetric branch. Real by
/// construction in both branches.
double expectation(const SqueezedState& state, const MatrixElementTable& table, double t);

/// One sample of the phase-space trajectory with the uncertainty product
/// Delta = (dx)^2 (dp)^2.
struct TrajectoryPoint {
  double t = 0.0;
  double x_mean = 0.0;
  double p_mean = 0.0;
  double x_var = 0.0;
  double p_var = 0.0;
  double uncertainty = 0.0;
  bool clamped = false;  // a variance in [-1e-10, 0) was clamped to zero
};

TrajectoryPoint dispersions(const SqueezedState& state, const ObservableTables& tables, double t);

std::vector<TrajectoryPoint> trajectory(const SqueezedState& state, const ObservableTables& tables,
                                        std::span<const double> times);

}  // namespace morsecs
