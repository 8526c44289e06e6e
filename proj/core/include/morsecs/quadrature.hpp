#pragma once

#include <functional>
#include <vector>

namespace morsecs {

/// Gauss rule on (0, inf) for the normalized weight y^alpha e^{-y} / Gamma(alpha+1).
///
/// `weights` sum to 1 (the weight is a probability measure); `log_weights`
/// carries the same numbers in log form for assemblies whose prefactors leave
/// double range; `plain_weights` are the interpolatory weights for integrating
/// a plain function of y directly: integral f(y) dy ~= sum plain_weights[i] * f(nodes[i]).
/// Immutable after construction and shareable across threads.
struct QuadratureRule {
  double alpha = 0.0;
  int order = 0;
  std::vector<double> nodes;          // strictly increasing, all > 0
  std::vector<double> weights;        // normalized, sum == 1
  std::vector<double> log_weights;    // ln(weights[i]), finite even where weights underflow
  std::vector<double> plain_weights;  // weights[i] * Gamma(alpha+1) * e^{nodes[i]} * nodes[i]^-alpha
  double log_mass = 0.0;              // ln Gamma(alpha+1), total mass of the unnormalized weight
};

/// Generalized Gauss-Laguerre rule: nodes from the symmetric tridiagonal
/// Jacobi matrix, Newton-polished, weights in log form so that orders of a
/// few hundred work for alpha in the hundreds. Requires alpha > -1.
QuadratureRule gauss_laguerre_rule(int order, double alpha = 0.0);

/// integral_0^inf f(y) dy for an integrand decaying at least like the rule's
/// weight. Throws AccuracyError (reporting the node) on a non-finite sample.
double halfline_quadrature(const std::function<double(double)>& f, const QuadratureRule& rule);

/// Expectation of g against the rule's normalized measure: sum w_i g(y_i).
double integrate_weighted(const std::function<double(double)>& g, const QuadratureRule& rule);

}  // namespace morsecs
