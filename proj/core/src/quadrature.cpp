#include "morsecs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "morsecs/errors.hpp"
#include "morsecs/scaled_real.hpp"
#include "morsecs/specfun.hpp"

namespace morsecs {

namespace {

// Eigenvalues of a symmetric tridiagonal matrix by the implicit QL algorithm
// with Wilkinson shifts. d holds the diagonal on entry and the (unsorted)
// eigenvalues on return; e holds the subdiagonal in e[0..n-2].
void tridiag_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  if (n <= 1) return;
  e.resize(n, 0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double scale = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * scale) break;
      }
      if (m != l) {
        if (iter++ == 100)
          throw AccuracyError("gauss_laguerre_rule: QL iteration failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

struct LaguerrePair {
  double ln;    // L_n, times 2^shift
  double lnm1;  // L_{n-1}, same scale
  int shift;
};

LaguerrePair laguerre_pair(int n, double alpha, double y) {
  double lm = 0.0;  // L_{-1}
  double lk = 1.0;  // L_0
  int shift = 0;
  constexpr double kHuge = 0x1p+512;
  constexpr double kTiny = 0x1p-512;
  for (int k = 0; k < n; ++k) {
    const double ln = ((2.0 * k + 1.0 + alpha - y) * lk - (k + alpha) * lm) / (k + 1.0);
    lm = lk;
    lk = ln;
    const double mag = std::fabs(lk) + std::fabs(lm);
    if (mag > kHuge) {
      lk = std::ldexp(lk, -512);
      lm = std::ldexp(lm, -512);
      shift += 512;
    } else if (mag < kTiny && mag > 0.0) {
      lk = std::ldexp(lk, 512);
      lm = std::ldexp(lm, 512);
      shift -= 512;
    }
  }
  return {lk, lm, shift};
}

}  // namespace

QuadratureRule gauss_laguerre_rule(int order, double alpha) {
  if (order < 1) throw DomainError("gauss_laguerre_rule: order must be >= 1");
  if (!(alpha > -1.0)) throw DomainError("gauss_laguerre_rule: weight exponent must be > -1");

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.order = order;
  rule.log_mass = log_gamma(alpha + 1.0);

  // Jacobi matrix of the monic generalized Laguerre family.
  std::vector<double> d(order);
  std::vector<double> e(order, 0.0);
  for (int i = 0; i < order; ++i) {
    d[i] = 2.0 * i + alpha + 1.0;
    if (i > 0) e[i - 1] = std::sqrt(static_cast<double>(i) * (i + alpha));
  }
  tridiag_eigenvalues(d, e);
  std::sort(d.begin(), d.end());

  const double n_d = static_cast<double>(order);
  rule.nodes.resize(order);
  rule.weights.resize(order);
  rule.log_weights.resize(order);
  rule.plain_weights.resize(order);

  const double log_norm = log_gamma(n_d + alpha + 1.0) - log_gamma(n_d + 1.0);
  constexpr double kLn2 = 0.69314718055994530942;

  for (int i = 0; i < order; ++i) {
    double y = d[i];
    // Newton polish on L_n; the eigenvalue is close, so a few steps hit the
    // last ulp. L_n'(y) = (n L_n - (n+alpha) L_{n-1}) / y.
    for (int it = 0; it < 6; ++it) {
      const LaguerrePair pr = laguerre_pair(order, alpha, y);
      const double deriv = (n_d * pr.ln - (n_d + alpha) * pr.lnm1) / y;
      if (deriv == 0.0) break;
      const double step = pr.ln / deriv;
      y -= step;
      if (std::fabs(step) <= 4e-16 * std::fabs(y)) break;
    }
    if (!(y > 0.0) || !std::isfinite(y))
      throw AccuracyError("gauss_laguerre_rule: node refinement produced a non-positive node");
    rule.nodes[i] = y;

    // w_i = Gamma(n+alpha+1) y_i / (n! (n+1)^2 L_{n+1}(y_i)^2), assembled in logs.
    const LaguerrePair pn1 = laguerre_pair(order + 1, alpha, y);
    const double log_lnp1 = std::log(std::fabs(pn1.ln)) + pn1.shift * kLn2;
    const double log_w = log_norm + std::log(y) - 2.0 * (std::log(n_d + 1.0) + log_lnp1);
    rule.log_weights[i] = log_w - rule.log_mass;
    rule.weights[i] = std::exp(rule.log_weights[i]);
    rule.plain_weights[i] = std::exp(log_w + y - alpha * std::log(y));
  }

  for (int i = 1; i < order; ++i)
    if (!(rule.nodes[i] > rule.nodes[i - 1]))
      throw AccuracyError("gauss_laguerre_rule: nodes not strictly increasing after refinement");

  // Pin the zeroth moment exactly: rescale so the normalized weights sum to 1
  // (the analytic per-node formula drifts by a few 1e-13 at high orders).
  long double wsum = 0.0L;
  for (double w : rule.weights) wsum += w;
  if (std::fabs(static_cast<double>(wsum) - 1.0) > 1e-9)
    throw AccuracyError("gauss_laguerre_rule: normalized weights sum to " +
                        std::to_string(static_cast<double>(wsum)));
  const double scale = static_cast<double>(1.0L / wsum);
  const double log_scale = -std::log(static_cast<double>(wsum));
  for (int i = 0; i < order; ++i) {
    rule.weights[i] *= scale;
    rule.log_weights[i] += log_scale;
    rule.plain_weights[i] *= scale;
  }

  return rule;
}

double halfline_quadrature(const std::function<double(double)>& f, const QuadratureRule& rule) {
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double fy = f(rule.nodes[i]);
    if (!std::isfinite(fy))
      throw AccuracyError("halfline_quadrature: non-finite integrand at node y = " +
                          std::to_string(rule.nodes[i]));
    acc += rule.plain_weights[i] * fy;
  }
  return acc;
}

double integrate_weighted(const std::function<double(double)>& g, const QuadratureRule& rule) {
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double gy = g(rule.nodes[i]);
    if (!std::isfinite(gy))
      throw AccuracyError("integrate_weighted: non-finite integrand at node y = " +
                          std::to_string(rule.nodes[i]));
    acc += rule.weights[i] * gy;
  }
  return acc;
}

}  // namespace morsecs
