#include "morsecs/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "morsecs/detail/double_double.hpp"
#include "morsecs/errors.hpp"

namespace morsecs {

namespace {

// Lanczos coefficients for g = 607/128, N = 15 (Godfrey's set).
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // ln(2 pi)/2

double log_gamma_lanczos(double x) {
  // valid for x >= 0.5
  double s = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) s += kLanczos[k] / (x - 1.0 + static_cast<double>(k));
  const double t = x + kLanczosG - 0.5;
  return (x - 0.5) * std::log(t) - t + kHalfLogTwoPi + std::log(s);
}

// Even Bernoulli numbers B_2 .. B_14 for the digamma asymptotic series.
constexpr std::array<double, 7> kBernoulli = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
};

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
  if (x < 0.5) return log_gamma_lanczos(x + 1.0) - std::log(x);
  return log_gamma_lanczos(x);
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("digamma: argument must be positive and finite, got " + std::to_string(x));
  double acc = 0.0;
  while (x < 10.0) {  // psi(x) = psi(x+1) - 1/x
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv2;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    series += kBernoulli[k] * power / (2.0 * static_cast<double>(k + 1));
    power *= inv2;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

ScaledReal pochhammer(double a, int n) {
  if (n < 0) throw DomainError("pochhammer: order must be non-negative");
  ScaledReal r(1.0);
  for (int i = 0; i < n; ++i) r *= (a + static_cast<double>(i));
  return r;
}

namespace {

// Shared recurrence core: runs in plain doubles with occasional power-of-two
// rescaling; returns the value of L_n and the accumulated binary shift.
struct LaguerreScaled {
  double value;
  int shift;  // true value = value * 2^shift
};

LaguerreScaled laguerre_recurrence(int n, double alpha, double y) {
  if (n == 0) return {1.0, 0};
  double lm = 1.0;              // L_{k-1}
  double lk = 1.0 + alpha - y;  // L_k
  int shift = 0;
  constexpr double kHuge = 0x1p+512;
  constexpr double kTiny = 0x1p-512;
  for (int k = 1; k < n; ++k) {
    const double ln = ((2.0 * k + 1.0 + alpha - y) * lk - (k + alpha) * lm) / (k + 1.0);
    lm = lk;
    lk = ln;
    const double m = std::fabs(lk) + std::fabs(lm);
    if (m > kHuge) {
      lk = std::ldexp(lk, -512);
      lm = std::ldexp(lm, -512);
      shift += 512;
    } else if (m < kTiny && m > 0.0) {
      lk = std::ldexp(lk, 512);
      lm = std::ldexp(lm, 512);
      shift -= 512;
    }
  }
  return {lk, shift};
}

}  // namespace

double assoc_laguerre(int n, double alpha, double y) {
  if (n < 0) throw DomainError("assoc_laguerre: degree must be non-negative");
  const LaguerreScaled r = laguerre_recurrence(n, alpha, y);
  return std::ldexp(r.value, r.shift);
}

ScaledReal assoc_laguerre_scaled(int n, double alpha, double y) {
  if (n < 0) throw DomainError("assoc_laguerre: degree must be non-negative");
  const LaguerreScaled r = laguerre_recurrence(n, alpha, y);
  return ScaledReal(r.value, r.shift);
}

std::complex<double> hermite_complex(int n, std::complex<double> w) {
  if (n < 0) throw DomainError("hermite_complex: degree must be non-negative");
  if (n == 0) return {1.0, 0.0};
  std::complex<double> hm{1.0, 0.0};
  std::complex<double> hk = 2.0 * w;
  for (int k = 1; k < n; ++k) {
    const std::complex<double> hn = 2.0 * w * hk - 2.0 * static_cast<double>(k) * hm;
    hm = hk;
    hk = hn;
  }
  return hk;
}

std::complex<double> hyp2f1_terminating(int n, std::complex<double> v, double A) {
  if (n < 0) throw DomainError("hyp2f1_terminating: order must be non-negative");
  using detail::DD;
  using detail::DDComplex;
  DDComplex term = detail::ddc_from({1.0, 0.0});
  DDComplex sum = term;
  for (int k = 0; k < n; ++k) {
    const double denom = (-A + 1.0 + static_cast<double>(k));
    if (denom == 0.0)
      throw DomainError("hyp2f1_terminating: degenerate parameter, (1-A)_k vanishes at k=" +
                        std::to_string(k + 1));
    // term_{k+1} = term_k * (k - v) * [2 (k - n)] / [(k+1) (1 - A + k)]
    const DD ratio = detail::dd_div(detail::dd_from(2.0 * static_cast<double>(k - n)),
                                    detail::dd_mul(detail::dd_from(static_cast<double>(k + 1)),
                                                   detail::dd_from(denom)));
    const DDComplex kmv{detail::dd_add(detail::dd_from(static_cast<double>(k)),
                                       detail::dd_from(-v.real())),
                        detail::dd_from(-v.imag())};
    term = detail::ddc_mul(detail::ddc_mul(term, kmv), ratio);
    sum = detail::ddc_add(sum, term);
  }
  return detail::ddc_to(sum);
}

}  // namespace morsecs
