#pragma once

#include <cmath>
#include <complex>

// Compensated double-double arithmetic (Dekker/Knuth error-free transforms,
// ~32 significant digits). The terminating 2F1 sum cancels up to ~17 digits
// at the top of the coefficient range, which wipes out plain doubles; the
// extra word keeps ~15 digits through the worst cancellation.

namespace morsecs::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_from(double a) { return {a, 0.0}; }
inline double dd_to(const DD& a) { return a.hi + a.lo; }
inline DD dd_neg(const DD& a) { return {-a.hi, -a.lo}; }

inline DD dd_add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  const DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(const DD& a, double b) { return dd_mul(a, dd_from(b)); }

inline DD dd_div(const DD& a, const DD& b) {
  const double q1 = a.hi / b.hi;
  DD r = dd_add(a, dd_neg(dd_mul(b, q1)));
  const double q2 = r.hi / b.hi;
  r = dd_add(r, dd_neg(dd_mul(b, q2)));
  const double q3 = r.hi / b.hi;
  DD q = quick_two_sum(q1, q2);
  q.lo += q3;
  return quick_two_sum(q.hi, q.lo);
}

struct DDComplex {
  DD re, im;
};

inline DDComplex ddc_from(std::complex<double> z) { return {dd_from(z.real()), dd_from(z.imag())}; }
inline std::complex<double> ddc_to(const DDComplex& z) { return {dd_to(z.re), dd_to(z.im)}; }

inline DDComplex ddc_add(const DDComplex& a, const DDComplex& b) {
  return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}

inline DDComplex ddc_mul(const DDComplex& a, const DDComplex& b) {
  return {dd_add(dd_mul(a.re, b.re), dd_neg(dd_mul(a.im, b.im))),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline DDComplex ddc_mul(const DDComplex& a, const DD& b) {
  return {dd_mul(a.re, b), dd_mul(a.im, b)};
}

}  // namespace morsecs::detail
