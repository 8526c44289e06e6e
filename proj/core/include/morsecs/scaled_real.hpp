#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>

namespace morsecs {

/// Floating point value with an explicit power-of-two exponent, for products
/// of factorial-scale factors that overflow or underflow a plain double
/// (rho(n) and the Gamma ratios reach ~1e1200 for deep wells).
///
/// Representation: value = frac * 2^exp with |frac| in [1,2) or frac == 0.
/// Conversions from and to double go through frexp/ldexp and are exact
/// whenever the plain value is finite and nonzero.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;

  explicit ScaledReal(double v) {
    if (v == 0.0 || !std::isfinite(v)) {
      frac_ = v;  // keep NaN/inf visible instead of silently normalizing
      exp_ = 0;
      return;
    }
    int e = 0;
    frac_ = 2.0 * std::frexp(v, &e);  // frexp lands in [0.5,1), shift to [1,2)
    exp_ = e - 1;
  }

  ScaledReal(double frac, std::int64_t exp) : frac_(frac), exp_(exp) { normalize(); }

  /// Build from ln|value| and a sign in {-1, 0, +1}.
  static ScaledReal from_log(double log_abs, int sign) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity())
      return ScaledReal{};
    const double e2 = log_abs / kLn2;
    const double efloor = std::floor(e2);
    double frac = std::exp((e2 - efloor) * kLn2);  // in [1,2)
    return ScaledReal(sign < 0 ? -frac : frac, static_cast<std::int64_t>(efloor));
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    if (exp_ > 1100) return frac_ * std::numeric_limits<double>::infinity();
    if (exp_ < -1140) return frac_ * 0.0;  // signed underflow
    return std::ldexp(frac_, static_cast<int>(exp_));
  }

  /// ln|value|; -inf for zero.
  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(frac_)) + static_cast<double>(exp_) * kLn2;
  }

  bool is_zero() const { return frac_ == 0.0; }
  int sign() const { return (frac_ > 0.0) - (frac_ < 0.0); }
  double mantissa() const { return std::fabs(frac_); }
  double signed_mantissa() const { return frac_; }
  std::int64_t exponent() const { return exp_; }

  ScaledReal operator-() const {
    ScaledReal r = *this;
    r.frac_ = -r.frac_;
    return r;
  }

  ScaledReal& operator*=(const ScaledReal& o) {
    frac_ *= o.frac_;
    exp_ += o.exp_;
    normalize();
    return *this;
  }
  ScaledReal& operator*=(double v) { return *this *= ScaledReal(v); }

  ScaledReal& operator/=(const ScaledReal& o) {
    frac_ /= o.frac_;
    exp_ -= o.exp_;
    normalize();
    return *this;
  }
  ScaledReal& operator/=(double v) { return *this /= ScaledReal(v); }

  ScaledReal& operator+=(const ScaledReal& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    // Beyond 64 binades the smaller operand cannot move the 53-bit mantissa.
    const std::int64_t de = o.exp_ - exp_;
    if (de > 64) return *this = o;
    if (de < -64) return *this;
    frac_ += std::ldexp(o.frac_, static_cast<int>(de));
    normalize();
    return *this;
  }
  ScaledReal& operator-=(const ScaledReal& o) { return *this += -o; }

  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { return a *= b; }
  friend ScaledReal operator*(ScaledReal a, double b) { return a *= b; }
  friend ScaledReal operator*(double a, ScaledReal b) { return b *= a; }
  friend ScaledReal operator/(ScaledReal a, const ScaledReal& b) { return a /= b; }
  friend ScaledReal operator/(ScaledReal a, double b) { return a /= b; }
  friend ScaledReal operator/(double a, const ScaledReal& b) { return ScaledReal(a) /= b; }
  friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) { return a += b; }
  friend ScaledReal operator-(ScaledReal a, const ScaledReal& b) { return a -= b; }

  friend bool operator==(const ScaledReal& a, const ScaledReal& b) {
    return a.frac_ == b.frac_ && (a.is_zero() || a.exp_ == b.exp_);
  }
  friend bool operator<(const ScaledReal& a, const ScaledReal& b) {
    return (b - a).sign() > 0;
  }
  friend bool operator>(const ScaledReal& a, const ScaledReal& b) { return b < a; }

  friend ScaledReal sqrt(const ScaledReal& a) {
    if (a.is_zero()) return ScaledReal{};
    double f = a.frac_;
    std::int64_t e = a.exp_;
    if (e % 2 != 0) {  // make the exponent even before halving
      f *= 2.0;
      e -= 1;
    }
    return ScaledReal(std::sqrt(f), e / 2);
  }

  friend std::ostream& operator<<(std::ostream& os, const ScaledReal& v) {
    return os << v.frac_ << "*2^" << v.exp_;
  }

 private:
  static constexpr double kLn2 = 0.69314718055994530942;

  void normalize() {
    if (frac_ == 0.0 || !std::isfinite(frac_)) {
      exp_ = 0;
      return;
    }
    int e = 0;
    frac_ = 2.0 * std::frexp(frac_, &e);
    exp_ += e - 1;
  }

  double frac_ = 0.0;
  std::int64_t exp_ = 0;
};

/// Complex companion of ScaledReal: a complex mantissa with one shared
/// power-of-two exponent, normalized so max(|re|,|im|) lands in [1,2).
/// Used for the coefficient recurrences whose values outgrow double range.
class ScaledComplex {
 public:
  ScaledComplex() = default;

  explicit ScaledComplex(std::complex<double> v) : frac_(v) { normalize(); }
  ScaledComplex(std::complex<double> frac, std::int64_t exp) : frac_(frac), exp_(exp) {
    normalize();
  }

  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (exp_ > 1100 || exp_ < -1140) {
      const double s = (exp_ > 0) ? std::numeric_limits<double>::infinity() : 0.0;
      return {frac_.real() * s, frac_.imag() * s};
    }
    const double f = std::ldexp(1.0, static_cast<int>(exp_));
    return frac_ * f;
  }

  bool is_zero() const { return frac_ == std::complex<double>{0.0, 0.0}; }
  std::complex<double> mantissa() const { return frac_; }
  std::int64_t exponent() const { return exp_; }

  /// |value|^2 as a ScaledReal.
  ScaledReal abs2() const {
    return ScaledReal(std::norm(frac_), 2 * exp_);
  }

  ScaledReal abs() const { return sqrt(abs2()); }

  /// value / |value|; {0,0} for zero.
  std::complex<double> phase() const {
    if (is_zero()) return {0.0, 0.0};
    return frac_ / std::abs(frac_);
  }

  ScaledComplex& operator*=(const std::complex<double>& v) {
    frac_ *= v;
    normalize();
    return *this;
  }
  ScaledComplex& operator*=(const ScaledReal& v) {
    frac_ *= v.signed_mantissa();
    exp_ += v.exponent();
    normalize();
    return *this;
  }
  ScaledComplex& operator*=(const ScaledComplex& o) {
    frac_ *= o.frac_;
    exp_ += o.exp_;
    normalize();
    return *this;
  }
  ScaledComplex& operator/=(const ScaledReal& v) {
    frac_ /= v.signed_mantissa();
    exp_ -= v.exponent();
    normalize();
    return *this;
  }

  ScaledComplex& operator+=(const ScaledComplex& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const std::int64_t de = o.exp_ - exp_;
    if (de > 64) return *this = o;
    if (de < -64) return *this;
    const double f = std::ldexp(1.0, static_cast<int>(de));
    frac_ += o.frac_ * f;
    normalize();
    return *this;
  }
  ScaledComplex& operator-=(const ScaledComplex& o) { return *this += -o; }

  ScaledComplex operator-() const {
    ScaledComplex r = *this;
    r.frac_ = -r.frac_;
    return r;
  }

  friend ScaledComplex operator*(ScaledComplex a, const std::complex<double>& b) { return a *= b; }
  friend ScaledComplex operator*(ScaledComplex a, const ScaledReal& b) { return a *= b; }
  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator/(ScaledComplex a, const ScaledReal& b) { return a /= b; }
  friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }
  friend ScaledComplex operator-(ScaledComplex a, const ScaledComplex& b) { return a -= b; }

 private:
  void normalize() {
    const double m = std::max(std::fabs(frac_.real()), std::fabs(frac_.imag()));
    if (m == 0.0 || !std::isfinite(m)) {
      exp_ = 0;
      return;
    }
    int e = 0;
    std::frexp(m, &e);
    const int shift = e - 1;
    if (shift != 0) {
      const double f = std::ldexp(1.0, -shift);
      frac_ *= f;
      exp_ += shift;
    }
  }

  std::complex<double> frac_{0.0, 0.0};
  std::int64_t exp_ = 0;
};

}  // namespace morsecs
