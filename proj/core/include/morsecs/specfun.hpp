#pragma once

#include <complex>

#include "morsecs/scaled_real.hpp"

namespace morsecs {

/// ln Gamma(x) for x > 0 (Lanczos approximation, relative error < 1e-14).
/// Throws DomainError for non-positive or non-finite x.
double log_gamma(double x);

/// Digamma function d/dx ln Gamma(x) for x > 0.
/// Throws DomainError for non-positive x.
double digamma(double x);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
/// Carries exact sign; relative error grows like n * eps.
ScaledReal pochhammer(double a, int n);

/// Associated Laguerre polynomial L_n^alpha(y) by the stable forward
/// recurrence (n+1) L_{n+1} = (2n+1+alpha-y) L_n - (n+alpha) L_{n-1}.
double assoc_laguerre(int n, double alpha, double y);

/// Same recurrence with power-of-two rescaling; use when the value can leave
/// double range (n and alpha in the hundreds).
ScaledReal assoc_laguerre_scaled(int n, double alpha, double y);

/// Hermite polynomial H_n(w) on complex arguments,
/// H_{n+1} = 2 w H_n - 2 n H_{n-1}, H_0 = 1, H_1 = 2w.
std::complex<double> hermite_complex(int n, std::complex<double> w);

/// Terminating hypergeometric sum
///   2F1(-n, -v; 1-A; 2) = sum_{k=0}^{n} (2^k / k!) (-n)_k (-v)_k / (-A+1)_k.
/// Summed in compensated (double-double) arithmetic: the terms alternate and
/// grow before cancelling. Throws DomainError when a denominator Pochhammer
/// vanishes (A an integer in 2..n+1).
std::complex<double> hyp2f1_terminating(int n, std::complex<double> v, double A);

}  // namespace morsecs
