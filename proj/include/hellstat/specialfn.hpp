#pragma once

namespace hellstat {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Pochhammer symbol (a)_b = Gamma(a+b)/Gamma(a) via the log-gamma ratio.
/// Requires a > 0 and a + b > 0; negative-argument cases must go through
/// pochhammer_int.
double pochhammer(double a, double b);

/// Integer-step Pochhammer: a(a+1)...(a+k-1) for k > 0, the reciprocal
/// product 1/((a-1)(a-2)...(a-|k|)) for k < 0, 1 for k = 0. Exact products,
/// no Gamma calls, correct signs for negative intermediate values.
double pochhammer_int(double a, int k);

/// Binomial coefficient C(1/2, j) by falling-factorial product.
double binom_half(int j);

/// Terminating 3F2(a1, -j, -k; b1, b2; 1); the series stops at min(j, k).
double hyp3f2_terminating(double a1, int j, int k, double b1, double b2);

/// Gauss hypergeometric 2F1(a, b; c; z) for z in [0, 1]; at z = 1 uses the
/// Gauss closed form (requires c - a - b > 0 there).
double hyp2f1(double a, double b, double c, double z);

}  // namespace hellstat
