#pragma once

#include "surcal/borel.hpp"
#include "surcal/transseries.hpp"

namespace surcal {

/// Divergent asymptotic tail of Ei: e^{-x} Ei(x) ~ sum k! x^{-k-1}.
FormalPowerSeries ei_asymptotic();

/// Ei(x) for x > 0: convergent-series value cross-checked against a direct
/// principal-value Laplace quadrature; the error field covers both.
QuadratureResult ei_oracle(double x);

/// Extended-precision Ei for cancellation-sensitive comparisons.
BigFloat ei_bigfloat(const BigFloat& x);

/// Asymptotic expansion of int_0^x e^{s^2} ds, written in the squared
/// variable t = x^2: the returned transseries S(t) satisfies
/// int_0^x e^{s^2} ds ~ S(x^2), with S(t) = e^{t} t^{-1/2} sum (2n-1)!!/2^{n+1} t^{-n}.
/// Coefficients come from the Borel-plane ODE (p-1)G' + G/2 = 0, G(0) = 1/2.
Transseries erfi_transseries();

/// Exact Bernoulli numbers, B_1 = -1/2 convention.
Rational bernoulli(long n);

/// ln Gamma at omega: w ln w - w - (1/2) ln w + (1/2) ln 2pi
///                    + sum B_{2n} / (2n(2n-1)) w^{1-2n}.
Transseries lngamma_at_omega();

/// Correction series of Stirling's formula: exp of the decaying part of
/// lngamma_at_omega, i.e. 1 + 1/(12 w) + 1/(288 w^2) - 139/(51840 w^3) - ...
/// The full formula is w^{w - 1/2} e^{-w} sqrt(2pi) times this series.
Transseries stirling_at_omega();

/// ln Gamma(n) for real n >= 2 by the Binet integral:
/// n(ln n - 1) - (1/2) ln n + (1/2) ln 2pi + int_0^inf K(p) e^{-np} dp,
/// with the analytic-at-zero kernel K (K(0) = 1/12).
QuadratureResult lngamma_oracle(double n);

/// "sum of ln k to omega": lngamma_at_omega() + ln w (the Gamma(w+1) shift).
Transseries sum_ln_to_omega();

}  // namespace surcal
