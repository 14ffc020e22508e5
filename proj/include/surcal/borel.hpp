#pragma once

#include "surcal/scalar.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace surcal {

/// Which formal variable the coefficients index: asymptotic series
/// sum c_k x^{-k-1} (InverseX) or Borel-plane series sum c_k p^k (BorelP).
enum class Plane { InverseX, BorelP };

struct Gevrey1 {
    double C = 0;
    double rho = 0;
};

/// Lazy formal power series with exact coefficients.
struct FormalPowerSeries {
    Plane plane = Plane::InverseX;
    std::function<Scalar(long)> coeff;
    std::optional<Gevrey1> gevrey;
};

/// c_k x^{-k-1}  ->  (c_k / k!) p^k
FormalPowerSeries borel_transform(const FormalPowerSeries& f);
/// (c_k) p^k  ->  (c_k * k!) x^{-k-1}
FormalPowerSeries formal_laplace(const FormalPowerSeries& F);

/// Envelope fit of |c_k| <= C k! rho^{-k} over k <= K. Empty optional when
/// coefficient growth is visibly super-factorial on the window.
std::optional<Gevrey1> gevrey1_certificate(const FormalPowerSeries& f, long K);

/// Diagonal Pade model of a p-plane series, exact rational coefficients
/// plus numerically located denominator roots.
struct ContinuationModel {
    std::vector<Rational> num;  // num[i] * p^i
    std::vector<Rational> den;  // den[0] = 1
    struct Pole {
        std::complex<double> location;
        std::complex<double> residue;
    };
    std::vector<Pole> poles;

    double eval(double p) const;
    /// Poles on the positive real axis (within numeric tolerance).
    std::vector<Pole> positive_real_poles() const;
};

ContinuationModel pade_continue(const FormalPowerSeries& F, int order);

struct QuadratureResult {
    double value = 0;
    double error = 0;
};

/// Numeric Laplace transform of the model: integral over [0, inf) of
/// e^{-x p} model(p) dp. Requires a pole-free positive real axis.
QuadratureResult laplace_quadrature(const ContinuationModel& model, double x,
                                    double tol = 1e-10);

/// Principal-value (half-half lateral average) Laplace transform for models
/// with simple poles on the positive real axis.
QuadratureResult pv_laplace(const ContinuationModel& model, double x,
                            double tol = 1e-10);

struct LeastTermResult {
    double value = 0;          // sum of the retained terms of sum c_k x^{-k-1}
    long k_star = 0;           // index of the last retained term
    BigFloat value_hp = 0;     // same sum at extended precision
};

/// Sum to the least term: retain indices k <= rho * x.
LeastTermResult least_term_sum(const FormalPowerSeries& f, double rho, double x);

/// sup over the grid of |oracle(x) - least_term_sum(x)| / (e^{-rho x} x^b),
/// evaluated at extended precision (the numerator is a catastrophic
/// cancellation in double once x is moderately large).
BigFloat least_term_error_constant(const std::function<BigFloat(const BigFloat&)>& oracle,
                                   const FormalPowerSeries& f, double b, double rho,
                                   const std::vector<double>& grid);

/// Borel-plane antiderivative recurrence: for Y the Borel transform of y,
/// returns the G solving (a+p) G' = (b-1) G - Y' with G(0) = -Y(0)/a, so that
/// x^b e^{-a x} g(x) is an antiderivative of x^b e^{-a x} y(x) when g is the
/// function with Borel transform G. Requires a > 0.
FormalPowerSeries borel_plane_integrate(const FormalPowerSeries& Y, const Rational& a,
                                        const Rational& b);

/// The factorial series sum k! x^{-k-1} (divergent model series used
/// throughout; its least-term sums define the Ei interval midpoints).
FormalPowerSeries ei_series_for_least_term();

/// Convergent-series Ei for internal principal-value kernels (double).
double ei_double(double x);

/// Adaptive quadrature helper shared with the oracle suite.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                                    double hi, double tol);

}  // namespace surcal
