#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surcal/special.hpp"

#include <cmath>
#include <vector>

using namespace surcal;

namespace {

Transmonomial power_mono(long l, long m = 0) { return Transmonomial{{}, l, m}; }

/// Truncated polynomial product in w^{-1}, exact rationals.
std::vector<Rational> poly_mul(const std::vector<Rational>& a,
                               const std::vector<Rational>& b, std::size_t n) {
    std::vector<Rational> out(n + 1, 0);
    for (std::size_t i = 0; i <= n && i < a.size(); ++i)
        for (std::size_t j = 0; i + j <= n && j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

TEST_CASE("ei oracle") {
    // classical value Ei(1) = 1.89511781635593675546...
    auto q = ei_oracle(1.0);
    CHECK(q.value == doctest::Approx(1.8951178163559368).epsilon(1e-12));
    CHECK(q.error < 1e-9);

    // Ei(x) - ln x -> gamma as x -> 0+
    double gamma = 0.5772156649015329;
    CHECK(ei_oracle(1e-4).value - std::log(1e-4) ==
          doctest::Approx(gamma).epsilon(1e-3));

    // derivative e^x / x by central differences
    double h = 1e-5, x0 = 3.0;
    double d = (ei_oracle(x0 + h).value - ei_oracle(x0 - h).value) / (2 * h);
    CHECK(d == doctest::Approx(std::exp(x0) / x0).epsilon(1e-7));

    // extended-precision version agrees
    CHECK(ei_bigfloat(BigFloat(1)).convert_to<double>() ==
          doctest::Approx(1.8951178163559368).epsilon(1e-14));
    CHECK(ei_bigfloat(BigFloat(40)).convert_to<double>() ==
          doctest::Approx(ei_oracle(40.0).value).epsilon(1e-9));
}

TEST_CASE("erfi transseries coefficients") {
    Transseries s = erfi_transseries();
    REQUIRE(s.gens.lambda.size() == 1);
    CHECK(s.gens.lambda[0] == Rational(1));
    CHECK(s.gens.beta[0] == Rational(1, 2));

    // leading coefficient 1/2 on e^t t^{-1/2}
    Transmonomial lead{{-1}, 0, 0};
    CHECK(s.coeff(lead) == Scalar(Rational(1, 2)));
    // ratio c_{l+1} / c_l = (2l+1)/2, i.e. c_l = (2l-1)!!/2^{l+1}
    Rational c(1, 2);
    for (long l = 0; l < 10; ++l) {
        CHECK(s.coeff(Transmonomial{{-1}, l, 0}) == Scalar(c));
        c *= Rational(2 * l + 1, 2);
    }
}

TEST_CASE("erfi formal derivative identity") {
    // d/dx int_0^x e^{u^2} du = e^{x^2}; with t = x^2 this reads
    // S'(t) = e^t t^{-1/2} / 2 for the squared-variable series S
    Transseries s = erfi_transseries();
    Transseries d = ts_diff(s);
    Transseries rhs = ts_monomial(s.gens, Transmonomial{{-1}, 0, 0},
                                  Scalar(Rational(1, 2)));
    Transseries diff = ts_add(d, ts_neg(rhs));
    for (auto& [mono, cf] : ts_terms(diff, 10)) CHECK(cf.is_zero());
    CHECK(!ts_dominant(diff, 2048).has_value());
}

TEST_CASE("erfi numeric value at x = 6") {
    // least-term evaluation of S(t) at t = 36 against direct quadrature
    Transseries s = erfi_transseries();
    double t = 36.0;
    double sum = 0, prev = 1e300;
    for (long l = 0;; ++l) {
        Scalar cf = s.coeff(Transmonomial{{-1}, l, 0});
        double term = cf.to_double() * std::exp(t) * std::pow(t, -0.5 - l);
        if (std::abs(term) >= prev) break;  // least term reached
        sum += term;
        prev = std::abs(term);
    }
    auto q = integrate_adaptive([](double u) { return std::exp(u * u); }, 0.0, 6.0,
                                1e-12);
    CHECK(sum == doctest::Approx(q.value).epsilon(1e-6));
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(17) == Rational(0));
}

TEST_CASE("ln Gamma at omega: structure and coefficients") {
    Transseries g = lngamma_at_omega();
    CHECK(g.gens.lambda.empty());
    CHECK(g.coeff(power_mono(-1, 1)) == Scalar(1));    // w ln w
    CHECK(g.coeff(power_mono(-1, 0)) == Scalar(-1));   // -w
    CHECK(g.coeff(power_mono(0, 1)) == Scalar(Rational(-1, 2)));  // -(1/2) ln w
    CHECK(g.coeff(power_mono(0, 0)) ==
          Scalar(Rational(1, 2)) * Scalar::constant(Constant::Ln2Pi));
    // B_{2n} / (2n(2n-1)) at w^{1-2n}
    CHECK(g.coeff(power_mono(1)) == Scalar(Rational(1, 12)));
    CHECK(g.coeff(power_mono(2)) == Scalar(0));
    CHECK(g.coeff(power_mono(3)) == Scalar(Rational(-1, 360)));
    CHECK(g.coeff(power_mono(5)) == Scalar(Rational(1, 1260)));
}

TEST_CASE("stirling correction series") {
    Transseries s = stirling_at_omega();
    CHECK(s.coeff(power_mono(0)) == Scalar(1));
    CHECK(s.coeff(power_mono(1)) == Scalar(Rational(1, 12)));
    CHECK(s.coeff(power_mono(2)) == Scalar(Rational(1, 288)));
    CHECK(s.coeff(power_mono(3)) == Scalar(Rational(-139, 51840)));
    CHECK(s.coeff(power_mono(4)) == Scalar(Rational(-571, 2488320)));

    // independent oracle: exponentiate the decaying part of ln Gamma by the
    // plain truncated power series exp(u) = sum u^n / n! through order 8
    const std::size_t N = 8;
    std::vector<Rational> u(N + 1, 0);
    for (long n = 1; 2 * n - 1 <= static_cast<long>(N); ++n)
        u[2 * n - 1] = bernoulli(2 * n) / Rational(2 * n * (2 * n - 1));
    std::vector<Rational> expu(N + 1, 0), upow(N + 1, 0);
    expu[0] = 1;
    upow[0] = 1;
    Rational fact = 1;
    for (std::size_t n = 1; n <= N; ++n) {
        upow = poly_mul(upow, u, N);
        fact *= n;
        for (std::size_t j = 0; j <= N; ++j) expu[j] += upow[j] / fact;
    }
    for (std::size_t l = 0; l <= N; ++l)
        CHECK(s.coeff(power_mono(static_cast<long>(l))) == Scalar(expu[l]));
}

TEST_CASE("ln Gamma oracle vs factorials and vs the series") {
    double lnfact = 0;  // ln (n-1)!
    for (long n = 2; n <= 15; ++n) {
        lnfact += std::log(static_cast<double>(n - 1));
        auto q = lngamma_oracle(static_cast<double>(n));
        CHECK(q.value == doctest::Approx(lnfact).epsilon(1e-10));
    }

    // series evaluation at w = 30 (truncate the divergent tail well before
    // its least term; remaining error ~ 1e-14)
    double w = 30.0;
    Transseries g = lngamma_at_omega();
    double series = g.coeff(power_mono(0, 0)).to_double();
    series += w * std::log(w) - w - 0.5 * std::log(w);
    for (long l = 1; l <= 7; l += 2)
        series += g.coeff(power_mono(l)).to_double() * std::pow(w, -l);
    CHECK(lngamma_oracle(w).value == doctest::Approx(series).epsilon(1e-12));
}

TEST_CASE("sum of ln to omega") {
    Transseries s = sum_ln_to_omega();
    // ln Gamma(w+1) = ln Gamma(w) + ln w: the ln w coefficient becomes 1/2
    CHECK(s.coeff(power_mono(0, 1)) == Scalar(Rational(1, 2)));
    CHECK(s.coeff(power_mono(0, 0)) ==
          Scalar(Rational(1, 2)) * Scalar::constant(Constant::Ln2Pi));

    // numeric cross-check at w = 50 against the honest log sum
    double w = 50.0, direct = 0;
    for (long k = 1; k <= 50; ++k) direct += std::log(static_cast<double>(k));
    double series = s.coeff(power_mono(0, 0)).to_double();
    series += w * std::log(w) - w + 0.5 * std::log(w);
    for (long l = 1; l <= 7; l += 2)
        series += s.coeff(power_mono(l)).to_double() * std::pow(w, -l);
    CHECK(series == doctest::Approx(direct).epsilon(1e-8));
}
