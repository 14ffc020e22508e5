#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surcal/borel.hpp"
#include "surcal/special.hpp"

#include <cmath>

using namespace surcal;

namespace {

FormalPowerSeries factorial_series() { return ei_series_for_least_term(); }

FormalPowerSeries alternating_factorial() {
    FormalPowerSeries f = factorial_series();
    auto base = f.coeff;
    f.coeff = [base](long k) {
        Scalar c = base(k);
        return k % 2 ? -c : c;
    };
    return f;
}

/// E_1(x) by the continued fraction of Lentz (independent of the Laplace
/// machinery under test).
double e1_continued_fraction(double x) {
    double b = x + 1, c = 1e308, d = 1 / b, h = d;
    for (int i = 1; i <= 200; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2;
        d = 1 / (a * d + b);
        c = b + a / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1) < 1e-16) break;
    }
    return h * std::exp(-x);
}

}  // namespace

TEST_CASE("borel transform and formal laplace invert each other") {
    FormalPowerSeries f = factorial_series();
    FormalPowerSeries F = borel_transform(f);
    // c_k = k! -> geometric sum p^k
    for (long k = 0; k < 8; ++k) CHECK(F.coeff(k) == Scalar(1));
    FormalPowerSeries back = formal_laplace(F);
    Rational fact = 1;
    for (long k = 0; k < 32; ++k) {
        if (k > 1) fact *= k;
        CHECK(back.coeff(k) == Scalar(fact));
        CHECK(back.coeff(k) == f.coeff(k));
    }
    // delta series -> constant 1
    FormalPowerSeries delta;
    delta.plane = Plane::InverseX;
    delta.coeff = [](long k) { return Scalar(k == 0 ? 1 : 0); };
    CHECK(borel_transform(delta).coeff(0) == Scalar(1));
    CHECK(borel_transform(delta).coeff(3) == Scalar(0));
}

TEST_CASE("Gevrey-1 envelope fits") {
    auto g = gevrey1_certificate(factorial_series(), 16);
    REQUIRE(g);
    CHECK(g->rho == doctest::Approx(1.0).epsilon(0.01));
    CHECK(g->C == doctest::Approx(1.0).epsilon(0.01));

    FormalPowerSeries f2;
    f2.plane = Plane::InverseX;
    f2.coeff = [](long k) {
        Rational fact = 1, pw = 1;
        for (long i = 2; i <= k; ++i) fact *= i;
        for (long i = 0; i < k; ++i) pw *= 2;
        return Scalar(fact / pw);
    };
    auto g2 = gevrey1_certificate(f2, 16);
    REQUIRE(g2);
    CHECK(g2->rho == doctest::Approx(2.0).epsilon(0.01));

    // (k!)^2 growth is not Gevrey-1
    FormalPowerSeries bad;
    bad.plane = Plane::InverseX;
    bad.coeff = [](long k) {
        Rational fact = 1;
        for (long i = 2; i <= k; ++i) fact *= i;
        return Scalar(fact * fact);
    };
    CHECK(!gevrey1_certificate(bad, 12));
}

TEST_CASE("diagonal Pade of the geometric series finds the single pole") {
    auto m = pade_continue(borel_transform(factorial_series()), 3);
    // sum p^k = 1/(1-p): model must reproduce coefficients exactly
    CHECK(m.num.size() == 4);
    CHECK(m.num[0] == Rational(1));
    CHECK(m.den[0] == Rational(1));
    CHECK(m.den[1] == Rational(-1));
    CHECK(m.den[2] == Rational(0));
    auto onaxis = m.positive_real_poles();
    REQUIRE(onaxis.size() == 1);
    CHECK(onaxis[0].location.real() == doctest::Approx(1.0).epsilon(1e-10));

    // alternating factorials: pole at p = -1, clean Laplace path
    auto m2 = pade_continue(borel_transform(alternating_factorial()), 3);
    CHECK(m2.positive_real_poles().empty());
    REQUIRE(!m2.poles.empty());
    CHECK(m2.poles[0].location.real() == doctest::Approx(-1.0).epsilon(1e-10));

    // polynomial input: itself, no poles
    FormalPowerSeries poly;
    poly.plane = Plane::BorelP;
    poly.coeff = [](long k) { return Scalar(k == 1 ? 2 : (k == 0 ? 3 : 0)); };
    auto m3 = pade_continue(poly, 2);
    CHECK(m3.eval(0.5) == doctest::Approx(4.0));
    CHECK(m3.poles.empty());
}

TEST_CASE("pade models reproduce input coefficients through the fitted order") {
    auto m = pade_continue(borel_transform(alternating_factorial()), 5);
    // multiply back: (sum c_k p^k) * den = num through order 10
    std::vector<Rational> c;
    FormalPowerSeries F = borel_transform(alternating_factorial());
    for (long k = 0; k <= 10; ++k) c.push_back(F.coeff(k).rational());
    for (std::size_t t = 0; t <= 10; ++t) {
        Rational acc = 0;
        for (std::size_t j = 0; j <= t && j < m.den.size(); ++j)
            acc += m.den[j] * c[t - j];
        Rational expect = t < m.num.size() ? m.num[t] : Rational(0);
        CHECK(acc == expect);
    }
}

TEST_CASE("laplace quadrature basics") {
    // model = 1: integral e^{-xp} dp = 1/x
    FormalPowerSeries one;
    one.plane = Plane::BorelP;
    one.coeff = [](long k) { return Scalar(k == 0 ? 1 : 0); };
    auto m1 = pade_continue(one, 1);
    auto q1 = laplace_quadrature(m1, 4.0, 1e-12);
    CHECK(q1.value == doctest::Approx(0.25).epsilon(1e-8));

    // model = p: 1/x^2
    FormalPowerSeries idp;
    idp.plane = Plane::BorelP;
    idp.coeff = [](long k) { return Scalar(k == 1 ? 1 : 0); };
    auto q2 = laplace_quadrature(pade_continue(idp, 1), 4.0, 1e-12);
    CHECK(q2.value == doctest::Approx(1.0 / 16).epsilon(1e-8));

    // model 1/(1+p) at x = 10: e^{10} E_1(10)
    auto m3 = pade_continue(borel_transform(alternating_factorial()), 4);
    auto q3 = laplace_quadrature(m3, 10.0, 1e-12);
    CHECK(q3.value ==
          doctest::Approx(std::exp(10.0) * e1_continued_fraction(10.0)).epsilon(1e-9));

    // monotonicity of x -> e^{-x} * (e^x E_1(x)) = E_1(x)
    double prev = 1e300;
    for (double x : {5.0, 8.0, 12.0, 20.0}) {
        double v = laplace_quadrature(m3, x, 1e-12).value * std::exp(-x);
        CHECK(v < prev);
        prev = v;
    }

    // pole on the axis redirects to pv_laplace
    auto mfac = pade_continue(borel_transform(factorial_series()), 4);
    CHECK_THROWS_AS(laplace_quadrature(mfac, 10.0, 1e-10), DomainError);
}

TEST_CASE("principal value laplace against Ei") {
    auto m = pade_continue(borel_transform(factorial_series()), 4);
    for (double x : {5.0, 10.0, 20.0}) {
        auto q = pv_laplace(m, x, 1e-12);
        double ref = std::exp(-x) * ei_double(x);
        CHECK(q.value == doctest::Approx(ref).epsilon(1e-9));
    }
    // pole-free model: agrees with the plain quadrature
    auto m2 = pade_continue(borel_transform(alternating_factorial()), 4);
    CHECK(pv_laplace(m2, 7.0, 1e-12).value ==
          doctest::Approx(laplace_quadrature(m2, 7.0, 1e-12).value).epsilon(1e-10));
    // d/dx consistency of the resummed Ei via finite differences
    auto at = [&](double x) { return std::exp(x) * pv_laplace(m, x, 1e-12).value; };
    double h = 1e-4, x0 = 9.0;
    double deriv = (at(x0 + h) - at(x0 - h)) / (2 * h);
    CHECK(deriv == doctest::Approx(std::exp(x0) / x0).epsilon(1e-5));
}

TEST_CASE("least-term summation") {
    auto r = least_term_sum(factorial_series(), 1.0, 1.5);
    CHECK(r.k_star == 1);  // two retained terms
    CHECK(r.value == doctest::Approx(1 / 1.5 + 1 / (1.5 * 1.5)));

    // error vs the PV Borel sum is e^{-x}-small at x = 20
    auto m = pade_continue(borel_transform(factorial_series()), 4);
    double borel = pv_laplace(m, 20.0, 1e-12).value;
    auto lt = least_term_sum(factorial_series(), 1.0, 20.0);
    CHECK(std::abs(lt.value - borel) < 10 * std::exp(-20.0));

    // decay rate of the least-term error ~ e^{-rho x}: fitted slope near -1
    double lx = 0, ly = 0, lxy = 0, lxx = 0, n = 0;
    for (double x = 5; x <= 40; x += 2.5) {
        double err = std::abs(
            (ei_bigfloat(BigFloat(x)) * exp(BigFloat(-x)) -
             least_term_sum(factorial_series(), 1.0, x).value_hp)
                .convert_to<double>());
        if (err <= 0) continue;
        n += 1;
        lx += x;
        ly += std::log(err);
        lxy += x * std::log(err);
        lxx += x * x;
    }
    double slope = (n * lxy - lx * ly) / (n * lxx - lx * lx);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.10));
}

TEST_CASE("least-term error constant: weighted sup") {
    // a polynomial oracle with its own finite series has zero error
    FormalPowerSeries fin;
    fin.plane = Plane::InverseX;
    fin.coeff = [](long k) { return Scalar(k == 0 ? 3 : 0); };
    auto zero = least_term_error_constant(
        [](const BigFloat& x) { return 3 / x; }, fin, 0.0, 1.0, {2.0, 5.0, 9.0});
    CHECK(zero.convert_to<double>() == doctest::Approx(0.0));
}

TEST_CASE("borel-plane integration recurrence") {
    FormalPowerSeries Y;
    Y.plane = Plane::BorelP;
    Y.coeff = [](long k) { return Scalar(k == 0 ? 1 : 0); };

    // b = 0: (a+p) G = -Y exactly, so G = -1/(a+p) for Y = 1
    FormalPowerSeries G0 = borel_plane_integrate(Y, 2, 0);
    Rational pw(1, 2);
    for (long k = 0; k < 8; ++k) {
        CHECK(G0.coeff(k) == Scalar(k % 2 ? pw : -pw));
        pw /= 2;
    }

    // a = 1, b = 1, Y = p: the ODE solves to G = -ln(1+p)
    FormalPowerSeries Yp;
    Yp.plane = Plane::BorelP;
    Yp.coeff = [](long k) { return Scalar(k == 1 ? 1 : 0); };
    FormalPowerSeries G = borel_plane_integrate(Yp, 1, 1);
    CHECK(G.coeff(0) == Scalar(0));
    CHECK(G.coeff(1) == Scalar(-1));
    CHECK(G.coeff(2) == Scalar(Rational(1, 2)));
    CHECK(G.coeff(3) == Scalar(Rational(-1, 3)));
    CHECK(G.coeff(16) == Scalar(Rational(1, 16)));

    // defining identity (a+p) G' = (b-1) G - Y' termwise through 16 coeffs
    auto check_identity = [](const FormalPowerSeries& Yin, const Rational& a,
                             const Rational& b) {
        FormalPowerSeries Gq = borel_plane_integrate(Yin, a, b);
        for (long n = 0; n < 16; ++n) {
            // coefficient of p^n in (a+p) G' is a (n+1) g_{n+1} + n g_n
            Scalar lhs = Scalar(a * (n + 1)) * Gq.coeff(n + 1) +
                         Scalar(Rational(n)) * Gq.coeff(n);
            Scalar rhs = Scalar(b - 1) * Gq.coeff(n) -
                         Scalar(Rational(n + 1)) * Yin.coeff(n + 1);
            CHECK((lhs - rhs).is_zero());
        }
    };
    check_identity(Y, 1, 1);
    FormalPowerSeries Y2;
    Y2.plane = Plane::BorelP;
    Y2.coeff = [](long k) { return Scalar(Rational(k + 1, k + 2)); };
    check_identity(Y2, 2, 3);
    check_identity(Y2, 3, Rational(1, 2));

    // analytic anchor: b = 0, a = 1, Y = 1 gives g ~ -e^x E_1(x), so the
    // resummed value of G at x = 10 must match the continued-fraction E_1
    FormalPowerSeries Gei = borel_plane_integrate(Y, 1, 0);
    auto m = pade_continue(Gei, 3);
    CHECK(laplace_quadrature(m, 10.0, 1e-12).value ==
          doctest::Approx(-std::exp(10.0) * e1_continued_fraction(10.0)).epsilon(1e-9));

    CHECK_THROWS_AS(borel_plane_integrate(Y, 0, 1), DomainError);
}
