#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surcal/scalar.hpp"

#include <cmath>

using namespace surcal;

TEST_CASE("rational arithmetic is exact") {
    Scalar a(Rational(1, 3)), b(Rational(1, 6));
    CHECK(a + b == Scalar(Rational(1, 2)));
    CHECK(a - b == Scalar(Rational(1, 6)));
    CHECK(a * b == Scalar(Rational(1, 18)));
    CHECK(a / b == Scalar(2));
    CHECK((a - a).is_zero());
}

TEST_CASE("constants multiply through the registry") {
    Scalar e = Scalar::constant(Constant::E);
    Scalar pi = Scalar::constant(Constant::Pi);
    CHECK(e * pi == pi * e);
    CHECK((e * e) == Scalar::constant(Constant::E, 2));
    CHECK(e * e.inverse() == Scalar(1));
    // sqrt(2 pi) squared is exactly 2 pi
    Scalar sq = Scalar::constant(Constant::Two, Rational(1, 2)) *
                Scalar::constant(Constant::Pi, Rational(1, 2));
    CHECK(sq * sq == Scalar(2) * pi);
}

TEST_CASE("integer powers of Two fold into the rational part") {
    Scalar t = Scalar::constant(Constant::Two, 3);
    CHECK(t == Scalar(8));
    CHECK(Scalar::constant(Constant::Two, -1) == Scalar(Rational(1, 2)));
}

TEST_CASE("sign decisions") {
    CHECK(Scalar(Rational(3, 7)).sign() == 1);
    CHECK(Scalar(Rational(-3, 7)).sign() == -1);
    CHECK(Scalar(0).sign() == 0);
    // e - 2 > 0, pi - e > 0 require the float interval route
    CHECK((Scalar::constant(Constant::E) - Scalar(2)).sign() == 1);
    CHECK((Scalar::constant(Constant::Pi) - Scalar::constant(Constant::E)).sign() == 1);
    CHECK((Scalar(3) - Scalar::constant(Constant::Pi)).sign() == -1);
}

TEST_CASE("exp and ln on the supported fragment") {
    CHECK(Scalar(1).exp() == Scalar::constant(Constant::E));
    CHECK(Scalar(Rational(1, 2)).exp() == Scalar::constant(Constant::E, Rational(1, 2)));
    CHECK(Scalar(0).exp() == Scalar(1));
    // ln(2 pi) constant round trip: exp((1/2) ln 2pi) = sqrt(2 pi)
    Scalar half_ln2pi = Scalar(Rational(1, 2)) * Scalar::constant(Constant::Ln2Pi);
    Scalar sq = half_ln2pi.exp();
    CHECK(sq * sq == Scalar(2) * Scalar::constant(Constant::Pi));
}

TEST_CASE("numeric evaluation matches doubles") {
    CHECK(std::abs(Scalar::constant(Constant::E).to_double() - std::exp(1.0)) < 1e-14);
    CHECK(std::abs(Scalar::constant(Constant::Pi).to_double() - M_PI) < 1e-14);
    Scalar mix = Scalar(2) * Scalar::constant(Constant::Pi) +
                 Scalar(Rational(1, 3)) * Scalar::constant(Constant::E);
    CHECK(std::abs(mix.to_double() - (2 * M_PI + std::exp(1.0) / 3)) < 1e-13);
    // Ei(1) registry value against the convergent series oracle
    double ei1 = 0.5772156649015328606;  // gamma
    double term = 1;
    for (int k = 1; k <= 30; ++k) {
        term /= k;
        ei1 += term / k;
    }
    CHECK(std::abs(Scalar::constant(Constant::Ei1).to_double() - ei1) < 1e-13);
}

TEST_CASE("division restricted to single-monomial divisors") {
    Scalar sum = Scalar(1) + Scalar::constant(Constant::E);
    CHECK_THROWS_AS(Scalar(1) / sum, UnsupportedFragment);
    CHECK(sum / Scalar(2) == Scalar(Rational(1, 2)) + Scalar(Rational(1, 2)) *
                                                          Scalar::constant(Constant::E));
}
