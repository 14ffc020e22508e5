#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surcal/term_stream.hpp"

#include <random>

using namespace surcal;

namespace {

SurrealNF w_pow(int n) { return omega_pow(SurrealNF(n)); }

/// Uniform random normal form: up to `max_terms` terms, exponent depth <= 2.
SurrealNF random_nf(std::mt19937& rng, int depth = 2, int max_terms = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<SurrealNF::Term> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        SurrealNF e = depth > 0 ? random_nf(rng, depth - 1, 2) : SurrealNF(num(rng));
        Rational c(num(rng), den(rng));
        if (c != 0) terms.push_back({std::move(e), Scalar(c)});
    }
    return SurrealNF::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("normal-form ordering is lexicographic on exponents") {
    CHECK(nf_cmp(SurrealNF::omega(), SurrealNF(1000000)) > 0);
    CHECK(nf_cmp(w_pow(2), nf_add(SurrealNF::omega(), SurrealNF(5))) > 0);
    CHECK(nf_cmp(omega_pow(SurrealNF(Rational(1, 2))), SurrealNF::omega()) < 0);
    CHECK(nf_cmp(omega_pow(SurrealNF(-1)), SurrealNF(Rational(1, 1000))) < 0);
    CHECK(nf_cmp(omega_pow(SurrealNF(-1)), SurrealNF()) > 0);
    // coefficient decides when exponents agree
    CHECK(nf_cmp(nf_scale(Scalar(2), SurrealNF::omega()),
                 nf_scale(Scalar(3), SurrealNF::omega())) < 0);
}

TEST_CASE("ring axioms on random normal forms") {
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        SurrealNF a = random_nf(rng), b = random_nf(rng), c = random_nf(rng);
        CHECK(nf_add(a, b) == nf_add(b, a));
        CHECK(nf_mul(a, b) == nf_mul(b, a));
        CHECK(nf_add(nf_add(a, b), c) == nf_add(a, nf_add(b, c)));
        CHECK(nf_mul(nf_mul(a, b), c) == nf_mul(a, nf_mul(b, c)));
        CHECK(nf_mul(a, nf_add(b, c)) == nf_add(nf_mul(a, b), nf_mul(a, c)));
        CHECK(nf_add(a, nf_neg(a)).is_zero());
        CHECK(nf_mul(a, SurrealNF(1)) == a);
    }
}

TEST_CASE("decomposition splits by exponent sign") {
    // x = 3 w^2 + 1/2 - 5 w^-1
    SurrealNF x = nf_add(nf_scale(Scalar(3), w_pow(2)),
                         nf_add(SurrealNF(Rational(1, 2)),
                                nf_scale(Scalar(-5), w_pow(-1))));
    auto d = decompose(x);
    CHECK(d.purely_infinite == nf_scale(Scalar(3), w_pow(2)));
    CHECK(d.real_part == Scalar(Rational(1, 2)));
    CHECK(d.infinitesimal == nf_scale(Scalar(-5), w_pow(-1)));
    CHECK(is_infinite(x));
    CHECK(is_infinitesimal(d.infinitesimal));
    CHECK(!is_infinitesimal(x));
}

TEST_CASE("canonical rendering") {
    CHECK(nf_to_string(SurrealNF()) == "0");
    CHECK(nf_to_string(SurrealNF::omega()) == "w");
    CHECK(nf_to_string(w_pow(-1)) == "w^-1");
    CHECK(nf_to_string(omega_pow(SurrealNF(Rational(1, 2)))) == "w^(1/2)");
    SurrealNF x = nf_add(nf_scale(Scalar(3), w_pow(2)), nf_scale(Scalar(-1), w_pow(0)));
    CHECK(nf_to_string(x) == "3*w^2 - 1");
    CHECK(nf_to_string(omega_pow(omega_pow(SurrealNF(-1)))) == "w^(w^-1)");
}

TEST_CASE("nf_inverse: geometric re-expansion") {
    // 1/(w + 1) = w^-1 - w^-2 + w^-3 - ...
    SurrealNF x = nf_add(SurrealNF::omega(), SurrealNF(1));
    TermStream inv = nf_inverse(x);
    for (int k = 0; k < 8; ++k) {
        auto t = inv.term(k);
        REQUIRE(t);
        CHECK(t->exponent == SurrealNF(-1 - k));
        CHECK(t->coeff == Scalar(k % 2 ? Rational(-1) : Rational(1)));
    }
    // residual of x * inv - 1 sits below grid level 10
    TermStream prod = stream_mul(TermStream::from_nf(x), inv);
    SurrealNF approx = prod.truncate(10);
    SurrealNF resid = nf_sub(approx, SurrealNF(1));
    if (!resid.is_zero()) CHECK(nf_cmp(resid.leading_exponent(), SurrealNF(-9)) < 0);
}

TEST_CASE("stream_mul against direct normal-form products") {
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        SurrealNF a = random_nf(rng, 1, 3), b = random_nf(rng, 1, 3);
        TermStream p = stream_mul(TermStream::from_nf(a), TermStream::from_nf(b));
        CHECK(p.truncate(64) == nf_mul(a, b));
    }
}

TEST_CASE("exp factors and ln inverts on the supported fragment") {
    // exp(w + 1/2 + w^-1): atomic e^w, factor e^{1/2}, series sum w^-k/k!
    SurrealNF x = nf_add(SurrealNF::omega(),
                         nf_add(SurrealNF(Rational(1, 2)), w_pow(-1)));
    NfExp fe = exp_nf(x);
    CHECK(fe.exp_arg == SurrealNF::omega());
    CHECK(fe.real_factor == Scalar::constant(Constant::E, Rational(1, 2)));
    auto t0 = fe.series.term(0);
    auto t2 = fe.series.term(2);
    REQUIRE(t0);
    REQUIRE(t2);
    CHECK(t0->coeff == Scalar(1));
    CHECK(t2->exponent == SurrealNF(-2));
    CHECK(t2->coeff == Scalar(Rational(1, 2)));

    // ln(w^2 * 4 * (1 + w^-1)) = 2 lambda + ln 4 + (w^-1 - w^-2/2 + ...)
    SurrealNF y = nf_add(nf_scale(Scalar(4), w_pow(2)), nf_scale(Scalar(4), w_pow(1)));
    TermStream ln = ln_nf(y);
    auto l0 = ln.term(0);
    REQUIRE(l0);
    CHECK(l0->exponent == omega_pow(w_pow(-1)));  // lambda = w^(w^-1)
    CHECK(l0->coeff == Scalar(2));
    auto l1 = ln.term(1);
    REQUIRE(l1);
    CHECK(l1->exponent == SurrealNF(0));
    auto l2 = ln.term(2);
    REQUIRE(l2);
    CHECK(l2->exponent == SurrealNF(-1));
    CHECK(l2->coeff == Scalar(1));
    auto l3 = ln.term(3);
    REQUIRE(l3);
    CHECK(l3->coeff == Scalar(Rational(-1, 2)));
}

TEST_CASE("series evaluation at an infinitesimal stabilizes (Conway limit)") {
    // 1/(1 - eps) with eps = w^-1 + w^-2: coefficients must stabilize even
    // though every shell touches earlier exponents
    SurrealNF eps = nf_add(w_pow(-1), w_pow(-2));
    TermStream s = eval_series_at_infinitesimal([](long) { return Scalar(1); }, eps);
    // closed form: 1/(1 - w^-1 - w^-2) re-expanded; compare against nf_inverse
    SurrealNF denom = nf_sub(SurrealNF(1), eps);
    TermStream ref = nf_inverse(denom);
    for (int k = 0; k < 12; ++k) {
        auto a = s.term(k);
        auto b = ref.term(k);
        REQUIRE(a);
        REQUIRE(b);
        CHECK(a->exponent == b->exponent);
        CHECK(a->coeff == b->coeff);
    }
}

TEST_CASE("depth cap raises a structured error") {
    SurrealNF deep = SurrealNF::omega();
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 64; ++i) deep = omega_pow(deep);
        }(),
        ResourceError);
}
