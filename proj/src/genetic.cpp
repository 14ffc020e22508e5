#include "surcal/genetic.hpp"

#include "surcal/borel.hpp"

#include <cmath>

namespace surcal {

bool is_dyadic(const Rational& q) {
    Integer d = denominator(q);
    while (d % 2 == 0) d /= 2;
    return d == 1;
}

namespace {

Rational rational_floor(const Rational& q) {
    Integer n = numerator(q) / denominator(q);
    if (q < 0 && n * denominator(q) != numerator(q)) --n;
    return Rational(n);
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

}  // namespace

Rational simplest_dyadic_between(std::optional<Rational> left,
                                 std::optional<Rational> right) {
    if (left && !is_dyadic(*left)) throw UnsupportedFragment("left option is not dyadic");
    if (right && !is_dyadic(*right)) throw UnsupportedFragment("right option is not dyadic");
    if (left && right && *left >= *right)
        throw DomainError("bracket precondition violated: L < R required");

    if (!left && !right) return 0;
    if (left && (!right || *right > 0) && *left < 0) return 0;
    if (right && !left && *right > 0) return 0;
    if (!right) return rational_floor(*left) + 1;  // least integer > left
    if (!left) return rational_floor(*right) + (is_integer(*right) ? -1 : 0);

    const Rational& lo = *left;
    const Rational& hi = *right;
    // least-birthday integer inside the interval, if any (nearest to zero)
    if (lo < 0 && hi > 0) return 0;
    if (lo >= 0) {
        Rational n = rational_floor(lo) + 1;
        if (n < hi) return n;
    } else {
        Rational n = rational_floor(hi) + (is_integer(hi) ? -1 : 0);
        if (n > lo) return n;
    }
    // no integer inside: bisect down from the surrounding unit interval
    Rational a = rational_floor(lo), b = a + 1;
    for (;;) {
        Rational mid = (a + b) / 2;
        if (mid <= lo)
            a = mid;
        else if (mid >= hi)
            b = mid;
        else
            return mid;
    }
}

long birthday(const Rational& x) {
    if (!is_dyadic(x)) throw UnsupportedFragment("birthday requires a dyadic rational");
    std::optional<Rational> lo, hi;
    Rational z = 0;
    long steps = 0;
    while (z != x) {
        if (x > z)
            lo = z;
        else
            hi = z;
        z = simplest_dyadic_between(lo, hi);
        ++steps;
    }
    return steps;
}

Resolved<TermStream> resolve_truncation_bracket_by_exponent(
    const TermStream& x, const SurrealNF& bound) {
    // direct check on whatever prefix is cheap to see
    constexpr std::size_t kInspect = 64;
    std::size_t seen = 0;
    for (; seen < kInspect; ++seen) {
        auto t = x.term(seen);
        if (!t) break;
        if (nf_cmp(t->exponent, bound) <= 0)
            throw DomainError(
                "truncation bracket precondition violated: stream exponent not above "
                "the error exponent");
    }
    if (seen < kInspect && x.ends_within(seen)) return x;  // finite stream, fully checked

    // infinite stream: certify from the support grid. All grid exponents are
    // base + nonneg combinations of finite-depth generators, so they stay in
    // the Archimedean vicinity of the base's purely infinite part; separation
    // holds when the bound's purely infinite part sits strictly below it.
    for (const auto& g : x.certificate().generators) {
        if (!decompose(g).purely_infinite.is_zero())
            return NeedsMoreTerms{"support generators reach across Archimedean classes"};
    }
    SurrealNF gap = nf_sub(decompose(x.certificate().base).purely_infinite,
                           decompose(bound).purely_infinite);
    static const SurrealNF zero;
    if (is_infinite(gap) && nf_cmp(gap, zero) > 0) return x;
    return NeedsMoreTerms{"exponent separation unverifiable at this depth"};
}

Resolved<TermStream> resolve_truncation_bracket(const TermStream& x, const SurrealNF& y) {
    static const SurrealNF zero;
    if (nf_cmp(y, zero) <= 0)
        throw DomainError("truncation bracket requires a positive error radius");
    return resolve_truncation_bracket_by_exponent(x, y.leading_exponent());
}

namespace {

Rational factorial(long k) {
    Rational f = 1;
    for (long i = 2; i <= k; ++i) f *= i;
    return f;
}

// e^x * sum_{k in l(x)} k!/x^{k+1} at real x > 1, shared with the borel module
// so the genetic midpoint and least_term_sum agree bit for bit.
double ei_least_term_midpoint(double x) {
    auto res = least_term_sum(ei_series_for_least_term(), 1.0, x);
    return std::exp(x) * res.value;
}

}  // namespace

EiResult genetic_ei(const SurrealNF& x, const Scalar& C) {
    if (nf_cmp(x, SurrealNF(1)) <= 0) throw DomainError("genetic Ei requires x > 1");
    if (C.to_double() < 3.54)
        throw DomainError("error constant below the least-term remainder bound");

    if (x.is_real()) {
        double xv = x.terms()[0].coeff.to_double();
        EiInterval iv;
        iv.midpoint = ei_least_term_midpoint(xv);
        double radius = C.to_double() / std::sqrt(xv);
        iv.lo = iv.midpoint - radius;
        iv.hi = iv.midpoint + radius;
        return iv;
    }

    auto d = decompose(x);
    if (d.purely_infinite.is_zero())
        throw UnsupportedFragment("Ei at a finite non-real surreal argument");

    // x = P + r + eps. Ei(x) = e^P e^r [ e^eps * sum_k k! x^{-k-1} ], with the
    // inner sum re-expanded on the grid of M = 1/(leading monomial) and
    // h = x/(leading monomial) - 1:
    //   sum_k k!/x^{k+1} = M * sum_{k,j} k! binom(-k-1,j) M^k h^j
    const SurrealNF& y = x.leading_exponent();
    Scalar r_lead = x.leading_coeff();
    SurrealNF M = SurrealNF::monomial(nf_neg(y), r_lead.inverse());
    SurrealNF h = nf_sub(nf_mul(SurrealNF::monomial(nf_neg(y), r_lead.inverse()), x),
                         SurrealNF(1));

    auto coeffs = [](const std::vector<long>& k) {
        long kk = k[0], j = k[1];
        // k! * binom(-k-1, j) = k! * (-1)^j * binom(k+j, j) = (-1)^j (k+j)!/j!
        Rational c = factorial(kk + j) / factorial(j);
        if (j % 2 == 1) c = -c;
        return Scalar(c);
    };
    TermStream inner = eval_multiseries_at_infinitesimals(coeffs, {M, h});
    TermStream series = inner.scaled(nf_neg(y), r_lead.inverse());
    if (!d.infinitesimal.is_zero()) {
        TermStream exp_eps = eval_series_at_infinitesimal(
            [memo = std::make_shared<std::vector<Rational>>(std::vector<Rational>{1})](
                long k) mutable {
                while (static_cast<long>(memo->size()) <= k)
                    memo->push_back(memo->back() * static_cast<long>(memo->size()));
                return Scalar(Rational(1) / (*memo)[k]);
            },
            d.infinitesimal);
        series = stream_mul(series, exp_eps);
    }

    // the defining bracket {sum - 2C e^-x x^b, S^L | sum + 2C e^-x x^b, S^R}
    // resolves by the truncation rule: the error radius lives below
    // omega^(-(c/2) * w^(a - 1/w)) while the series grid stays finite-depth
    const auto& lead_term = d.purely_infinite.terms()[0];
    SurrealNF lambda_inv = SurrealNF::monomial(SurrealNF(-1), Scalar(1));  // omega^(-1)
    SurrealNF bound_exp = nf_sub(lead_term.exponent, lambda_inv);
    Scalar half_coeff = lead_term.coeff * Scalar(Rational(-1, 2));
    SurrealNF error_exponent_bound = SurrealNF::monomial(bound_exp, half_coeff);
    auto resolved_stream = resolve_truncation_bracket_by_exponent(series, error_exponent_bound);
    if (!resolved(resolved_stream))
        throw std::logic_error("Ei truncation bracket failed to resolve");

    EiAtInfinity out;
    out.exp_arg = d.purely_infinite;
    out.factor = d.real_part.exp();
    out.series = std::get<TermStream>(resolved_stream);
    out.constant_shift = Scalar(0);
    return out;
}

EiResult genetic_ei_from_one(const SurrealNF& x, const Scalar& C) {
    EiResult r = genetic_ei(x, C);
    Scalar ei1 = Scalar::constant(Constant::Ei1);
    if (auto* inf = std::get_if<EiAtInfinity>(&r)) {
        inf->constant_shift = -ei1;
    } else {
        auto& iv = std::get<EiInterval>(r);
        double v = ei1.to_double();
        iv.lo -= v;
        iv.hi -= v;
        iv.midpoint -= v;
    }
    return r;
}

}  // namespace surcal
