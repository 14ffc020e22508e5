#pragma once

#include "surcal/genetic.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace surcal {

/// Exponential/power generators of a level-one log-free grid. Monomials are
/// x^{beta.k - l} e^{-(k.lambda) x} (ln x)^m over integer vectors k and
/// integers l, m. The implicit generators x^{-1} and ln x are always present.
struct GeneratorSet {
    std::vector<Rational> lambda;  // all > 0
    std::vector<Rational> beta;    // all in (0, 1]

    void validate() const;
    bool operator==(const GeneratorSet&) const = default;
};

struct Transmonomial {
    std::vector<long> k;
    long l = 0;
    long m = 0;

    bool operator==(const Transmonomial&) const = default;
};

/// Magnitude order: ascending exponential weight k.lambda (heavier decay =
/// smaller), then descending power beta.k - l, then descending log power.
/// Returns -1/0/+1 for a <? b as functions of a large real variable.
/// Ties (0) between distinct index vectors mean equal monomial functions.
int monomial_cmp(const GeneratorSet& g, const Transmonomial& a, const Transmonomial& b);

/// Grid-supported transseries with an exact pointwise coefficient oracle.
/// Support lies in k >= kmin (componentwise), l >= lmin, 0 <= m <= mmax,
/// which makes every arithmetic coefficient a finite sum.
struct Transseries {
    GeneratorSet gens;
    std::vector<long> kmin;
    long lmin = 0;
    long mmax = 0;
    std::function<Scalar(const Transmonomial&)> coeff;
};

Transseries ts_zero(GeneratorSet gens);
Transseries ts_monomial(GeneratorSet gens, Transmonomial mono, Scalar c);

Transseries ts_add(const Transseries& a, const Transseries& b);
Transseries ts_scale(const Scalar& c, const Transseries& a);
Transseries ts_neg(const Transseries& a);
Transseries ts_mul(const Transseries& a, const Transseries& b);

/// Dominant-monomial factoring plus geometric re-expansion through `order`
/// powers of the infinitesimal remainder.
Transseries ts_inverse(const Transseries& a, int order);

Transseries ts_diff(const Transseries& a);

/// Termwise antiderivative. Decaying exponential terms get the antiderivative
/// vanishing at +infinity (zero constant, Hadamard finite part); x^{-1}
/// integrates to ln x; growing exponential terms use the same by-parts
/// recurrence. Inputs with positive log powers are rejected.
Transseries ts_integrate(const Transseries& a);

/// First `n` nonzero terms in strictly decreasing magnitude order (monomials
/// with equal magnitude are merged). `budget` caps grid-node inspection.
std::vector<std::pair<Transmonomial, Scalar>> ts_terms(const Transseries& a, std::size_t n,
                                                       std::size_t budget = 4096);

/// Dominant term, or empty when no nonzero coefficient shows up in budget.
std::optional<std::pair<Transmonomial, Scalar>> ts_dominant(const Transseries& a,
                                                            std::size_t budget = 4096);

/// Sign of a - b by dominant coefficient (0 when no difference found).
int ts_cmp(const Transseries& a, const Transseries& b);

/// Grid-topology limit: coefficients must become eventually constant. Checks
/// every monomial in the inspection box |k - kmin| <= box, l - lmin <= box;
/// resolved when the tail of the sequence agrees on the whole box.
Resolved<Transseries> ts_converges(const std::vector<Transseries>& seq, long box = 6);

/// One exponential group of an evaluated transseries:
/// factor * e^{exp_arg} * series, exp_arg purely infinite (or zero).
struct ExpansionGroup {
    SurrealNF exp_arg;
    Scalar factor;
    TermStream series;
};
/// Groups in decreasing magnitude (ascending exponential weight).
using SurrealExpansion = std::vector<ExpansionGroup>;

/// Substitutes an infinite surreal argument in normal form. The purely
/// infinite part of -w*x0 stays an atomic exponential argument; the real part
/// folds into the group factor and the infinitesimal part is expanded as a
/// stream. Log-power monomials are not supported at surreal arguments.
SurrealExpansion ts_eval_at(const Transseries& a, const SurrealNF& x0,
                            std::size_t max_groups = 8);

}  // namespace surcal
