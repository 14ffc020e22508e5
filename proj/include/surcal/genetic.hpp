#pragma once

#include "surcal/term_stream.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace surcal {

/// "Refine the inputs and retry" — a first-class non-error outcome for
/// semi-decidable checks on lazy streams.
struct NeedsMoreTerms {
    std::string reason;
};

template <typename T>
using Resolved = std::variant<T, NeedsMoreTerms>;

template <typename T>
bool resolved(const Resolved<T>& r) {
    return std::holds_alternative<T>(r);
}

/// {L|R} bracket over the representable fragment: finite option sets,
/// empty set standing for the -inf / +inf marker.
struct GeneticBracket {
    std::vector<SurrealNF> left;
    std::vector<SurrealNF> right;
};

/// Dyadic rationals: denominator a power of two.
bool is_dyadic(const Rational& q);

/// Length of the sign expansion of a dyadic rational.
long birthday(const Rational& dyadic);

/// Unique dyadic of least birthday strictly between max L and min R
/// (empty optional = the corresponding infinity marker).
Rational simplest_dyadic_between(std::optional<Rational> left,
                                 std::optional<Rational> right);

/// Truncation rule of normal forms: {x - y | x + y} = x whenever every
/// exponent in x's support exceeds every exponent of y. The certificate
/// check is semi-decidable on streams, hence the Resolved outcome.
Resolved<TermStream> resolve_truncation_bracket(const TermStream& x, const SurrealNF& y);

/// Internal variant taking an upper bound on y's leading exponent directly;
/// used when y itself is exponentially small and not an omega-power form.
Resolved<TermStream> resolve_truncation_bracket_by_exponent(const TermStream& x,
                                                            const SurrealNF& y_exponent_bound);

/// Ei at a purely-infinite-plus-finite surreal argument:
/// factor * e^{exp_arg} * series, with exp_arg = the purely infinite part.
struct EiAtInfinity {
    SurrealNF exp_arg;
    Scalar factor;
    TermStream series;
    Scalar constant_shift;  // 0 for Ei; -Ei(1) for Ei(1,.)
};

/// Ei at a finite real argument: the bracket collapses to an interval of
/// width 2C/sqrt(x) around the least-term sum.
struct EiInterval {
    double lo = 0;
    double hi = 0;
    double midpoint = 0;  // equals the least-term sum exactly
};

using EiResult = std::variant<EiAtInfinity, EiInterval>;

/// Genetic Ei via the least-term bracket. Requires x > 1 and C at least the
/// sup-norm error constant of the Ei least-term remainder (3.55 covers it).
EiResult genetic_ei(const SurrealNF& x, const Scalar& C);

/// Ei(1,x) = integral of e^t/t over [1,x]: genetic_ei shifted by -Ei(1).
EiResult genetic_ei_from_one(const SurrealNF& x, const Scalar& C);

}  // namespace surcal
