#pragma once

#include "surcal/scalar.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <vector>

namespace surcal {

/// Finite Conway normal form: sum of coeff * omega^exponent with strictly
/// decreasing surreal exponents and nonzero coefficients. The empty form is 0.
///
/// Immutable after construction. Recursion depth is bounded by the global
/// depth cap (structured ResourceError on violation, never silent truncation).
class SurrealNF {
public:
    struct Term;  // { SurrealNF exponent; Scalar coeff; }, defined below

    SurrealNF();  // the number 0
    SurrealNF(const SurrealNF&);
    SurrealNF(SurrealNF&&) noexcept;
    SurrealNF& operator=(const SurrealNF&);
    SurrealNF& operator=(SurrealNF&&) noexcept;
    ~SurrealNF();

    SurrealNF(int n);
    explicit SurrealNF(Scalar real);  // exponent-0 form
    explicit SurrealNF(const Rational& q);
    static SurrealNF monomial(SurrealNF exponent, Scalar coeff);
    static SurrealNF omega();

    /// Builds a form from possibly unsorted/duplicated terms (merges, drops zeros).
    static SurrealNF from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int depth() const;

    /// True iff the form is a plain real (zero or a single exponent-0 term).
    bool is_real() const;
    bool is_rational_constant() const;
    Rational rational_value() const;

    const SurrealNF& leading_exponent() const;  // throws on 0
    const Scalar& leading_coeff() const;

    bool operator==(const SurrealNF& o) const;

private:
    std::vector<Term> terms_;
};

struct SurrealNF::Term {
    SurrealNF exponent;
    Scalar coeff;
};

inline SurrealNF::SurrealNF() = default;
inline SurrealNF::SurrealNF(const SurrealNF&) = default;
inline SurrealNF::SurrealNF(SurrealNF&&) noexcept = default;
inline SurrealNF& SurrealNF::operator=(const SurrealNF&) = default;
inline SurrealNF& SurrealNF::operator=(SurrealNF&&) noexcept = default;
inline SurrealNF::~SurrealNF() = default;
inline SurrealNF::SurrealNF(Scalar real) {
    if (!real.is_zero()) terms_.push_back({SurrealNF(), std::move(real)});
}
inline SurrealNF::SurrealNF(int n) : SurrealNF(Scalar(n)) {}
inline SurrealNF::SurrealNF(const Rational& q) : SurrealNF(Scalar(q)) {}

/// Global caps, adjustable before computation starts (read from the
/// environment by the CLI). Not synchronized: set once, then share freely.
struct Limits {
    int depth_cap = 8;
    int stream_term_cap = 4096;
};
Limits& limits();

int nf_cmp(const SurrealNF& a, const SurrealNF& b);  // -1 / 0 / +1

SurrealNF nf_add(const SurrealNF& a, const SurrealNF& b);
SurrealNF nf_neg(const SurrealNF& a);
SurrealNF nf_sub(const SurrealNF& a, const SurrealNF& b);
SurrealNF nf_mul(const SurrealNF& a, const SurrealNF& b);
SurrealNF nf_scale(const Scalar& c, const SurrealNF& a);
SurrealNF omega_pow(const SurrealNF& y);

struct Decomposition {
    SurrealNF purely_infinite;
    Scalar real_part;
    SurrealNF infinitesimal;
};
Decomposition decompose(const SurrealNF& x);

bool is_infinitesimal(const SurrealNF& x);  // includes 0
bool is_infinite(const SurrealNF& x);

std::string nf_to_string(const SurrealNF& x);

}  // namespace surcal
