#pragma once

#include "surcal/surreal_nf.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <optional>

namespace surcal {

struct StreamTerm {
    SurrealNF exponent;
    Scalar coeff;
};

/// Grid-based support certificate: every emitted exponent lies in
/// { base + sum n_i * g_i : n_i >= 0 } for the (strictly negative) generators g_i.
struct SupportCertificate {
    SurrealNF base;                      // upper bound on the leading exponent
    std::vector<SurrealNF> generators;   // strictly negative steps
    bool finite = false;                 // stream known to terminate
};

/// Lazy, memoized stream of normal-form terms in strictly decreasing
/// exponent order. Values are immutable and safe to read concurrently.
class TermStream {
public:
    using Source = std::function<std::optional<StreamTerm>()>;

    TermStream();  // empty stream (the number 0)
    TermStream(SupportCertificate cert, Source source);
    static TermStream from_nf(const SurrealNF& x);
    static TermStream concat(std::vector<StreamTerm> prefix, TermStream tail);

    /// i-th term, or nullopt when the stream ends before i. Throws
    /// ResourceError past the global stream term cap.
    std::optional<StreamTerm> term(std::size_t i) const;

    /// Sum of the first n terms (fewer if the stream ends).
    SurrealNF truncate(std::size_t n) const;

    /// True when the stream is known (so far) to have ended at or before n terms.
    bool ends_within(std::size_t n) const;

    /// Stream with every exponent shifted and every coefficient scaled.
    TermStream scaled(const SurrealNF& exponent_shift, const Scalar& factor) const;

    const SupportCertificate& certificate() const { return cert_; }

private:
    struct State {
        std::mutex mu;
        std::vector<StreamTerm> cache;
        Source source;
        bool done = false;
    };
    void pull(std::size_t i) const;
    SupportCertificate cert_;
    std::shared_ptr<State> state_;
};

/// Termwise merge; equal exponents combine coefficients, zeros are skipped.
TermStream stream_add(const TermStream& a, const TermStream& b);

/// Cauchy product on grid-based streams (lazy pairwise frontier merge).
TermStream stream_mul(const TermStream& a, const TermStream& b);

/// Multivariate Conway-Limit evaluation (Prop. sur7 fragment):
/// sum over multi-indices k of coeffs(k) * prod eps_i^{k_i}, emitted once
/// total-degree partial sums stabilize.
TermStream eval_multiseries_at_infinitesimals(
    std::function<Scalar(const std::vector<long>&)> coeffs, std::vector<SurrealNF> eps);

/// Conway-Limit evaluation of sum_k coeffs(k) * eps^k for purely
/// infinitesimal eps (Prop. sur5 / sur7 fragment). Coefficients of the limit
/// are emitted once partial sums stabilize on the grid of eps's exponents.
TermStream eval_series_at_infinitesimal(std::function<Scalar(long)> coeffs,
                                        const SurrealNF& eps);

/// 1/a as a lazy geometric re-expansion around the leading monomial.
/// `order` is a prefetch hint (the stream materializes at least that many terms lazily).
TermStream nf_inverse(const SurrealNF& a, std::size_t order = 0);

/// exp(x) factored as exp(purely infinite) * real factor * infinitesimal series.
/// The purely infinite factor stays atomic (never rewritten into omega-powers).
struct NfExp {
    SurrealNF exp_arg;   // purely infinite P in e^P; 0 means no atomic factor
    Scalar real_factor;  // e^{re(x)}
    TermStream series;   // sum of inf(x)^k / k!
};
NfExp exp_nf(const SurrealNF& x);

/// ln(x) for x > 0 with a rational leader exponent: q*lambda + ln(r) + series,
/// where lambda = ln(omega) is represented as omega^(omega^-1).
TermStream ln_nf(const SurrealNF& x);

}  // namespace surcal
