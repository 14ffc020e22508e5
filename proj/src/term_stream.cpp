#include "surcal/term_stream.hpp"

#include <map>
#include <set>

namespace surcal {

TermStream::TermStream() : TermStream(SupportCertificate{SurrealNF(), {}, true}, nullptr) {}

TermStream::TermStream(SupportCertificate cert, Source source)
    : cert_(std::move(cert)), state_(std::make_shared<State>()) {
    state_->source = std::move(source);
    if (!state_->source) state_->done = true;
}

TermStream TermStream::from_nf(const SurrealNF& x) {
    SupportCertificate cert;
    cert.finite = true;
    if (!x.is_zero()) cert.base = x.leading_exponent();
    auto terms = std::make_shared<std::vector<SurrealNF::Term>>(x.terms());
    auto i = std::make_shared<std::size_t>(0);
    return TermStream(std::move(cert), [terms, i]() -> std::optional<StreamTerm> {
        if (*i >= terms->size()) return std::nullopt;
        const auto& t = (*terms)[(*i)++];
        return StreamTerm{t.exponent, t.coeff};
    });
}

TermStream TermStream::concat(std::vector<StreamTerm> prefix, TermStream tail) {
    SupportCertificate cert = tail.certificate();
    if (!prefix.empty()) cert.base = prefix.front().exponent;
    auto pre = std::make_shared<std::vector<StreamTerm>>(std::move(prefix));
    auto i = std::make_shared<std::size_t>(0);
    return TermStream(std::move(cert), [pre, i, tail]() -> std::optional<StreamTerm> {
        if (*i < pre->size()) return (*pre)[(*i)++];
        return tail.term((*i)++ - pre->size());
    });
}

void TermStream::pull(std::size_t i) const {
    std::lock_guard lock(state_->mu);
    while (!state_->done && state_->cache.size() <= i) {
        if (auto t = state_->source()) {
            if (!state_->cache.empty() &&
                nf_cmp(state_->cache.back().exponent, t->exponent) <= 0)
                throw std::logic_error("stream emitted non-decreasing exponents");
            state_->cache.push_back(std::move(*t));
        } else {
            state_->done = true;
        }
    }
}

std::optional<StreamTerm> TermStream::term(std::size_t i) const {
    if (i >= static_cast<std::size_t>(limits().stream_term_cap))
        throw ResourceError("stream term cap exceeded");
    pull(i);
    std::lock_guard lock(state_->mu);
    if (i < state_->cache.size()) return state_->cache[i];
    return std::nullopt;
}

SurrealNF TermStream::truncate(std::size_t n) const {
    std::vector<SurrealNF::Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
        auto t = term(i);
        if (!t) break;
        terms.push_back({t->exponent, t->coeff});
    }
    return SurrealNF::from_terms(std::move(terms));
}

bool TermStream::ends_within(std::size_t n) const { return !term(n).has_value(); }

TermStream TermStream::scaled(const SurrealNF& exponent_shift, const Scalar& factor) const {
    if (factor.is_zero()) return TermStream();
    SupportCertificate cert = cert_;
    cert.base = nf_add(cert.base, exponent_shift);
    TermStream self = *this;
    auto i = std::make_shared<std::size_t>(0);
    return TermStream(std::move(cert),
                      [self, exponent_shift, factor, i]() -> std::optional<StreamTerm> {
                          auto t = self.term((*i)++);
                          if (!t) return std::nullopt;
                          return StreamTerm{nf_add(t->exponent, exponent_shift),
                                            factor * t->coeff};
                      });
}

TermStream stream_add(const TermStream& a, const TermStream& b) {
    SupportCertificate cert;
    cert.base = nf_cmp(a.certificate().base, b.certificate().base) >= 0
                    ? a.certificate().base
                    : b.certificate().base;
    cert.generators = a.certificate().generators;
    cert.generators.insert(cert.generators.end(), b.certificate().generators.begin(),
                           b.certificate().generators.end());
    cert.finite = a.certificate().finite && b.certificate().finite;

    struct Gen {
        TermStream a, b;
        std::size_t i = 0, j = 0;
    };
    auto g = std::make_shared<Gen>(Gen{a, b});
    return TermStream(std::move(cert), [g]() -> std::optional<StreamTerm> {
        for (;;) {
            auto ta = g->a.term(g->i);
            auto tb = g->b.term(g->j);
            if (!ta && !tb) return std::nullopt;
            if (ta && (!tb || nf_cmp(ta->exponent, tb->exponent) > 0)) {
                ++g->i;
                return ta;
            }
            if (tb && (!ta || nf_cmp(tb->exponent, ta->exponent) > 0)) {
                ++g->j;
                return tb;
            }
            ++g->i, ++g->j;
            Scalar c = ta->coeff + tb->coeff;
            if (!c.is_zero()) return StreamTerm{ta->exponent, std::move(c)};
        }
    });
}

TermStream stream_mul(const TermStream& a, const TermStream& b) {
    SupportCertificate cert;
    cert.base = nf_add(a.certificate().base, b.certificate().base);
    cert.generators = a.certificate().generators;
    cert.generators.insert(cert.generators.end(), b.certificate().generators.begin(),
                           b.certificate().generators.end());
    cert.finite = a.certificate().finite && b.certificate().finite;

    // frontier of index pairs ordered by exponent sum; a popped pair seeds
    // its two successors, whose exponent sums are strictly smaller
    struct NfGreater {
        bool operator()(const SurrealNF& x, const SurrealNF& y) const {
            return nf_cmp(x, y) > 0;
        }
    };
    struct Gen {
        TermStream a, b;
        std::map<SurrealNF, std::vector<std::pair<std::size_t, std::size_t>>, NfGreater>
            frontier;
        std::set<std::pair<std::size_t, std::size_t>> seen;
        bool seeded = false;
        void push(std::size_t i, std::size_t j) {
            if (!seen.insert({i, j}).second) return;
            auto ta = a.term(i);
            auto tb = b.term(j);
            if (!ta || !tb) return;
            frontier[nf_add(ta->exponent, tb->exponent)].push_back({i, j});
        }
    };
    auto g = std::make_shared<Gen>(Gen{a, b});
    return TermStream(std::move(cert), [g]() -> std::optional<StreamTerm> {
        if (!g->seeded) {
            g->seeded = true;
            g->push(0, 0);
        }
        while (!g->frontier.empty()) {
            auto node = g->frontier.extract(g->frontier.begin());
            Scalar c(0);
            for (auto [i, j] : node.mapped()) {
                c += g->a.term(i)->coeff * g->b.term(j)->coeff;
                g->push(i + 1, j);
                g->push(i, j + 1);
            }
            if (!c.is_zero()) return StreamTerm{node.key(), std::move(c)};
        }
        return std::nullopt;
    });
}

TermStream eval_multiseries_at_infinitesimals(
    std::function<Scalar(const std::vector<long>&)> coeffs, std::vector<SurrealNF> eps) {
    // drop zero variables (their only contribution is index 0)
    std::vector<SurrealNF> live;
    std::vector<std::size_t> live_pos;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!is_infinitesimal(eps[i]))
            throw DomainError("multiseries evaluation point is not infinitesimal");
        if (!eps[i].is_zero()) {
            live.push_back(eps[i]);
            live_pos.push_back(i);
        }
    }
    const std::size_t total = eps.size();
    auto full_index = [total, live_pos](const std::vector<long>& k) {
        std::vector<long> f(total, 0);
        for (std::size_t i = 0; i < live_pos.size(); ++i) f[live_pos[i]] = k[i];
        return f;
    };
    if (live.empty())
        return TermStream::from_nf(SurrealNF(coeffs(std::vector<long>(total, 0))));

    SupportCertificate cert;
    for (const auto& e : live)
        for (const auto& t : e.terms()) cert.generators.push_back(t.exponent);

    struct Gen {
        std::function<Scalar(const std::vector<long>&)> coeffs;
        std::function<std::vector<long>(const std::vector<long>&)> full_index;
        std::vector<SurrealNF> eps;
        SurrealNF lead;  // max leading exponent over eps (< 0)
        SurrealNF partial;
        SurrealNF frontier;
        long n = 0;
        std::size_t emitted = 0;

        const SurrealNF& power(std::size_t var, long j) {
            auto& cache = pow_cache[var];
            while (static_cast<long>(cache.size()) <= j)
                cache.push_back(cache.empty() ? SurrealNF(1)
                                              : nf_mul(cache.back(), eps[var]));
            return cache[j];
        }
        std::vector<std::vector<SurrealNF>> pow_cache;

        void add_shell(long degree) {
            std::vector<long> k(eps.size(), 0);
            rec(0, degree, k);
        }
        void rec(std::size_t pos, long remaining, std::vector<long>& k) {
            if (pos + 1 == k.size()) {
                k[pos] = remaining;
                Scalar c = coeffs(full_index(k));
                if (!c.is_zero()) {
                    SurrealNF term(1);
                    for (std::size_t v = 0; v < k.size(); ++v)
                        if (k[v]) term = nf_mul(term, power(v, k[v]));
                    partial = nf_add(partial, nf_scale(c, term));
                }
                return;
            }
            for (long j = 0; j <= remaining; ++j) {
                k[pos] = j;
                rec(pos + 1, remaining - j, k);
            }
        }
    };
    auto g = std::make_shared<Gen>();
    g->coeffs = std::move(coeffs);
    g->full_index = full_index;
    g->eps = live;
    g->pow_cache.resize(live.size());
    g->lead = live[0].leading_exponent();
    for (const auto& e : live)
        if (nf_cmp(e.leading_exponent(), g->lead) > 0) g->lead = e.leading_exponent();
    g->add_shell(0);
    g->frontier = g->lead;

    return TermStream(std::move(cert), [g]() -> std::optional<StreamTerm> {
        for (;;) {
            const auto& terms = g->partial.terms();
            if (g->emitted < terms.size() &&
                nf_cmp(terms[g->emitted].exponent, g->frontier) > 0) {
                const auto& t = terms[g->emitted++];
                return StreamTerm{t.exponent, t.coeff};
            }
            if (g->n > limits().stream_term_cap)
                throw ResourceError("multiseries evaluation did not stabilize within term cap");
            ++g->n;
            g->add_shell(g->n);
            g->frontier = nf_add(g->frontier, g->lead);
        }
    });
}

TermStream eval_series_at_infinitesimal(std::function<Scalar(long)> coeffs,
                                        const SurrealNF& eps) {
    if (!is_infinitesimal(eps))
        throw DomainError("series evaluation point is not infinitesimal: " +
                          nf_to_string(eps));
    if (eps.is_zero()) return TermStream::from_nf(SurrealNF(coeffs(0)));

    SupportCertificate cert;
    cert.base = SurrealNF();  // the c_0 term sits at omega^0
    for (const auto& t : eps.terms()) cert.generators.push_back(t.exponent);

    struct Gen {
        std::function<Scalar(long)> coeffs;
        SurrealNF eps;
        SurrealNF lead;      // leading exponent of eps (< 0)
        SurrealNF partial;   // sum of c_k eps^k, k <= n
        SurrealNF eps_pow;   // eps^n
        SurrealNF frontier;  // exponents > frontier are stable
        long n = 0;
        std::size_t emitted = 0;
    };
    auto g = std::make_shared<Gen>();
    g->coeffs = std::move(coeffs);
    g->eps = eps;
    g->lead = eps.leading_exponent();
    g->partial = SurrealNF(g->coeffs(0));
    g->eps_pow = SurrealNF(1);
    g->frontier = g->lead;

    return TermStream(std::move(cert), [g]() -> std::optional<StreamTerm> {
        for (;;) {
            const auto& terms = g->partial.terms();
            if (g->emitted < terms.size() &&
                nf_cmp(terms[g->emitted].exponent, g->frontier) > 0) {
                const auto& t = terms[g->emitted++];
                return StreamTerm{t.exponent, t.coeff};
            }
            if (g->n > limits().stream_term_cap)
                throw ResourceError("series evaluation did not stabilize within term cap");
            ++g->n;
            g->eps_pow = nf_mul(g->eps_pow, g->eps);
            Scalar c = g->coeffs(g->n);
            if (!c.is_zero()) g->partial = nf_add(g->partial, nf_scale(c, g->eps_pow));
            // terms above (n+1)*lead can no longer change
            g->frontier = nf_add(g->frontier, g->lead);
        }
    });
}

TermStream nf_inverse(const SurrealNF& a, std::size_t order) {
    if (a.is_zero()) throw DomainError("division by zero normal form");
    const SurrealNF& y = a.leading_exponent();
    Scalar rinv = a.leading_coeff().inverse();
    SurrealNF mono_inv = SurrealNF::monomial(nf_neg(y), rinv);
    SurrealNF h = nf_sub(nf_mul(mono_inv, a), SurrealNF(1));
    TermStream geo = eval_series_at_infinitesimal(
        [](long k) { return Scalar(k % 2 == 0 ? 1 : -1); }, h);
    TermStream out = geo.scaled(nf_neg(y), rinv);
    if (order) out.truncate(order);
    return out;
}

NfExp exp_nf(const SurrealNF& x) {
    auto d = decompose(x);
    NfExp r{std::move(d.purely_infinite), d.real_part.exp(), TermStream()};
    r.series = eval_series_at_infinitesimal(
        [memo = std::make_shared<std::vector<Rational>>(std::vector<Rational>{1})](
            long k) mutable {
            while (static_cast<long>(memo->size()) <= k)
                memo->push_back(memo->back() * static_cast<long>(memo->size()));
            return Scalar(Rational(1) / (*memo)[k]);
        },
        d.infinitesimal);
    return r;
}

TermStream ln_nf(const SurrealNF& x) {
    static const SurrealNF zero;
    if (nf_cmp(x, zero) <= 0) throw DomainError("ln of a nonpositive surreal");
    const SurrealNF& y = x.leading_exponent();
    if (!y.is_rational_constant())
        throw UnsupportedFragment(
            "ln supports only rational leader exponents; got leader w^(" +
            nf_to_string(y) + ")");
    Rational q = y.rational_value();
    Scalar r = x.leading_coeff();
    SurrealNF mono_inv = SurrealNF::monomial(nf_neg(y), r.inverse());
    SurrealNF h = nf_sub(nf_mul(mono_inv, x), SurrealNF(1));

    std::vector<StreamTerm> head;
    if (q != 0) {
        // lambda = ln(omega) = omega^(omega^-1)
        SurrealNF lambda_exp = SurrealNF::monomial(SurrealNF(-1), Scalar(1));
        head.push_back({lambda_exp, Scalar(q)});
    }
    Scalar lnr = r.ln();
    if (!lnr.is_zero()) head.push_back({SurrealNF(), lnr});

    TermStream series = eval_series_at_infinitesimal(
        [](long k) {
            if (k == 0) return Scalar(0);
            return Scalar(Rational(k % 2 == 1 ? 1 : -1, k));
        },
        h);
    return TermStream::concat(std::move(head), std::move(series));
}

}  // namespace surcal
