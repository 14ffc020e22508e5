#include "surcal/transseries.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace surcal {

void GeneratorSet::validate() const {
    if (lambda.size() != beta.size())
        throw DomainError("generator set: lambda/beta length mismatch");
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] <= 0) throw DomainError("generator set: lambda must be positive");
        if (beta[i] <= 0 || beta[i] > 1)
            throw DomainError("generator set: beta must lie in (0, 1]");
    }
}

namespace {

Rational weight_of(const GeneratorSet& g, const std::vector<long>& k) {
    Rational w = 0;
    for (std::size_t i = 0; i < k.size(); ++i) w += g.lambda[i] * k[i];
    return w;
}

Rational power_of(const GeneratorSet& g, const Transmonomial& t) {
    Rational p = Rational(-t.l);
    for (std::size_t i = 0; i < t.k.size(); ++i) p += g.beta[i] * t.k[i];
    return p;
}

}  // namespace

int monomial_cmp(const GeneratorSet& g, const Transmonomial& a, const Transmonomial& b) {
    Rational wa = weight_of(g, a.k), wb = weight_of(g, b.k);
    if (wa != wb) return wa < wb ? 1 : -1;  // lighter decay = larger
    Rational pa = power_of(g, a), pb = power_of(g, b);
    if (pa != pb) return pa > pb ? 1 : -1;
    if (a.m != b.m) return a.m > b.m ? 1 : -1;
    return 0;
}

// --- Generator merging --------------------------------------------------

namespace {

struct Merge {
    GeneratorSet gens;
    std::vector<std::size_t> map_a;  // index in merged set per a-generator
    std::vector<std::size_t> map_b;
};

Merge merge_gens(const GeneratorSet& a, const GeneratorSet& b) {
    std::map<std::pair<Rational, Rational>, std::size_t> index;
    Merge m;
    auto place = [&](const GeneratorSet& g, std::vector<std::size_t>& out) {
        for (std::size_t i = 0; i < g.lambda.size(); ++i) {
            auto key = std::make_pair(g.lambda[i], g.beta[i]);
            auto it = index.find(key);
            if (it == index.end()) {
                it = index.emplace(key, m.gens.lambda.size()).first;
                m.gens.lambda.push_back(g.lambda[i]);
                m.gens.beta.push_back(g.beta[i]);
            }
            out.push_back(it->second);
        }
    };
    place(a, m.map_a);
    place(b, m.map_b);
    return m;
}

std::vector<long> remap_k(const std::vector<long>& k, const std::vector<std::size_t>& map,
                          std::size_t n) {
    std::vector<long> out(n, 0);
    for (std::size_t i = 0; i < k.size(); ++i) out[map[i]] = k[i];
    return out;
}

/// Projects a merged-space monomial back into the original generator space;
/// empty when the monomial uses a generator the original series lacks.
std::optional<Transmonomial> project_k(const Transmonomial& t,
                                       const std::vector<std::size_t>& map,
                                       std::size_t n_total) {
    std::vector<bool> covered(n_total, false);
    Transmonomial out;
    out.k.resize(map.size(), 0);
    out.l = t.l;
    out.m = t.m;
    for (std::size_t i = 0; i < map.size(); ++i) {
        out.k[i] = t.k[map[i]];
        covered[map[i]] = true;
    }
    for (std::size_t j = 0; j < n_total; ++j)
        if (!covered[j] && t.k[j] != 0) return std::nullopt;
    return out;
}

Scalar coeff_in(const Transseries& s, const Transmonomial& t) {
    for (std::size_t i = 0; i < t.k.size(); ++i)
        if (t.k[i] < s.kmin[i]) return Scalar(0);
    if (t.l < s.lmin || t.m < 0 || t.m > s.mmax) return Scalar(0);
    return s.coeff(t);
}

/// Enumerates componentwise boxes lo <= v <= hi.
template <typename F>
void for_box(const std::vector<long>& lo, const std::vector<long>& hi, F&& f) {
    std::vector<long> v(lo);
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) return;
    for (;;) {
        f(v);
        std::size_t i = 0;
        for (; i < v.size(); ++i) {
            if (v[i] < hi[i]) {
                ++v[i];
                break;
            }
            v[i] = lo[i];
        }
        if (i == v.size()) return;
    }
}

}  // namespace

Transseries ts_zero(GeneratorSet gens) {
    gens.validate();
    Transseries t;
    t.kmin.assign(gens.lambda.size(), 0);
    t.gens = std::move(gens);
    t.coeff = [](const Transmonomial&) { return Scalar(0); };
    return t;
}

Transseries ts_monomial(GeneratorSet gens, Transmonomial mono, Scalar c) {
    gens.validate();
    if (mono.k.size() != gens.lambda.size())
        throw DomainError("ts_monomial: index length mismatch");
    if (mono.m < 0) throw DomainError("ts_monomial: negative log power");
    Transseries t;
    t.gens = std::move(gens);
    t.kmin = mono.k;
    t.lmin = mono.l;
    t.mmax = mono.m;
    t.coeff = [mono = std::move(mono), c = std::move(c)](const Transmonomial& q) {
        return q == mono ? c : Scalar(0);
    };
    return t;
}

Transseries ts_add(const Transseries& a, const Transseries& b) {
    Merge m = merge_gens(a.gens, b.gens);
    std::size_t n = m.gens.lambda.size();
    Transseries out;
    out.gens = m.gens;
    std::vector<long> ka = remap_k(a.kmin, m.map_a, n), kb = remap_k(b.kmin, m.map_b, n);
    out.kmin.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.kmin[i] = std::min({ka[i], kb[i], 0L});
    out.lmin = std::min(a.lmin, b.lmin);
    out.mmax = std::max(a.mmax, b.mmax);
    out.coeff = [a, b, ma = m.map_a, mb = m.map_b, n](const Transmonomial& t) {
        Scalar acc(0);
        if (auto pa = project_k(t, ma, n)) acc += coeff_in(a, *pa);
        if (auto pb = project_k(t, mb, n)) acc += coeff_in(b, *pb);
        return acc;
    };
    return out;
}

Transseries ts_scale(const Scalar& c, const Transseries& a) {
    Transseries out = a;
    out.coeff = [c, f = a.coeff](const Transmonomial& t) { return c * f(t); };
    return out;
}

Transseries ts_neg(const Transseries& a) { return ts_scale(Scalar(-1), a); }

Transseries ts_mul(const Transseries& a, const Transseries& b) {
    Merge m = merge_gens(a.gens, b.gens);
    std::size_t n = m.gens.lambda.size();
    Transseries out;
    out.gens = m.gens;
    std::vector<long> ka = remap_k(a.kmin, m.map_a, n), kb = remap_k(b.kmin, m.map_b, n);
    out.kmin.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.kmin[i] = ka[i] + kb[i];
    out.lmin = a.lmin + b.lmin;
    out.mmax = a.mmax + b.mmax;
    out.coeff = [a, b, ma = m.map_a, mb = m.map_b, ka, kb, n](const Transmonomial& t) {
        // finite sum over factorizations t = t1 + t2 on the two grids
        Scalar acc(0);
        std::vector<long> lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = ka[i];
            hi[i] = t.k[i] - kb[i];
        }
        for_box(lo, hi, [&](const std::vector<long>& k1) {
            Transmonomial t1, t2;
            t1.k = k1;
            t2.k.resize(n);
            for (std::size_t i = 0; i < n; ++i) t2.k[i] = t.k[i] - k1[i];
            for (long l1 = a.lmin; l1 <= t.l - b.lmin; ++l1) {
                t1.l = l1;
                t2.l = t.l - l1;
                for (long m1 = std::max(0L, t.m - b.mmax); m1 <= std::min<long>(t.m, a.mmax);
                     ++m1) {
                    t1.m = m1;
                    t2.m = t.m - m1;
                    if (auto p1 = project_k(t1, ma, n))
                        if (auto p2 = project_k(t2, mb, n)) {
                            Scalar c1 = coeff_in(a, *p1);
                            if (c1.is_zero()) continue;
                            acc += c1 * coeff_in(b, *p2);
                        }
                }
            }
        });
        return acc;
    };
    return out;
}

// --- Enumeration ----------------------------------------------------------

namespace {

struct NodeCmp {
    const GeneratorSet* g;
    bool operator()(const Transmonomial& x, const Transmonomial& y) const {
        int c = monomial_cmp(*g, x, y);
        if (c != 0) return c > 0;  // larger magnitude first
        if (x.k != y.k) return x.k < y.k;
        if (x.l != y.l) return x.l < y.l;
        return x.m < y.m;
    }
};

}  // namespace

std::vector<std::pair<Transmonomial, Scalar>> ts_terms(const Transseries& a, std::size_t n,
                                                       std::size_t budget) {
    std::vector<std::pair<Transmonomial, Scalar>> out;
    if (n == 0) return out;
    std::set<Transmonomial, NodeCmp> frontier(NodeCmp{&a.gens});
    for (long m = 0; m <= a.mmax; ++m) {
        Transmonomial seed;
        seed.k = a.kmin;
        seed.l = a.lmin;
        seed.m = m;
        frontier.insert(seed);
    }
    std::set<Transmonomial, NodeCmp> seen(NodeCmp{&a.gens});
    // `seen` uses the same comparator, whose tie-break makes it exact identity
    std::size_t used = 0;
    while (!frontier.empty() && used < budget) {
        Transmonomial top = *frontier.begin();
        Scalar acc(0);
        // pop the whole magnitude-equivalence class of the top node
        while (!frontier.empty() && monomial_cmp(a.gens, *frontier.begin(), top) == 0) {
            Transmonomial t = *frontier.begin();
            frontier.erase(frontier.begin());
            if (!seen.insert(t).second) continue;
            ++used;
            acc += coeff_in(a, t);
            for (std::size_t i = 0; i < t.k.size(); ++i) {
                Transmonomial s = t;
                ++s.k[i];
                if (!seen.count(s)) frontier.insert(s);
            }
            Transmonomial s = t;
            ++s.l;
            if (!seen.count(s)) frontier.insert(s);
        }
        if (!acc.is_zero()) {
            out.emplace_back(top, std::move(acc));
            if (out.size() == n) return out;
        }
    }
    return out;
}

std::optional<std::pair<Transmonomial, Scalar>> ts_dominant(const Transseries& a,
                                                            std::size_t budget) {
    auto v = ts_terms(a, 1, budget);
    if (v.empty()) return std::nullopt;
    return v[0];
}

int ts_cmp(const Transseries& a, const Transseries& b) {
    auto d = ts_dominant(ts_add(a, ts_neg(b)));
    return d ? d->second.sign() : 0;
}

// --- Calculus ---------------------------------------------------------

Transseries ts_diff(const Transseries& a) {
    Transseries out;
    out.gens = a.gens;
    out.kmin = a.kmin;
    out.lmin = a.lmin;
    out.mmax = a.mmax;
    out.coeff = [a](const Transmonomial& t) {
        Scalar acc(0);
        // -w from the exponential factor
        Rational w = weight_of(a.gens, t.k);
        if (w != 0) acc += Scalar(-w) * coeff_in(a, t);
        if (t.l - 1 >= a.lmin) {
            Transmonomial s = t;
            s.l = t.l - 1;
            // power rule: exponent of the source term is beta.k - (l-1)
            acc += Scalar(power_of(a.gens, s)) * coeff_in(a, s);
            if (t.m + 1 <= a.mmax) {
                ++s.m;
                acc += Scalar(Rational(t.m + 1)) * coeff_in(a, s);
            }
        }
        return acc;
    };
    return out;
}

namespace {

Rational falling(const Rational& q, long j) {
    Rational f = 1;
    for (long t = 0; t < j; ++t) f *= q - t;
    return f;
}

}  // namespace

Transseries ts_integrate(const Transseries& a) {
    if (a.mmax > 0)
        throw UnsupportedFragment("ts_integrate: log-power inputs are not supported");
    Transseries out;
    out.gens = a.gens;
    out.kmin = a.kmin;
    out.lmin = a.lmin - 1;
    out.mmax = 1;
    out.coeff = [a](const Transmonomial& t) {
        Rational w = weight_of(a.gens, t.k);
        if (w == 0) {
            // pure-power column: x^{q} -> x^{q+1}/(q+1), x^{-1} -> ln x
            Rational p = power_of(a.gens, {t.k, t.l, 0});
            if (t.m == 1) {
                // ln x appears exactly where the source power was -1, i.e.
                // at the output power 0
                if (p != 0) return Scalar(0);
                Transmonomial s;
                s.k = t.k;
                s.m = 0;
                // source l with beta.k - l = -1
                Rational lsrc = power_of(a.gens, {t.k, 0, 0}) + 1;
                if (denominator(lsrc) != 1) return Scalar(0);
                s.l = numerator(lsrc).convert_to<long>();
                return coeff_in(a, s);
            }
            if (t.m != 0 || p == 0) return Scalar(0);
            Transmonomial s = t;
            s.l = t.l + 1;
            return coeff_in(a, s) * Scalar(1 / p);
        }
        if (t.m != 0) return Scalar(0);
        // by-parts series: int x^q e^{-wx} = -e^{-wx} sum_j (q)_j x^{q-j} / w^{j+1}
        Scalar acc(0);
        for (long lsrc = a.lmin; lsrc <= t.l; ++lsrc) {
            Scalar c = coeff_in(a, {t.k, lsrc, 0});
            if (c.is_zero()) continue;
            long j = t.l - lsrc;
            Rational q = power_of(a.gens, {t.k, lsrc, 0});
            Rational wpow = 1;
            for (long i = 0; i <= j; ++i) wpow *= w;
            acc += c * Scalar(-falling(q, j) / wpow);
        }
        return acc;
    };
    return out;
}

// --- Inverse ------------------------------------------------------------

namespace {

/// Multiplies by the monomial x^{-delta-power} shift: coeff(t) = a(t + delta).
Transseries ts_shift(const Transseries& a, const Transmonomial& delta) {
    if (delta.m != 0) throw UnsupportedFragment("ts_shift: log-power shifts unsupported");
    Transseries out = a;
    for (std::size_t i = 0; i < out.kmin.size(); ++i) out.kmin[i] -= delta.k[i];
    out.lmin -= delta.l;
    out.coeff = [a, delta](const Transmonomial& t) {
        Transmonomial s = t;
        for (std::size_t i = 0; i < s.k.size(); ++i) s.k[i] += delta.k[i];
        s.l += delta.l;
        return coeff_in(a, s);
    };
    return out;
}

}  // namespace

Transseries ts_inverse(const Transseries& a, int order) {
    auto dom = ts_dominant(a);
    if (!dom) throw DomainError("ts_inverse: zero (or unresolvable) input");
    const auto& [d, c0] = *dom;
    if (d.m != 0) throw UnsupportedFragment("ts_inverse: log-power dominant term");
    // a = c0 x^d (1 + h), h infinitesimal: 1/a = (1/c0) x^{-d} sum (-h)^j
    Transseries h = ts_add(ts_scale(c0.inverse(), ts_shift(a, d)),
                           ts_monomial(a.gens, Transmonomial{std::vector<long>(a.gens.lambda.size(), 0), 0, 0},
                                       Scalar(-1)));
    Transseries sum = ts_monomial(a.gens,
                                  Transmonomial{std::vector<long>(a.gens.lambda.size(), 0), 0, 0},
                                  Scalar(1));
    Transseries hp = sum;  // h^0
    for (int j = 1; j <= order; ++j) {
        hp = ts_mul(hp, h);
        sum = ts_add(sum, ts_scale(Scalar(j % 2 ? Rational(-1) : Rational(1)), hp));
    }
    Transmonomial minus_d = d;
    for (auto& ki : minus_d.k) ki = -ki;
    minus_d.l = -d.l;
    return ts_scale(c0.inverse(), ts_shift(sum, minus_d));
}

// --- Convergence ---------------------------------------------------------

Resolved<Transseries> ts_converges(const std::vector<Transseries>& seq, long box) {
    if (seq.empty()) return NeedsMoreTerms{"empty sequence"};
    if (seq.size() == 1) return seq.back();
    const Transseries& u = seq[seq.size() - 2];
    const Transseries& v = seq.back();
    if (!(u.gens == v.gens)) throw DomainError("ts_converges: mismatched grids");
    std::vector<long> lo(v.kmin), hi(v.kmin);
    for (std::size_t i = 0; i < hi.size(); ++i) {
        lo[i] = std::min(u.kmin[i], v.kmin[i]);
        hi[i] = lo[i] + box;
    }
    long lmin = std::min(u.lmin, v.lmin);
    bool stable = true;
    for_box(lo, hi, [&](const std::vector<long>& k) {
        if (!stable) return;
        for (long l = lmin; l <= lmin + box && stable; ++l)
            for (long m = 0; m <= std::max(u.mmax, v.mmax) && stable; ++m) {
                Transmonomial t{k, l, m};
                if (!(coeff_in(u, t) == coeff_in(v, t))) stable = false;
            }
    });
    if (!stable) return NeedsMoreTerms{"coefficients still drifting on the inspection box"};
    return v;
}

// --- Evaluation at surreal arguments --------------------------------------

namespace {

Scalar scalar_rational_pow(const Scalar& s, const Rational& q) {
    if (denominator(q) == 1) return s.pow(numerator(q).convert_to<long>());
    if (s == Scalar(1)) return Scalar(1);
    // powers of two go through the constant registry exactly
    if (s.is_rational()) {
        Rational r = s.rational();
        if (numerator(r) == 1 && denominator(r) == 1) return Scalar(1);
        Integer num = numerator(r), den = denominator(r);
        auto log2_of = [](Integer v) -> std::optional<long> {
            long e = 0;
            while (v % 2 == 0) {
                v /= 2;
                ++e;
            }
            return v == 1 ? std::optional<long>(e) : std::nullopt;
        };
        if (num > 0) {
            auto en = log2_of(num), ed = log2_of(den);
            if (en && ed) return Scalar::constant(Constant::Two, q * (*en - *ed));
        }
    }
    throw UnsupportedFragment("fractional power of a non-dyadic-power coefficient");
}

Rational binom(const Rational& q, long j) {
    Rational b = 1;
    for (long t = 0; t < j; ++t) b *= (q - t) / (t + 1);
    return b;
}

}  // namespace

SurrealExpansion ts_eval_at(const Transseries& a, const SurrealNF& x0,
                            std::size_t max_groups) {
    if (!is_infinite(x0))
        throw DomainError("ts_eval_at requires an infinite surreal argument");
    if (a.mmax > 0)
        throw UnsupportedFragment("ts_eval_at: log monomials at surreal arguments");

    auto d = decompose(x0);
    const SurrealNF& y = x0.leading_exponent();
    Scalar rl = x0.leading_coeff();
    // x0 = rl * w^y * (1 + h) with h infinitesimal
    SurrealNF h = nf_sub(nf_mul(SurrealNF::monomial(nf_neg(y), rl.inverse()), x0),
                         SurrealNF(1));
    SurrealNF M0 = SurrealNF::monomial(nf_neg(y), rl.inverse());

    // enumerate exponential groups (k-vectors) in ascending weight
    struct KCmp {
        const GeneratorSet* g;
        bool operator()(const std::vector<long>& x, const std::vector<long>& y) const {
            Rational wx = weight_of(*g, x), wy = weight_of(*g, y);
            if (wx != wy) return wx < wy;
            return x < y;
        }
    };
    std::set<std::vector<long>, KCmp> frontier(KCmp{&a.gens});
    std::set<std::vector<long>, KCmp> seen(KCmp{&a.gens});
    frontier.insert(a.kmin);
    SurrealExpansion out;
    std::size_t inspected = 0;
    const std::size_t group_budget = max_groups * 64 + 64;
    while (!frontier.empty() && out.size() < max_groups && inspected < group_budget) {
        std::vector<long> k = *frontier.begin();
        frontier.erase(frontier.begin());
        if (!seen.insert(k).second) continue;
        ++inspected;
        for (std::size_t i = 0; i < k.size(); ++i) {
            std::vector<long> s = k;
            ++s[i];
            if (!seen.count(s)) frontier.insert(s);
        }
        // does this group carry any coefficient within a shallow window?
        bool nonzero = false;
        for (long l = a.lmin; l <= a.lmin + 64 && !nonzero; ++l)
            nonzero = !coeff_in(a, {k, l, 0}).is_zero();
        if (!nonzero) continue;

        Rational w = weight_of(a.gens, k);
        Rational p0 = power_of(a.gens, {k, a.lmin, 0});  // beta.k - lmin

        ExpansionGroup grp;
        grp.exp_arg = nf_scale(Scalar(-w), d.purely_infinite);
        grp.factor = (Scalar(-w) * d.real_part).exp();

        // sum_l c_l x0^{p0 - (l - lmin)} = x0^{p0} * sum_{l',j} c binom(-l',j) M0^{l'} h^j
        auto coeffs = [a, k, lmin = a.lmin](const std::vector<long>& idx) {
            long lp = idx[0], j = idx[1];
            Scalar c = coeff_in(a, {k, lmin + lp, 0});
            if (c.is_zero()) return c;
            return c * Scalar(binom(Rational(-lp), j));
        };
        TermStream inner = eval_multiseries_at_infinitesimals(coeffs, {M0, h});
        // prefactor x0^{p0} = rl^{p0} w^{p0 y} (1+h)^{p0}
        if (!h.is_zero() && p0 != 0) {
            TermStream bin = eval_series_at_infinitesimal(
                [p0](long j) { return Scalar(binom(p0, j)); }, h);
            inner = stream_mul(inner, bin);
        }
        if (!d.infinitesimal.is_zero() && w != 0) {
            TermStream expeps = eval_series_at_infinitesimal(
                [w](long j) {
                    Rational f = 1;
                    for (long t = 2; t <= j; ++t) f *= t;
                    Rational nw = -w, pw = 1;
                    for (long t = 0; t < j; ++t) pw *= nw;
                    return Scalar(pw / f);
                },
                d.infinitesimal);
            inner = stream_mul(inner, expeps);
        }
        grp.series = inner.scaled(nf_scale(Scalar(p0), y), scalar_rational_pow(rl, p0));
        out.push_back(std::move(grp));
    }
    return out;
}

}  // namespace surcal
