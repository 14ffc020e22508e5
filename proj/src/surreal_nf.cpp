#include "surcal/surreal_nf.hpp"

#include <algorithm>
#include <map>

namespace surcal {

Limits& limits() {
    static Limits l;
    return l;
}

namespace {

void check_depth(const SurrealNF& x) {
    if (x.depth() > limits().depth_cap)
        throw ResourceError("normal-form depth cap exceeded (" +
                            std::to_string(limits().depth_cap) + ")");
}

}  // namespace

SurrealNF SurrealNF::monomial(SurrealNF exponent, Scalar coeff) {
    SurrealNF x;
    if (!coeff.is_zero()) x.terms_.push_back({std::move(exponent), std::move(coeff)});
    check_depth(x);
    return x;
}

SurrealNF SurrealNF::omega() { return monomial(SurrealNF(1), Scalar(1)); }

SurrealNF SurrealNF::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return nf_cmp(a.exponent, b.exponent) > 0;
    });
    SurrealNF x;
    for (auto& t : terms) {
        if (!x.terms_.empty() && nf_cmp(x.terms_.back().exponent, t.exponent) == 0) {
            x.terms_.back().coeff += t.coeff;
            if (x.terms_.back().coeff.is_zero()) x.terms_.pop_back();
        } else if (!t.coeff.is_zero()) {
            x.terms_.push_back(std::move(t));
        }
    }
    check_depth(x);
    return x;
}

int SurrealNF::depth() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, 1 + t.exponent.depth());
    return d;
}

bool SurrealNF::is_real() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool SurrealNF::is_rational_constant() const {
    return is_real() && (terms_.empty() || terms_[0].coeff.is_rational());
}

Rational SurrealNF::rational_value() const {
    if (!is_rational_constant()) throw DomainError("normal form is not a rational constant");
    return terms_.empty() ? Rational(0) : terms_[0].coeff.rational();
}

const SurrealNF& SurrealNF::leading_exponent() const {
    if (is_zero()) throw DomainError("leading exponent of 0");
    return terms_[0].exponent;
}

const Scalar& SurrealNF::leading_coeff() const {
    if (is_zero()) throw DomainError("leading coefficient of 0");
    return terms_[0].coeff;
}

bool SurrealNF::operator==(const SurrealNF& o) const { return nf_cmp(*this, o) == 0; }

int nf_cmp(const SurrealNF& a, const SurrealNF& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (i == ta.size()) return -tb[j].coeff.sign();
        if (j == tb.size()) return ta[i].coeff.sign();
        int ec = nf_cmp(ta[i].exponent, tb[j].exponent);
        if (ec > 0) return ta[i].coeff.sign();
        if (ec < 0) return -tb[j].coeff.sign();
        int cc = ta[i].coeff.compare(tb[j].coeff);
        if (cc != 0) return cc;
        ++i, ++j;
    }
    return 0;
}

SurrealNF nf_add(const SurrealNF& a, const SurrealNF& b) {
    std::vector<SurrealNF::Term> out;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (i == ta.size()) {
            out.push_back(tb[j++]);
            continue;
        }
        if (j == tb.size()) {
            out.push_back(ta[i++]);
            continue;
        }
        int ec = nf_cmp(ta[i].exponent, tb[j].exponent);
        if (ec > 0) {
            out.push_back(ta[i++]);
        } else if (ec < 0) {
            out.push_back(tb[j++]);
        } else {
            Scalar c = ta[i].coeff + tb[j].coeff;
            if (!c.is_zero()) out.push_back({ta[i].exponent, std::move(c)});
            ++i, ++j;
        }
    }
    SurrealNF r = SurrealNF::from_terms(std::move(out));
    return r;
}

SurrealNF nf_neg(const SurrealNF& a) {
    std::vector<SurrealNF::Term> out = a.terms();
    for (auto& t : out) t.coeff = -t.coeff;
    return SurrealNF::from_terms(std::move(out));
}

SurrealNF nf_sub(const SurrealNF& a, const SurrealNF& b) { return nf_add(a, nf_neg(b)); }

SurrealNF nf_mul(const SurrealNF& a, const SurrealNF& b) {
    std::vector<SurrealNF::Term> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            out.push_back({nf_add(ta.exponent, tb.exponent), ta.coeff * tb.coeff});
    return SurrealNF::from_terms(std::move(out));
}

SurrealNF nf_scale(const Scalar& c, const SurrealNF& a) {
    std::vector<SurrealNF::Term> out = a.terms();
    for (auto& t : out) t.coeff = c * t.coeff;
    return SurrealNF::from_terms(std::move(out));
}

SurrealNF omega_pow(const SurrealNF& y) { return SurrealNF::monomial(y, Scalar(1)); }

Decomposition decompose(const SurrealNF& x) {
    Decomposition d;
    std::vector<SurrealNF::Term> inf, small;
    static const SurrealNF zero;
    for (const auto& t : x.terms()) {
        int c = nf_cmp(t.exponent, zero);
        if (c > 0)
            inf.push_back(t);
        else if (c == 0)
            d.real_part = t.coeff;
        else
            small.push_back(t);
    }
    d.purely_infinite = SurrealNF::from_terms(std::move(inf));
    d.infinitesimal = SurrealNF::from_terms(std::move(small));
    return d;
}

bool is_infinitesimal(const SurrealNF& x) {
    static const SurrealNF zero;
    return x.is_zero() || nf_cmp(x.leading_exponent(), zero) < 0;
}

bool is_infinite(const SurrealNF& x) {
    static const SurrealNF zero;
    return !x.is_zero() && nf_cmp(x.leading_exponent(), zero) > 0;
}

namespace {

// canonical syntax: 3*w^(1/2) + 2 - 7*w^-1, recursive exponents in parens
std::string exponent_str(const SurrealNF& e) {
    if (e.is_rational_constant()) {
        Rational q = e.rational_value();
        if (denominator(q) == 1) return numerator(q).str();
        return "(" + rational_str(q) + ")";
    }
    return "(" + nf_to_string(e) + ")";
}

std::string term_str(const SurrealNF& exponent, const Scalar& coeff) {
    static const SurrealNF zero;
    if (exponent.is_zero()) return coeff.str();
    std::string power =
        exponent == SurrealNF(1) ? std::string("w") : "w^" + exponent_str(exponent);
    if (coeff == Scalar(1)) return power;
    if (coeff == Scalar(-1)) return "-" + power;
    std::string c = coeff.str();
    if (c.find(' ') != std::string::npos) c = "(" + c + ")";
    return c + "*" + power;
}

}  // namespace

std::string nf_to_string(const SurrealNF& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& t : x.terms()) {
        std::string ts = term_str(t.exponent, t.coeff);
        if (s.empty()) {
            s = ts;
        } else if (!ts.empty() && ts[0] == '-') {
            s += " - " + ts.substr(1);
        } else {
            s += " + " + ts;
        }
    }
    return s;
}

}  // namespace surcal
