#include "surcal/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace surcal {

namespace {

const BigFloat kConstValues[] = {
    BigFloat(2),
    BigFloat("2.71828182845904523536028747135266249775724709369995957496697"),
    BigFloat("3.14159265358979323846264338327950288419716939937510582097494"),
    BigFloat("1.8378770664093454835606594728112352797227949472755668256343"),
    BigFloat("1.89511781635593675546652093433163426901706058173270759164623"),
};

const char* kConstNames[] = {"2", "e", "pi", "ln2pi", "Ei1"};

BigFloat pow_rational(const BigFloat& base, const Rational& q) {
    BigFloat e = BigFloat(numerator(q).str()) / BigFloat(denominator(q).str());
    return pow(base, e);
}

}  // namespace

const char* constant_name(Constant c) { return kConstNames[static_cast<int>(c)]; }
const BigFloat& constant_value(Constant c) { return kConstValues[static_cast<int>(c)]; }

std::pair<Rational, ConstMonomial> ConstMonomial::normalized(
    std::vector<std::pair<Constant, Rational>> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Rational factor = 1;
    ConstMonomial m;
    for (auto& [c, e] : raw) {
        if (!m.powers.empty() && m.powers.back().first == c) {
            m.powers.back().second += e;
        } else {
            m.powers.emplace_back(c, e);
        }
    }
    std::vector<std::pair<Constant, Rational>> kept;
    for (auto& [c, e] : m.powers) {
        if (e == 0) continue;
        if (c == Constant::Two) {
            // split integer part of the exponent into the rational factor
            Integer n = numerator(e) / denominator(e);
            if (e < 0 && n * denominator(e) != numerator(e)) --n;
            Rational frac = e - Rational(n);
            if (n > 0)
                factor *= Rational(Integer(1) << static_cast<unsigned>(n));
            else if (n < 0)
                factor /= Rational(Integer(1) << static_cast<unsigned>(-n));
            if (frac != 0) kept.emplace_back(c, frac);
        } else {
            kept.emplace_back(c, e);
        }
    }
    m.powers = std::move(kept);
    return {factor, m};
}

ConstMonomial ConstMonomial::operator*(const ConstMonomial& o) const {
    auto raw = powers;
    raw.insert(raw.end(), o.powers.begin(), o.powers.end());
    auto [f, m] = normalized(std::move(raw));
    if (f != 1)
        throw std::logic_error("ConstMonomial::operator* produced a rational factor");
    return m;
}

ConstMonomial ConstMonomial::inverse() const {
    ConstMonomial m = *this;
    for (auto& [c, e] : m.powers) e = -e;
    return m;
}

BigFloat ConstMonomial::value() const {
    BigFloat v = 1;
    for (const auto& [c, e] : powers) v *= pow_rational(constant_value(c), e);
    return v;
}

std::string ConstMonomial::str() const {
    std::string s;
    for (const auto& [c, e] : powers) {
        if (!s.empty()) s += "*";
        s += constant_name(c);
        if (e != 1) s += "^(" + rational_str(e) + ")";
    }
    return s;
}

Scalar::Scalar(Rational q) {
    ExactSum s;
    if (q != 0) s[ConstMonomial{}] = std::move(q);
    rep_ = std::move(s);
}

Scalar Scalar::constant(Constant c, Rational exponent) {
    auto [f, m] = ConstMonomial::normalized({{c, std::move(exponent)}});
    ExactSum s;
    s[m] = f;
    return from_sum(std::move(s));
}

Scalar Scalar::make_float(double value, double err) {
    if (err < 0) throw DomainError("float scalar requires a nonnegative error bound");
    Scalar s;
    s.rep_ = Float{value, err};
    return s;
}

Scalar Scalar::from_sum(ExactSum s) {
    for (auto it = s.begin(); it != s.end();) {
        if (it->second == 0)
            it = s.erase(it);
        else
            ++it;
    }
    Scalar r;
    r.rep_ = std::move(s);
    return r;
}

bool Scalar::is_zero() const {
    if (is_exact()) return exact_terms().empty();
    return float_rep().value == 0 && float_rep().err == 0;
}

bool Scalar::is_rational() const {
    if (!is_exact()) return false;
    const auto& t = exact_terms();
    return t.empty() || (t.size() == 1 && t.begin()->first.empty());
}

Rational Scalar::rational() const {
    if (!is_rational()) throw DomainError("scalar is not an exact rational: " + str());
    const auto& t = exact_terms();
    return t.empty() ? Rational(0) : t.begin()->second;
}

bool Scalar::is_single_monomial() const {
    return is_exact() && exact_terms().size() == 1;
}

Scalar Scalar::operator-() const {
    if (is_float()) return make_float(-float_rep().value, float_rep().err);
    ExactSum s = exact_terms();
    for (auto& [m, q] : s) q = -q;
    return from_sum(std::move(s));
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_exact() && o.is_exact()) {
        ExactSum s = exact_terms();
        for (const auto& [m, q] : o.exact_terms()) s[m] += q;
        return from_sum(std::move(s));
    }
    double a = to_double(), b = o.to_double();
    double err = error_bound() + o.error_bound() + std::abs(a + b) * 1e-16;
    return make_float(a + b, err);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_exact() && o.is_exact()) {
        ExactSum s;
        for (const auto& [m1, q1] : exact_terms())
            for (const auto& [m2, q2] : o.exact_terms()) {
                auto raw = m1.powers;
                raw.insert(raw.end(), m2.powers.begin(), m2.powers.end());
                auto [f, m] = ConstMonomial::normalized(std::move(raw));
                s[m] += f * q1 * q2;
            }
        return from_sum(std::move(s));
    }
    double a = to_double(), b = o.to_double();
    double ea = error_bound(), eb = o.error_bound();
    double err = std::abs(a) * eb + std::abs(b) * ea + ea * eb + std::abs(a * b) * 1e-16;
    return make_float(a * b, err);
}

Scalar Scalar::inverse() const {
    if (is_float()) {
        double v = float_rep().value, e = float_rep().err;
        if (std::abs(v) <= e) throw DomainError("division by a possibly-zero float scalar");
        double inv = 1.0 / v;
        return make_float(inv, e / (std::abs(v) * (std::abs(v) - e)) + std::abs(inv) * 1e-16);
    }
    if (is_zero()) throw DomainError("division by zero");
    if (!is_single_monomial())
        throw UnsupportedFragment("cannot invert a multi-term symbolic scalar: " + str());
    const auto& [m, q] = *exact_terms().begin();
    ExactSum s;
    s[m.inverse()] = 1 / q;
    return from_sum(std::move(s));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    Scalar r(1), b = *this;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

int Scalar::sign() const {
    if (is_float()) {
        const auto [v, e] = float_rep();
        if (v > e) return 1;
        if (v < -e) return -1;
        if (v == 0 && e == 0) return 0;
        throw DomainError("sign of float scalar undecidable within its error bound");
    }
    const auto& t = exact_terms();
    if (t.empty()) return 0;
    // every registry constant is a positive real, so monomial values are
    // positive and like-signed coefficients decide the sign outright
    bool pos = true, neg = true;
    for (const auto& [m, q] : t) {
        (q > 0 ? neg : pos) = false;
    }
    if (pos) return 1;
    if (neg) return -1;
    BigFloat v = to_bigfloat();
    // 50-digit evaluation with a generous slack for the constant tables
    BigFloat slack = BigFloat("1e-40") * static_cast<BigFloat>(t.size());
    for (const auto& [m, q] : t)
        slack += abs(m.value() * BigFloat(numerator(q).str()) / BigFloat(denominator(q).str())) *
                 BigFloat("1e-45");
    if (v > slack) return 1;
    if (v < -slack) return -1;
    throw DomainError("sign of symbolic scalar undecidable: " + str());
}

bool Scalar::operator==(const Scalar& o) const {
    if (is_exact() && o.is_exact()) return exact_terms() == o.exact_terms();
    if (is_float() && o.is_float())
        return float_rep().value == o.float_rep().value && float_rep().err == o.float_rep().err;
    return false;
}

Scalar Scalar::exp() const {
    if (is_float()) {
        double v = float_rep().value, e = float_rep().err;
        double x = std::exp(v);
        return make_float(x, x * (std::expm1(e) + 2e-16));
    }
    Rational q = 0, c = 0;
    for (const auto& [m, coeff] : exact_terms()) {
        if (m.empty()) {
            q = coeff;
        } else if (m.powers.size() == 1 && m.powers[0].first == Constant::Ln2Pi &&
                   m.powers[0].second == 1) {
            c = coeff;
        } else {
            throw UnsupportedFragment("exp of scalar not representable exactly: " + str());
        }
    }
    Scalar r = Scalar::constant(Constant::E, q);
    if (c != 0) r = r * Scalar::constant(Constant::Two, c) * Scalar::constant(Constant::Pi, c);
    return r;
}

Scalar Scalar::ln() const {
    if (is_float()) {
        double v = float_rep().value, e = float_rep().err;
        if (v <= e) throw DomainError("ln of a possibly-nonpositive float scalar");
        return make_float(std::log(v), e / (v - e) + 1e-16);
    }
    if (*this == Scalar(1)) return Scalar(0);
    if (!is_single_monomial())
        throw UnsupportedFragment("ln of multi-term scalar: " + str());
    const auto& [m, q] = *exact_terms().begin();
    // supported exactly: e^a and (2pi)^c = 2^c pi^c (and their products)
    Rational a = 0, two = 0, pi = 0;
    for (const auto& [c, e] : m.powers) {
        switch (c) {
            case Constant::E: a = e; break;
            case Constant::Two: two = e; break;
            case Constant::Pi: pi = e; break;
            default: throw UnsupportedFragment("ln of scalar not representable: " + str());
        }
    }
    Rational qcopy = q;
    // fold the coefficient into the power of two when it is a power of 2
    while (qcopy > 1 && numerator(qcopy) % 2 == 0) {
        qcopy /= 2;
        two += 1;
    }
    while (qcopy < 1 && qcopy > 0 && denominator(qcopy) % 2 == 0) {
        qcopy *= 2;
        two -= 1;
    }
    if (qcopy != 1 || two != pi)
        throw UnsupportedFragment("ln of scalar not representable: " + str());
    Scalar r(a);
    if (pi != 0) r += Scalar::constant(Constant::Ln2Pi, 1) * Scalar(pi);
    return r;
}

BigFloat Scalar::to_bigfloat() const {
    if (is_float()) return BigFloat(float_rep().value);
    BigFloat v = 0;
    for (const auto& [m, q] : exact_terms())
        v += m.value() * BigFloat(numerator(q).str()) / BigFloat(denominator(q).str());
    return v;
}

double Scalar::to_double() const {
    if (is_float()) return float_rep().value;
    return static_cast<double>(to_bigfloat());
}

double Scalar::error_bound() const {
    if (is_float()) return float_rep().err;
    return std::abs(to_double()) * 1e-15;
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << numerator(q).str();
    if (denominator(q) != 1) os << "/" << denominator(q).str();
    return os.str();
}

std::string Scalar::str() const {
    if (is_float()) {
        std::ostringstream os;
        os.precision(15);
        os << float_rep().value << "~" << float_rep().err;
        return os.str();
    }
    const auto& t = exact_terms();
    if (t.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, q] : t) {
        Rational aq = q < 0 ? -q : q;
        if (first) {
            if (q < 0) s += "-";
        } else {
            s += q < 0 ? " - " : " + ";
        }
        first = false;
        if (m.empty()) {
            s += rational_str(aq);
        } else if (aq == 1) {
            s += m.str();
        } else {
            s += rational_str(aq) + "*" + m.str();
        }
    }
    return s;
}

}  // namespace surcal
