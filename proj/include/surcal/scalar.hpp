#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace surcal {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// Errors carrying a machine-readable category (mapped to CLI exit codes).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedFragment : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed registry of symbolic constants appearing in coefficient tables.
/// `Two` exists so that sqrt(2*pi) = 2^(1/2) * pi^(1/2) is representable;
/// integer powers of 2 are folded into the rational coefficient.
enum class Constant : int { Two = 0, E, Pi, Ln2Pi, Ei1 };

const char* constant_name(Constant c);
const BigFloat& constant_value(Constant c);

/// Product of registry constants with rational exponents, in canonical form
/// (sorted by constant, no zero exponents, no integer exponent on Two).
struct ConstMonomial {
    std::vector<std::pair<Constant, Rational>> powers;

    bool empty() const { return powers.empty(); }
    auto operator<=>(const ConstMonomial&) const = default;

    ConstMonomial operator*(const ConstMonomial& o) const;
    ConstMonomial inverse() const;
    BigFloat value() const;
    std::string str() const;

    /// Splits off any integer power of Two as a rational factor.
    static std::pair<Rational, ConstMonomial> normalized(
        std::vector<std::pair<Constant, Rational>> raw);
};

/// Exact-or-float scalar.
///
/// Exact mode is a finite rational linear combination of ConstMonomials
/// (closed under + - *; division only by single-monomial scalars).
/// Float mode carries a nonnegative absolute error bound.
class Scalar {
public:
    struct Float {
        double value = 0;
        double err = 0;
    };
    using ExactSum = std::map<ConstMonomial, Rational>;

    Scalar() : rep_(ExactSum{}) {}
    Scalar(int n) : Scalar(Rational(n)) {}
    Scalar(long long n) : Scalar(Rational(n)) {}
    Scalar(Rational q);
    static Scalar constant(Constant c, Rational exponent = 1);
    static Scalar make_float(double value, double err);

    bool is_exact() const { return std::holds_alternative<ExactSum>(rep_); }
    bool is_float() const { return !is_exact(); }
    bool is_zero() const;
    bool is_rational() const;
    Rational rational() const;  // throws unless exact and constant-free
    bool is_single_monomial() const;

    const ExactSum& exact_terms() const { return std::get<ExactSum>(rep_); }
    Float float_rep() const { return std::get<Float>(rep_); }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // o must be single-monomial or float
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const;
    Scalar pow(long n) const;

    /// Sign of the value: -1, 0 or +1. Exact when decidable from the
    /// representation; otherwise decided via interval evaluation, throwing
    /// DomainError if the interval straddles zero.
    int sign() const;
    int compare(const Scalar& o) const { return (*this - o).sign(); }
    bool operator==(const Scalar& o) const;

    /// e^(*this). Supported shapes: rational q -> e^q; q + c*ln(2pi) ->
    /// e^q * 2^c * pi^c. Anything else is a representation error.
    Scalar exp() const;
    /// ln(*this) for positive single monomials of the form e^a * (2pi)^c.
    Scalar ln() const;

    BigFloat to_bigfloat() const;  // exact mode only
    double to_double() const;
    double error_bound() const;

    std::string str() const;

private:
    static Scalar from_sum(ExactSum s);
    std::variant<ExactSum, Float> rep_;
};

inline Scalar operator*(const Rational& q, const Scalar& s) { return Scalar(q) * s; }

std::string rational_str(const Rational& q);

}  // namespace surcal
