#pragma once

#include "surcal/special.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace surcal {

struct SyntaxError : std::runtime_error {
    SyntaxError(const std::string& msg, std::size_t column)
        : std::runtime_error(msg + " (column " + std::to_string(column + 1) + ")"),
          column(column) {}
    std::size_t column;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Number,     // rational literal
        Omega,      // w
        Var,        // named variable: x, or a sum binder
        Add, Sub, Mul, Div, Pow,  // args[0], args[1]
        Neg,        // args[0]
        Factorial,  // args[0]  (postfix !)
        Call,       // name(args...)
        Bracket,    // {left | right}: args = left list then right list
        Sum,        // sum(binder >= lower) body: args = {lower, body}
        Integrate,  // integrate(body, a, b): args = {body, a, b}
    };
    Kind kind;
    Rational number;
    std::string name;          // Call / Var name, Sum binder
    std::size_t left_count = 0;  // Bracket: how many of args are left options
    std::vector<ExprPtr> args;
    std::size_t pos = 0;
};

ExprPtr parse(const std::string& text);

/// Evaluation result: whichever representation the expression lands in.
using Value = std::variant<SurrealNF, TermStream, SurrealExpansion, Transseries, EiInterval>;

Value eval(const ExprPtr& e);

struct RenderOptions {
    std::size_t truncate = 8;
    int float_digits = 15;
};

/// Canonical text rendering with explicit +O(...) tail markers on truncation.
std::string render(const Value& v, const RenderOptions& opt = {});

}  // namespace surcal
