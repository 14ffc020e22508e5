#include "surcal/expr.hpp"

#include <cctype>
#include <map>

namespace surcal {

// --- Tokenizer / parser ----------------------------------------------------

namespace {

struct Token {
    enum Kind { Number, Ident, Symbol, End } kind;
    std::string text;
    Rational value;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            Integer whole = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                whole = whole * 10 + (s[i++] - '0');
            Rational v(whole);
            if (i < s.size() && s[i] == '.') {
                ++i;
                Integer num = 0, den = 1;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    num = num * 10 + (s[i++] - '0');
                    den *= 10;
                }
                v += Rational(num, den);
            }
            out.push_back({Token::Number, s.substr(start, i - start), v, start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            out.push_back({Token::Ident, s.substr(start, i - start), 0, start});
            continue;
        }
        if (c == '>' && i + 1 < s.size() && s[i + 1] == '=') {
            out.push_back({Token::Symbol, ">=", 0, i});
            i += 2;
            continue;
        }
        static const std::string singles = "+-*/^(){}|,!";
        if (singles.find(c) != std::string::npos) {
            out.push_back({Token::Symbol, std::string(1, c), 0, i});
            ++i;
            continue;
        }
        throw SyntaxError("unexpected character '" + std::string(1, c) + "'", i);
    }
    out.push_back({Token::End, "", 0, s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        expect_end();
        return e;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    Token next() { return toks_[i_++]; }
    bool accept(const std::string& sym) {
        if (peek().kind == Token::Symbol && peek().text == sym) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(const std::string& sym) {
        if (!accept(sym)) throw SyntaxError("expected '" + sym + "'", peek().pos);
    }
    void expect_end() {
        if (peek().kind != Token::End)
            throw SyntaxError("unexpected trailing input '" + peek().text + "'", peek().pos);
    }

    static ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            std::size_t pos = peek().pos;
            if (accept("+"))
                lhs = make({Expr::Kind::Add, 0, "", 0, {lhs, parse_term()}, pos});
            else if (accept("-"))
                lhs = make({Expr::Kind::Sub, 0, "", 0, {lhs, parse_term()}, pos});
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            std::size_t pos = peek().pos;
            if (accept("*"))
                lhs = make({Expr::Kind::Mul, 0, "", 0, {lhs, parse_unary()}, pos});
            else if (accept("/"))
                lhs = make({Expr::Kind::Div, 0, "", 0, {lhs, parse_unary()}, pos});
            else
                return lhs;
        }
    }

    ExprPtr parse_unary() {
        std::size_t pos = peek().pos;
        if (accept("-")) return make({Expr::Kind::Neg, 0, "", 0, {parse_unary()}, pos});
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_postfix();
        std::size_t pos = peek().pos;
        if (accept("^"))
            return make({Expr::Kind::Pow, 0, "", 0, {base, parse_unary()}, pos});
        return base;
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_atom();
        while (accept("!"))
            e = make({Expr::Kind::Factorial, 0, "", 0, {e}, peek().pos});
        return e;
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::Number) {
            Token tok = next();
            return make({Expr::Kind::Number, tok.value, "", 0, {}, tok.pos});
        }
        if (t.kind == Token::Ident) {
            Token tok = next();
            if (tok.text == "w") return make({Expr::Kind::Omega, 0, "", 0, {}, tok.pos});
            if (tok.text == "sum" && peek().kind == Token::Symbol && peek().text == "(")
                return parse_sum(tok.pos);
            if (accept("(")) {
                std::vector<ExprPtr> args;
                if (!accept(")")) {
                    args.push_back(parse_expr());
                    while (accept(",")) args.push_back(parse_expr());
                    expect(")");
                }
                if (tok.text == "integrate") {
                    if (args.size() != 3)
                        throw SyntaxError("integrate takes (expr, lower, upper)", tok.pos);
                    return make({Expr::Kind::Integrate, 0, "", 0, std::move(args), tok.pos});
                }
                return make({Expr::Kind::Call, 0, tok.text, 0, std::move(args), tok.pos});
            }
            return make({Expr::Kind::Var, 0, tok.text, 0, {}, tok.pos});
        }
        if (accept("(")) {
            ExprPtr e = parse_expr();
            expect(")");
            return e;
        }
        if (accept("{")) {
            std::vector<ExprPtr> opts;
            std::size_t left_count = 0;
            if (!(peek().kind == Token::Symbol && peek().text == "|")) {
                opts.push_back(parse_expr());
                while (accept(",")) opts.push_back(parse_expr());
            }
            left_count = opts.size();
            expect("|");
            if (!(peek().kind == Token::Symbol && peek().text == "}")) {
                opts.push_back(parse_expr());
                while (accept(",")) opts.push_back(parse_expr());
            }
            expect("}");
            Expr e{Expr::Kind::Bracket, 0, "", left_count, std::move(opts), t.pos};
            return make(std::move(e));
        }
        throw SyntaxError("expected an expression", t.pos);
    }

    ExprPtr parse_sum(std::size_t pos) {
        expect("(");
        if (peek().kind != Token::Ident) throw SyntaxError("expected sum binder", peek().pos);
        std::string binder = next().text;
        expect(">=");
        ExprPtr lower = parse_expr();
        expect(")");
        ExprPtr body = parse_term();
        Expr e{Expr::Kind::Sum, 0, binder, 0, {lower, body}, pos};
        return make(std::move(e));
    }
};

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(tokenize(text)).run(); }

// --- Evaluation ------------------------------------------------------------

namespace {

using Env = std::map<std::string, Rational>;

Value eval_impl(const ExprPtr& e, Env& env);

Rational as_rational(const Value& v, const char* what) {
    if (const auto* nf = std::get_if<SurrealNF>(&v))
        if (nf->is_zero() || nf->is_rational_constant())
            return nf->is_zero() ? Rational(0) : nf->rational_value();
    throw UnsupportedFragment(std::string(what) + " must be a rational constant");
}

TermStream as_stream(const Value& v) {
    if (const auto* nf = std::get_if<SurrealNF>(&v)) return TermStream::from_nf(*nf);
    if (const auto* st = std::get_if<TermStream>(&v)) return *st;
    throw UnsupportedFragment("expected a surreal-valued operand");
}

SurrealExpansion as_expansion(const Value& v) {
    if (const auto* g = std::get_if<SurrealExpansion>(&v)) return *g;
    SurrealExpansion out;
    out.push_back({SurrealNF(), Scalar(1), as_stream(v)});
    return out;
}

Transseries ts_variable() {
    return ts_monomial(GeneratorSet{}, Transmonomial{{}, -1, 0}, Scalar(1));
}

Transseries ts_const(const Scalar& c) {
    return ts_monomial(GeneratorSet{}, Transmonomial{{}, 0, 0}, c);
}

Value val_neg(const Value& v) {
    if (const auto* nf = std::get_if<SurrealNF>(&v)) return nf_neg(*nf);
    if (const auto* st = std::get_if<TermStream>(&v))
        return st->scaled(SurrealNF(), Scalar(-1));
    if (const auto* ts = std::get_if<Transseries>(&v)) return ts_neg(*ts);
    if (const auto* ex = std::get_if<SurrealExpansion>(&v)) {
        SurrealExpansion out = *ex;
        for (auto& g : out) g.factor = -g.factor;
        return out;
    }
    throw UnsupportedFragment("cannot negate this value");
}

Value val_add(const Value& a, const Value& b) {
    if (std::holds_alternative<SurrealNF>(a) && std::holds_alternative<SurrealNF>(b))
        return nf_add(std::get<SurrealNF>(a), std::get<SurrealNF>(b));
    if (std::holds_alternative<Transseries>(a) || std::holds_alternative<Transseries>(b)) {
        auto lift = [](const Value& v) -> Transseries {
            if (const auto* ts = std::get_if<Transseries>(&v)) return *ts;
            return ts_const(Scalar(as_rational(v, "transseries summand")));
        };
        return ts_add(lift(a), lift(b));
    }
    if (std::holds_alternative<SurrealExpansion>(a) ||
        std::holds_alternative<SurrealExpansion>(b)) {
        SurrealExpansion out = as_expansion(a);
        for (auto& g : as_expansion(b)) out.push_back(g);
        return out;
    }
    return stream_add(as_stream(a), as_stream(b));
}

Value val_mul(const Value& a, const Value& b) {
    if (std::holds_alternative<SurrealNF>(a) && std::holds_alternative<SurrealNF>(b))
        return nf_mul(std::get<SurrealNF>(a), std::get<SurrealNF>(b));
    if (std::holds_alternative<Transseries>(a) && std::holds_alternative<Transseries>(b))
        return ts_mul(std::get<Transseries>(a), std::get<Transseries>(b));
    if (std::holds_alternative<Transseries>(a) || std::holds_alternative<Transseries>(b)) {
        const Value& t = std::holds_alternative<Transseries>(a) ? a : b;
        const Value& s = std::holds_alternative<Transseries>(a) ? b : a;
        return ts_scale(Scalar(as_rational(s, "transseries factor")),
                        std::get<Transseries>(t));
    }
    if (std::holds_alternative<SurrealExpansion>(a) ||
        std::holds_alternative<SurrealExpansion>(b)) {
        const Value& ev = std::holds_alternative<SurrealExpansion>(a) ? a : b;
        const Value& sv = std::holds_alternative<SurrealExpansion>(a) ? b : a;
        TermStream s = as_stream(sv);
        SurrealExpansion out = std::get<SurrealExpansion>(ev);
        for (auto& g : out) g.series = stream_mul(g.series, s);
        return out;
    }
    return stream_mul(as_stream(a), as_stream(b));
}

Value val_div(const Value& a, const Value& b) {
    if (std::holds_alternative<Transseries>(a) || std::holds_alternative<Transseries>(b)) {
        auto lift = [](const Value& v) -> Transseries {
            if (const auto* ts = std::get_if<Transseries>(&v)) return *ts;
            return ts_const(Scalar(as_rational(v, "transseries operand")));
        };
        return ts_mul(lift(a), ts_inverse(lift(b), 8));
    }
    if (const auto* nfb = std::get_if<SurrealNF>(&b)) {
        if (nfb->is_zero()) throw DomainError("division by zero");
        if (nfb->terms().size() == 1) {
            SurrealNF inv = SurrealNF::monomial(nf_neg(nfb->leading_exponent()),
                                                nfb->leading_coeff().inverse());
            if (const auto* nfa = std::get_if<SurrealNF>(&a)) return nf_mul(*nfa, inv);
            return as_stream(a).scaled(inv.leading_exponent(), inv.leading_coeff());
        }
        return stream_mul(as_stream(a), nf_inverse(*nfb));
    }
    throw UnsupportedFragment("unsupported division");
}

Value nf_pow(const SurrealNF& base, const Rational& q) {
    if (denominator(q) != 1) {
        if (base.terms().size() == 1)
            throw UnsupportedFragment(
                "fractional powers: write the monomial as w^(exponent) directly");
        throw UnsupportedFragment("fractional power of a sum");
    }
    long n = numerator(q).convert_to<long>();
    if (n >= 0) {
        SurrealNF acc(1), b = base;
        long m = n;
        while (m > 0) {
            if (m & 1) acc = nf_mul(acc, b);
            m >>= 1;
            if (m) b = nf_mul(b, b);
        }
        return acc;
    }
    if (base.terms().size() == 1) {
        SurrealNF inv = SurrealNF::monomial(nf_neg(base.leading_exponent()),
                                            base.leading_coeff().inverse());
        return nf_pow(inv, -q);
    }
    TermStream inv = nf_inverse(base);
    TermStream acc = inv;
    for (long i = 1; i < -n; ++i) acc = stream_mul(acc, inv);
    return acc;
}

bool mono_weight_is_zero(const Transseries& ts, const Transmonomial& t) {
    for (std::size_t i = 0; i < t.k.size(); ++i)
        if (t.k[i] != 0 && ts.gens.lambda[i] != 0) return false;
    return true;
}

Value eval_exp(const Value& v) {
    if (const auto* ts = std::get_if<Transseries>(&v)) {
        auto terms = ts_terms(*ts, 2);
        if (terms.size() == 1 && terms[0].first.l == -1 && terms[0].first.m == 0 &&
            mono_weight_is_zero(*ts, terms[0].first)) {
            Rational c = terms[0].second.rational();
            Rational lam = c > 0 ? c : -c;
            long s = c > 0 ? -1 : 1;
            GeneratorSet g;
            g.lambda = {lam};
            g.beta = {1};
            return ts_monomial(g, Transmonomial{{s}, s, 0}, Scalar(1));
        }
        throw UnsupportedFragment("exp of a transseries beyond a linear term");
    }
    const auto* nf = std::get_if<SurrealNF>(&v);
    if (!nf) throw UnsupportedFragment("exp of this value");
    NfExp fe = exp_nf(*nf);
    if (fe.exp_arg.is_zero())
        return fe.series.scaled(SurrealNF(), fe.real_factor);
    SurrealExpansion out;
    out.push_back({fe.exp_arg, fe.real_factor, fe.series});
    return out;
}

Value eval_ei(const Value& arg, bool from_one) {
    const auto* nf = std::get_if<SurrealNF>(&arg);
    if (!nf) throw UnsupportedFragment("ei expects a surreal argument");
    Scalar C(Rational(71, 20));
    EiResult r = from_one ? genetic_ei_from_one(*nf, C) : genetic_ei(*nf, C);
    if (const auto* iv = std::get_if<EiInterval>(&r)) return *iv;
    const auto& inf = std::get<EiAtInfinity>(r);
    SurrealExpansion out;
    out.push_back({inf.exp_arg, inf.factor, inf.series});
    if (!inf.constant_shift.is_zero())
        out.push_back({SurrealNF(), Scalar(1),
                       TermStream::from_nf(SurrealNF(inf.constant_shift))});
    return out;
}

/// Evaluates a finitely supported transseries at a nonnegative rational point.
Scalar ts_eval_finite(const Transseries& ts, const Rational& t0) {
    constexpr std::size_t kMax = 256;
    auto terms = ts_terms(ts, kMax);
    if (terms.size() == kMax)
        throw UnsupportedFragment("endpoint evaluation needs a finitely supported series");
    Scalar acc(0);
    for (const auto& [mono, c] : terms) {
        Rational w = 0, p = Rational(-mono.l);
        for (std::size_t i = 0; i < mono.k.size(); ++i) {
            w += ts.gens.lambda[i] * mono.k[i];
            p += ts.gens.beta[i] * mono.k[i];
        }
        if (t0 == 0) {
            if (p > 0) continue;  // x^positive vanishes at 0
            if (p < 0 || mono.m > 0)
                throw DomainError("integrand singular at the finite endpoint 0");
            acc += c;  // e^0 = 1
            continue;
        }
        if (mono.m > 0) throw UnsupportedFragment("log terms at finite endpoints");
        if (denominator(p) != 1)
            throw UnsupportedFragment("fractional powers at finite endpoints");
        long pi = numerator(p).convert_to<long>();
        Rational powv = 1;
        Rational base = pi >= 0 ? t0 : 1 / t0;
        for (long i = 0; i < std::abs(pi); ++i) powv *= base;
        acc += c * Scalar(powv) * Scalar(-w * t0).exp();
    }
    return acc;
}

Value eval_integrate(const ExprPtr& e, Env& env) {
    Value body = eval_impl(e->args[0], env);
    const auto* ts = std::get_if<Transseries>(&body);
    if (!ts) throw UnsupportedFragment("integrate expects a transseries integrand in x");
    Transseries F = ts_integrate(*ts);
    auto endpoint = [&](const ExprPtr& ep, bool negate) -> SurrealExpansion {
        Value v = eval_impl(ep, env);
        const auto* nf = std::get_if<SurrealNF>(&v);
        if (!nf) throw UnsupportedFragment("integration endpoints must be surreal");
        SurrealExpansion out;
        if (is_infinite(*nf)) {
            out = ts_eval_at(F, *nf);
        } else {
            Rational t0 = nf->is_zero() ? Rational(0) : nf->rational_value();
            Scalar val = ts_eval_finite(F, t0);
            if (!val.is_zero())
                out.push_back({SurrealNF(), Scalar(1), TermStream::from_nf(SurrealNF(val))});
        }
        if (negate)
            for (auto& g : out) g.factor = -g.factor;
        return out;
    };
    SurrealExpansion hi = endpoint(e->args[2], false);
    for (auto& g : endpoint(e->args[1], true)) hi.push_back(g);
    return hi;
}

Value eval_impl(const ExprPtr& e, Env& env) {
    switch (e->kind) {
        case Expr::Kind::Number:
            return SurrealNF(e->number);
        case Expr::Kind::Omega:
            return SurrealNF::omega();
        case Expr::Kind::Var: {
            auto it = env.find(e->name);
            if (it != env.end()) return SurrealNF(it->second);
            if (e->name == "x") return ts_variable();
            throw SyntaxError("unknown name '" + e->name + "'", e->pos);
        }
        case Expr::Kind::Add:
            return val_add(eval_impl(e->args[0], env), eval_impl(e->args[1], env));
        case Expr::Kind::Sub:
            return val_add(eval_impl(e->args[0], env),
                           val_neg(eval_impl(e->args[1], env)));
        case Expr::Kind::Mul:
            return val_mul(eval_impl(e->args[0], env), eval_impl(e->args[1], env));
        case Expr::Kind::Div:
            return val_div(eval_impl(e->args[0], env), eval_impl(e->args[1], env));
        case Expr::Kind::Neg:
            return val_neg(eval_impl(e->args[0], env));
        case Expr::Kind::Factorial: {
            Rational n = as_rational(eval_impl(e->args[0], env), "factorial argument");
            if (denominator(n) != 1 || n < 0)
                throw DomainError("factorial needs a nonnegative integer");
            Rational f = 1;
            for (long i = 2; i <= numerator(n).convert_to<long>(); ++i) f *= i;
            return SurrealNF(f);
        }
        case Expr::Kind::Pow: {
            if (e->args[0]->kind == Expr::Kind::Omega) {
                Value ev = eval_impl(e->args[1], env);
                const auto* nf = std::get_if<SurrealNF>(&ev);
                if (!nf) throw UnsupportedFragment("omega exponent must be surreal");
                return omega_pow(*nf);
            }
            Value base = eval_impl(e->args[0], env);
            Rational q = as_rational(eval_impl(e->args[1], env), "exponent");
            if (const auto* ts = std::get_if<Transseries>(&base)) {
                if (denominator(q) != 1)
                    throw UnsupportedFragment("fractional transseries powers");
                long n = numerator(q).convert_to<long>();
                Transseries b = n >= 0 ? *ts : ts_inverse(*ts, 8);
                long m = std::abs(n);
                Transseries acc = ts_const(Scalar(1));
                for (long i = 0; i < m; ++i) acc = ts_mul(acc, b);
                return acc;
            }
            const auto* nf = std::get_if<SurrealNF>(&base);
            if (!nf) throw UnsupportedFragment("unsupported power base");
            return nf_pow(*nf, q);
        }
        case Expr::Kind::Call: {
            const std::string& n = e->name;
            auto arity = [&](std::size_t k) {
                if (e->args.size() != k)
                    throw SyntaxError(n + " takes " + std::to_string(k) + " argument(s)",
                                      e->pos);
            };
            if (n == "exp") {
                arity(1);
                return eval_exp(eval_impl(e->args[0], env));
            }
            if (n == "ln") {
                arity(1);
                Value v = eval_impl(e->args[0], env);
                const auto* nf = std::get_if<SurrealNF>(&v);
                if (!nf) throw UnsupportedFragment("ln expects a surreal argument");
                return ln_nf(*nf);
            }
            if (n == "ei") {
                arity(1);
                return eval_ei(eval_impl(e->args[0], env), false);
            }
            if (n == "ei1") {
                arity(1);
                return eval_ei(eval_impl(e->args[0], env), true);
            }
            if (n == "stirling") {
                arity(0);
                return stirling_at_omega();
            }
            if (n == "lngamma") {
                arity(0);
                return lngamma_at_omega();
            }
            if (n == "sumln") {
                arity(0);
                return sum_ln_to_omega();
            }
            if (n == "erfi") {
                arity(0);
                return erfi_transseries();
            }
            throw SyntaxError("unknown function '" + n + "'", e->pos);
        }
        case Expr::Kind::Bracket: {
            std::optional<Rational> lo, hi;
            for (std::size_t i = 0; i < e->args.size(); ++i) {
                Rational v = as_rational(eval_impl(e->args[i], env), "bracket option");
                if (i < e->left_count) {
                    if (!lo || v > *lo) lo = v;
                } else {
                    if (!hi || v < *hi) hi = v;
                }
            }
            return SurrealNF(simplest_dyadic_between(lo, hi));
        }
        case Expr::Kind::Sum: {
            Rational lower = as_rational(eval_impl(e->args[0], env), "sum lower bound");
            if (denominator(lower) != 1) throw DomainError("sum bound must be an integer");
            long a = numerator(lower).convert_to<long>();
            constexpr long kWindow = 128;
            Transseries acc = ts_zero(GeneratorSet{});
            for (long k = a; k < a + kWindow; ++k) {
                env[e->name] = Rational(k);
                Value v = eval_impl(e->args[1], env);
                const auto* ts = std::get_if<Transseries>(&v);
                if (ts)
                    acc = ts_add(acc, *ts);
                else
                    acc = ts_add(acc, ts_const(Scalar(as_rational(v, "sum term"))));
            }
            env.erase(e->name);
            return acc;
        }
        case Expr::Kind::Integrate:
            return eval_integrate(e, env);
    }
    throw std::logic_error("unhandled expression node");
}

}  // namespace

Value eval(const ExprPtr& e) {
    Env env;
    return eval_impl(e, env);
}

// --- Rendering --------------------------------------------------------------

namespace {

std::string join_signed(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (out.empty())
            out = p;
        else if (!p.empty() && p[0] == '-')
            out += " - " + p.substr(1);
        else
            out += " + " + p;
    }
    return out.empty() ? "0" : out;
}

std::string stream_term_str(const StreamTerm& t) {
    return nf_to_string(SurrealNF::monomial(t.exponent, t.coeff));
}

std::string exp_factor_str(const SurrealNF& arg) {
    return "exp(" + nf_to_string(arg) + ")";
}

std::string stream_body(const TermStream& s, const RenderOptions& opt) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < opt.truncate; ++i) {
        auto t = s.term(i);
        if (!t) break;
        parts.push_back(stream_term_str(*t));
    }
    return join_signed(parts);
}

std::string stream_tail(const TermStream& s, const RenderOptions& opt,
                        const std::string& exp_suffix) {
    auto nxt = s.term(opt.truncate);
    if (!nxt) return "";
    std::string mono = nf_to_string(SurrealNF::monomial(nxt->exponent, Scalar(1)));
    return " + O(" + mono + exp_suffix + ")";
}

std::string render_stream(const TermStream& s, const RenderOptions& opt,
                          const std::string& exp_suffix) {
    return stream_body(s, opt) + stream_tail(s, opt, exp_suffix);
}

std::string render_group(const ExpansionGroup& g, const RenderOptions& opt) {
    if (g.exp_arg.is_zero() && g.factor == Scalar(1))
        return render_stream(g.series, opt, "");
    std::string prefix;
    if (!(g.factor == Scalar(1))) {
        std::string f = g.factor.str();
        if (f.find(' ') != std::string::npos) f = "(" + f + ")";
        prefix = f + "*";
    }
    if (!g.exp_arg.is_zero()) prefix += exp_factor_str(g.exp_arg) + "*";
    std::string tail_suffix =
        g.exp_arg.is_zero() ? "" : "*" + exp_factor_str(g.exp_arg);

    // single plain term needs no parentheses
    bool single = g.series.ends_within(1);
    std::string body = stream_body(g.series, opt);
    std::string tail = stream_tail(g.series, opt, tail_suffix);
    if (single) {
        auto t0 = g.series.term(0);
        if (!t0) return prefix.empty() ? "0" : "0";
        if (t0->exponent.is_zero() && t0->coeff == Scalar(1) && !prefix.empty())
            return prefix.substr(0, prefix.size() - 1);  // drop trailing '*'
        if (body.find(' ') == std::string::npos && body[0] != '-') return prefix + body;
    }
    return prefix + "(" + body + ")" + tail;
}

std::string ts_mono_str(const GeneratorSet& g, const Transmonomial& t, const Scalar& c) {
    Rational w = 0, p = Rational(-t.l);
    for (std::size_t i = 0; i < t.k.size(); ++i) {
        w += g.lambda[i] * t.k[i];
        p += g.beta[i] * t.k[i];
    }
    std::vector<std::string> factors;
    if (p != 0) {
        std::string ps;
        if (denominator(p) == 1)
            ps = numerator(p).str();
        else
            ps = "(" + rational_str(p) + ")";
        factors.push_back(p == 1 ? "x" : "x^" + ps);
    }
    if (w != 0) {
        Rational a = -w;
        std::string as;
        if (a == 1)
            as = "x";
        else if (a == -1)
            as = "-x";
        else if (denominator(a) == 1)
            as = numerator(a).str() + "*x";
        else
            as = "(" + rational_str(a) + ")*x";
        factors.push_back("exp(" + as + ")");
    }
    if (t.m > 0) factors.push_back(t.m == 1 ? "ln(x)" : "ln(x)^" + std::to_string(t.m));
    std::string mono;
    for (const auto& f : factors) mono += (mono.empty() ? "" : "*") + f;
    if (mono.empty()) return c.str();
    if (c == Scalar(1)) return mono;
    if (c == Scalar(-1)) return "-" + mono;
    std::string cs = c.str();
    if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
    return cs + "*" + mono;
}

std::string render_ts(const Transseries& ts, const RenderOptions& opt) {
    auto terms = ts_terms(ts, opt.truncate + 1);
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < terms.size() && i < opt.truncate; ++i)
        parts.push_back(ts_mono_str(ts.gens, terms[i].first, terms[i].second));
    std::string body = join_signed(parts);
    if (terms.size() > opt.truncate)
        body +=
            " + O(" + ts_mono_str(ts.gens, terms[opt.truncate].first, Scalar(1)) + ")";
    return body;
}

std::string float_str(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace

std::string render(const Value& v, const RenderOptions& opt) {
    if (const auto* nf = std::get_if<SurrealNF>(&v)) return nf_to_string(*nf);
    if (const auto* st = std::get_if<TermStream>(&v)) return render_stream(*st, opt, "");
    if (const auto* ts = std::get_if<Transseries>(&v)) return render_ts(*ts, opt);
    if (const auto* ex = std::get_if<SurrealExpansion>(&v)) {
        std::vector<std::string> parts;
        for (const auto& g : *ex) parts.push_back(render_group(g, opt));
        return join_signed(parts);
    }
    const auto& iv = std::get<EiInterval>(v);
    return "[" + float_str(iv.lo, opt.float_digits) + ", " +
           float_str(iv.hi, opt.float_digits) +
           "] (midpoint " + float_str(iv.midpoint, opt.float_digits) + ")";
}

}  // namespace surcal
