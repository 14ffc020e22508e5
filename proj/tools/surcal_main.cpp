#include "surcal/expr.hpp"
#include "surcal/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

// exit codes: 0 ok, 2 syntax, 3 unsupported fragment, 4 needs more terms,
// 5 domain error, 6 resource cap
constexpr int kOk = 0;
constexpr int kSyntax = 2;
constexpr int kUnsupported = 3;
constexpr int kNeedsMoreTerms = 4;
constexpr int kDomain = 5;
constexpr int kResource = 6;

void apply_env_caps() {
    if (const char* d = std::getenv("SURCAL_DEPTH_CAP"))
        surcal::limits().depth_cap = std::atoi(d);
    if (const char* s = std::getenv("SURCAL_STREAM_CAP"))
        surcal::limits().stream_term_cap = std::atoi(s);
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const surcal::SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kSyntax;
    } catch (const surcal::UnsupportedFragment& e) {
        std::cerr << "unsupported fragment: " << e.what() << "\n";
        return kUnsupported;
    } catch (const surcal::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const surcal::ResourceError& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

void print_value(const surcal::Value& v, const std::string& format,
                 const surcal::RenderOptions& opt) {
    if (format == "json")
        std::cout << surcal::value_to_json(v, opt).dump(2) << "\n";
    else
        std::cout << surcal::render(v, opt) << "\n";
}

surcal::FormalPowerSeries parse_coeff_spec(const std::string& spec) {
    if (spec == "factorial") return surcal::ei_asymptotic();
    if (spec == "alternating-factorial") {
        surcal::FormalPowerSeries f = surcal::ei_asymptotic();
        auto base = f.coeff;
        f.coeff = [base](long k) {
            surcal::Scalar c = base(k);
            return k % 2 ? -c : c;
        };
        return f;
    }
    // comma-separated rationals, zero-padded beyond the list
    auto vals = std::make_shared<std::vector<surcal::Rational>>();
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string item = spec.substr(start, comma - start);
        std::size_t slash = item.find('/');
        if (slash == std::string::npos)
            vals->push_back(surcal::Rational(surcal::Integer(item)));
        else
            vals->push_back(surcal::Rational(surcal::Integer(item.substr(0, slash)),
                                             surcal::Integer(item.substr(slash + 1))));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    surcal::FormalPowerSeries f;
    f.plane = surcal::Plane::InverseX;
    f.coeff = [vals](long k) {
        if (k < 0 || k >= static_cast<long>(vals->size())) return surcal::Scalar(0);
        return surcal::Scalar((*vals)[k]);
    };
    return f;
}

int selftest() {
    using namespace surcal;
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };
    check("simplest bracket {0|1} = 1/2",
          simplest_dyadic_between(Rational(0), Rational(1)) == Rational(1, 2));
    check("ring identity (w+1)(w-1) = w^2-1",
          nf_mul(nf_add(SurrealNF::omega(), SurrealNF(1)),
                 nf_sub(SurrealNF::omega(), SurrealNF(1))) ==
              nf_sub(omega_pow(SurrealNF(2)), SurrealNF(1)));
    check("render integrate(exp(x),0,w) = exp(w) - 1",
          render(eval(parse("integrate(exp(x),0,w)"))) == "exp(w) - 1");
    {
        RenderOptions o;
        o.truncate = 3;
        check("ei(w) display",
              render(eval(parse("ei(w)")), o) ==
                  "exp(w)*(w^-1 + w^-2 + 2*w^-3) + O(w^-4*exp(w))");
    }
    {
        auto m = pade_continue(borel_transform(ei_asymptotic()), 4);
        auto q = pv_laplace(m, 10.0, 1e-11);
        double ref = std::exp(-10.0) * ei_double(10.0);
        check("Borel PV sum at x=10 vs Ei", std::abs(q.value - ref) < 1e-8 * std::abs(ref));
    }
    std::cout << (failures ? "selftest FAILED\n" : "selftest passed\n");
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_env_caps();
    CLI::App app{"surcal: exact surreal normal forms, transseries, and Borel summation"};
    app.require_subcommand(1);

    std::string expr_text, format = "text";
    std::size_t truncate = 8;
    double tol = 1e-10;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--truncate", truncate, "terms to print before the O(...) marker");
        cmd->add_option("--format", format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* cmd_eval = app.add_subcommand("eval", "evaluate an expression");
    cmd_eval->add_option("expr", expr_text, "expression, e.g. 'w^(1/2)+3'")->required();
    add_common(cmd_eval);

    std::vector<std::string> left_opts, right_opts;
    auto* cmd_bracket =
        app.add_subcommand("bracket", "resolve a {L|R} bracket of rational options");
    cmd_bracket->add_option("--left", left_opts, "left options");
    cmd_bracket->add_option("--right", right_opts, "right options");

    std::string ei_at = "w";
    bool ei_from_one = false;
    auto* cmd_ei = app.add_subcommand("ei", "genetic exponential integral");
    cmd_ei->add_option("--at", ei_at, "argument expression (surreal)");
    cmd_ei->add_flag("--from-one", ei_from_one, "Ei(1,x): subtract Ei(1)");
    add_common(cmd_ei);

    std::string coeffs = "factorial", method = "pade";
    std::vector<double> at_values;
    auto* cmd_borel = app.add_subcommand("borel", "numeric Borel summation");
    auto* cmd_sum = cmd_borel->add_subcommand("sum", "sum a divergent series");
    cmd_sum->add_option("--coeffs", coeffs,
                        "factorial | alternating-factorial | c0,c1,c2,...");
    cmd_sum->add_option("--at", at_values, "evaluation points")->required();
    cmd_sum->add_option("--method", method, "pade|least-term|pv")
        ->check(CLI::IsMember({"pade", "least-term", "pv"}));
    cmd_sum->add_option("--tol", tol, "quadrature tolerance");

    std::string special_name;
    auto* cmd_special = app.add_subcommand("special", "named expansions");
    cmd_special->add_option("name", special_name, "ei-at-omega|stirling|lngamma|sumln|erfi")
        ->required();
    add_common(cmd_special);

    auto* cmd_selftest = app.add_subcommand("selftest", "run built-in smoke checks");

    CLI11_PARSE(app, argc, argv);

    surcal::RenderOptions opt;
    opt.truncate = truncate;

    if (cmd_eval->parsed())
        return run_guarded([&] {
            print_value(surcal::eval(surcal::parse(expr_text)), format, opt);
            return kOk;
        });

    if (cmd_bracket->parsed())
        return run_guarded([&] {
            auto side = [](const std::vector<std::string>& opts, bool is_left)
                -> std::optional<surcal::Rational> {
                std::optional<surcal::Rational> best;
                for (const auto& o : opts) {
                    surcal::Value v = surcal::eval(surcal::parse(o));
                    const auto* nf = std::get_if<surcal::SurrealNF>(&v);
                    if (!nf || !(nf->is_zero() || nf->is_rational_constant()))
                        throw surcal::UnsupportedFragment("bracket options must be rational");
                    surcal::Rational r =
                        nf->is_zero() ? surcal::Rational(0) : nf->rational_value();
                    if (!best || (is_left ? r > *best : r < *best)) best = r;
                }
                return best;
            };
            std::cout << surcal::rational_str(surcal::simplest_dyadic_between(
                             side(left_opts, true), side(right_opts, false)))
                      << "\n";
            return kOk;
        });

    if (cmd_ei->parsed())
        return run_guarded([&] {
            std::string text = (ei_from_one ? "ei1(" : "ei(") + ei_at + ")";
            print_value(surcal::eval(surcal::parse(text)), format, opt);
            return kOk;
        });

    if (cmd_borel->parsed())
        return run_guarded([&] {
            surcal::FormalPowerSeries f = parse_coeff_spec(coeffs);
            std::cout << "x,value,error\n";
            for (double x : at_values) {
                double value = 0, error = 0;
                if (method == "least-term") {
                    auto r = surcal::least_term_sum(f, 1.0, x);
                    value = r.value;
                    // least-term truncation leaves O(x^{-1/2} e^{-x}) slack
                    error = 4 * std::exp(-x) / std::sqrt(x);
                } else {
                    auto m = surcal::pade_continue(surcal::borel_transform(f), 6);
                    auto q = (method == "pv" || !m.positive_real_poles().empty())
                                 ? surcal::pv_laplace(m, x, tol)
                                 : surcal::laplace_quadrature(m, x, tol);
                    value = q.value;
                    error = q.error;
                }
                std::cout << x << "," << value << "," << error << "\n";
            }
            return kOk;
        });

    if (cmd_special->parsed())
        return run_guarded([&] {
            surcal::Value v = [&]() -> surcal::Value {
                if (special_name == "ei-at-omega")
                    return surcal::eval(surcal::parse("ei(w)"));
                if (special_name == "stirling") return surcal::stirling_at_omega();
                if (special_name == "lngamma") return surcal::lngamma_at_omega();
                if (special_name == "sumln") return surcal::sum_ln_to_omega();
                if (special_name == "erfi") return surcal::erfi_transseries();
                throw surcal::DomainError("unknown expansion '" + special_name + "'");
            }();
            print_value(v, format, opt);
            return kOk;
        });

    if (cmd_selftest->parsed()) return run_guarded([&] { return selftest(); });
    return kOk;
}
