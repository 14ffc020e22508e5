#include "surcal/special.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace surcal {

namespace {

Rational rational_factorial(long k) {
    Rational f = 1;
    for (long i = 2; i <= k; ++i) f *= i;
    return f;
}

Rational binom_rat(long n, long k) {
    Rational b = 1;
    for (long t = 0; t < k; ++t) b *= Rational(n - t) / (t + 1);
    return b;
}

}  // namespace

FormalPowerSeries ei_asymptotic() { return ei_series_for_least_term(); }

Rational bernoulli(long n) {
    if (n < 0) throw DomainError("bernoulli: negative index");
    static std::vector<Rational> cache{1};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<long>(cache.size()) <= n) {
        long m = static_cast<long>(cache.size());
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        Rational s = 0;
        for (long k = 0; k < m; ++k) s += binom_rat(m + 1, k) * cache[k];
        cache.push_back(-s / (m + 1));
    }
    return cache[n];
}

// --- Ei oracles ----------------------------------------------------------

QuadratureResult ei_oracle(double x) {
    if (x <= 0) throw DomainError("ei_oracle requires x > 0");
    double v_series = ei_double(x);
    // independent principal-value Laplace route:
    // Ei(x) = e^x PV int_0^inf e^{-xp}/(1-p) dp; the PV over [0,2] folds the
    // pole symmetrically, the rest is a plain decaying integral
    auto folded = [x](double t) {
        if (t < 1e-12) return 2 * x * std::exp(-x);
        return (std::exp(-x * (1 - t)) - std::exp(-x * (1 + t))) / t;
    };
    QuadratureResult near = integrate_adaptive(folded, 0, 1, 1e-12);
    auto far = [x](double p) { return std::exp(-x * p) / (1 - p); };
    double P = 2 + 60.0 / x;
    QuadratureResult rest = integrate_adaptive(far, 2, P, 1e-12);
    double tail = std::exp(-x * P) / ((P - 1) * x);
    double v_pv = std::exp(x) * (near.value + rest.value);
    QuadratureResult out;
    out.value = v_series;
    out.error = std::abs(v_series - v_pv) +
                std::exp(x) * (near.error + rest.error + tail) + 1e-15 * std::abs(v_series);
    return out;
}

BigFloat ei_bigfloat(const BigFloat& x) {
    if (x <= 0) throw DomainError("ei_bigfloat requires x > 0");
    static const BigFloat euler_gamma(
        "0.57721566490153286060651209008240243104215933593992359880577");
    BigFloat sum = 0, term = 1;
    for (long k = 1; k < 4000; ++k) {
        term *= x / k;
        BigFloat add = term / k;
        sum += add;
        if (k > x && abs(add) < abs(sum) * BigFloat("1e-60")) break;
    }
    return euler_gamma + log(x) + sum;
}

// --- erfi ----------------------------------------------------------------

Transseries erfi_transseries() {
    GeneratorSet g;
    g.lambda = {1};
    g.beta = {Rational(1, 2)};
    // Borel-plane ODE (p-1)G' + G/2 = 0 with G(0) = 1/2:
    //   g_{n+1} = g_n (n + 1/2)/(n + 1); Laplace back gives c_n = n! g_n
    auto series_coeff = [](long n) {
        Rational gn(1, 2);
        for (long t = 0; t < n; ++t) gn *= Rational(2 * t + 1, 2 * (t + 1));
        return gn * rational_factorial(n);
    };
    Transseries t;
    t.gens = g;
    t.kmin = {-1};
    t.lmin = 0;
    t.mmax = 0;
    // monomials t^{-1/2 - n} e^{t}: k = -1 (beta.k = -1/2), l = n
    t.coeff = [series_coeff](const Transmonomial& q) {
        if (q.k != std::vector<long>{-1} || q.m != 0 || q.l < 0) return Scalar(0);
        return Scalar(series_coeff(q.l));
    };
    return t;
}

// --- ln Gamma --------------------------------------------------------------

Transseries lngamma_at_omega() {
    GeneratorSet g;  // pure-power/log grid, no exponential generators
    Transseries t;
    t.gens = g;
    t.kmin = {};
    t.lmin = -1;
    t.mmax = 1;
    t.coeff = [](const Transmonomial& q) {
        if (!q.k.empty()) return Scalar(0);
        if (q.m == 1) {
            if (q.l == -1) return Scalar(1);                 // w ln w
            if (q.l == 0) return Scalar(Rational(-1, 2));    // -(1/2) ln w
            return Scalar(0);
        }
        if (q.m != 0) return Scalar(0);
        if (q.l == -1) return Scalar(-1);  // -w
        if (q.l == 0)
            return Scalar(Rational(1, 2)) * Scalar::constant(Constant::Ln2Pi);
        if (q.l >= 1 && q.l % 2 == 1) {
            long two_n = q.l + 1;
            return Scalar(bernoulli(two_n) / (Rational(two_n) * (two_n - 1)));
        }
        return Scalar(0);
    };
    return t;
}

Transseries stirling_at_omega() {
    // exp of s(u) = sum_{n>=1} a_n u^{2n-1} (u = 1/w) by the standard
    // exp-of-series recurrence e_j = (1/j) sum_{i<=j} i s_i e_{j-i}
    auto s_at = [](long i) -> Rational {
        if (i < 1 || i % 2 == 0) return 0;
        long two_n = i + 1;
        return bernoulli(two_n) / (Rational(two_n) * (two_n - 1));
    };
    auto cache = std::make_shared<std::vector<Rational>>(std::vector<Rational>{1});
    auto mu = std::make_shared<std::mutex>();
    auto e_at = [s_at, cache, mu](long j) {
        std::lock_guard<std::mutex> lock(*mu);
        while (static_cast<long>(cache->size()) <= j) {
            long n = static_cast<long>(cache->size());
            Rational acc = 0;
            for (long i = 1; i <= n; ++i) acc += Rational(i) * s_at(i) * (*cache)[n - i];
            cache->push_back(acc / n);
        }
        return (*cache)[j];
    };
    Transseries t;
    t.gens = GeneratorSet{};
    t.kmin = {};
    t.lmin = 0;
    t.mmax = 0;
    t.coeff = [e_at](const Transmonomial& q) {
        if (!q.k.empty() || q.m != 0 || q.l < 0) return Scalar(0);
        return Scalar(e_at(q.l));
    };
    return t;
}

QuadratureResult lngamma_oracle(double n) {
    if (n < 2) throw DomainError("lngamma_oracle requires n >= 2");
    // Binet kernel f(p) = (1/(e^p - 1) - 1/p + 1/2)/p, analytic at 0 with
    // f(p) = sum B_{2m} p^{2m-2}/(2m)! near the origin
    auto kernel = [](double p) {
        if (p < 0.5) {
            double acc = 0, pw = 1;  // pw = p^{2m-2}, starting at m=1
            for (long m = 1; m <= 10; ++m) {
                double b = static_cast<double>(bernoulli(2 * m));
                double fact = std::tgamma(2.0 * m + 1.0);
                acc += b / fact * pw;
                pw *= p * p;
            }
            return acc;
        }
        return (1.0 / std::expm1(p) - 1.0 / p + 0.5) / p;
    };
    double P = 2 + 60.0 / n;
    auto f = [&](double p) { return std::exp(-n * p) * kernel(p); };
    QuadratureResult q = integrate_adaptive(f, 0, P, 1e-13);
    double tail = std::exp(-n * P) / (2 * P * n);
    static const double ln2pi = 1.8378770664093454835606594728112353;
    QuadratureResult out;
    out.value = n * (std::log(n) - 1) - 0.5 * std::log(n) + 0.5 * ln2pi + q.value;
    out.error = q.error + tail + 1e-14 * std::abs(out.value);
    return out;
}

Transseries sum_ln_to_omega() {
    return ts_add(lngamma_at_omega(),
                  ts_monomial(GeneratorSet{}, Transmonomial{{}, 0, 1}, Scalar(1)));
}

}  // namespace surcal
