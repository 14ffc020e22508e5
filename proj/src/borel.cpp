#include "surcal/borel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace surcal {

namespace {

Rational rational_factorial(long k) {
    Rational f = 1;
    for (long i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

FormalPowerSeries borel_transform(const FormalPowerSeries& f) {
    if (f.plane != Plane::InverseX)
        throw DomainError("borel_transform expects a 1/x-plane series");
    FormalPowerSeries out;
    out.plane = Plane::BorelP;
    out.coeff = [c = f.coeff](long k) { return c(k) * Scalar(1 / rational_factorial(k)); };
    return out;
}

FormalPowerSeries formal_laplace(const FormalPowerSeries& F) {
    if (F.plane != Plane::BorelP)
        throw DomainError("formal_laplace expects a p-plane series");
    FormalPowerSeries out;
    out.plane = Plane::InverseX;
    out.coeff = [c = F.coeff](long k) { return c(k) * Scalar(rational_factorial(k)); };
    return out;
}

std::optional<Gevrey1> gevrey1_certificate(const FormalPowerSeries& f, long K) {
    if (K < 4) throw DomainError("gevrey1_certificate needs inspection depth >= 4");
    // r_k = |c_k| / k! should decay (or grow) geometrically: fit rho from the
    // slope of ln r_k, then take C as the envelope sup of r_k rho^k.
    std::vector<double> lr;
    BigFloat fact = 1;
    for (long k = 0; k <= K; ++k) {
        if (k > 1) fact *= k;
        double r = (abs(f.coeff(k).to_bigfloat()) / fact).convert_to<double>();
        lr.push_back(r > 0 ? std::log(r) : -std::numeric_limits<double>::infinity());
    }
    // least-squares slope over the tail half of the window (asymptotic regime)
    long lo = K / 2;
    double n = 0, sx = 0, sy = 0, sxy = 0, sxx = 0;
    for (long k = lo; k <= K; ++k) {
        if (!std::isfinite(lr[k])) continue;
        n += 1;
        sx += k;
        sy += lr[k];
        sxy += k * lr[k];
        sxx += double(k) * k;
    }
    if (n < 2) return Gevrey1{1.0, 1e12};  // (eventually) zero series: any rho works
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    // super-factorial growth: successive slope estimates keep increasing
    double head = lr[lo] - lr[std::max<long>(1, lo - 1)];
    double tail = (std::isfinite(lr[K]) && std::isfinite(lr[K - 1])) ? lr[K] - lr[K - 1] : slope;
    if (tail > head + 0.5 && tail > 0.5) return std::nullopt;
    double rho = std::exp(-slope);
    if (!(rho > 0) || !std::isfinite(rho)) return std::nullopt;
    double C = 0;
    for (long k = 0; k <= K; ++k)
        if (std::isfinite(lr[k])) C = std::max(C, std::exp(lr[k] + k * std::log(rho)));
    return Gevrey1{C, rho};
}

// --- Pade -------------------------------------------------------------

namespace {

/// Solves the square rational system A q = rhs by Gaussian elimination.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A,
                                     std::vector<Rational> rhs) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) throw DomainError("degenerate Pade denominator system");
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (A[row][col] == 0) continue;
            Rational m = A[row][col] / A[col][col];
            for (std::size_t j = col; j < n; ++j) A[row][j] -= m * A[col][j];
            rhs[row] -= m * rhs[col];
        }
    }
    std::vector<Rational> q(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= A[i][j] * q[j];
        q[i] = acc / A[i][i];
    }
    return q;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<Rational>& poly) {
    // trim trailing zeros
    std::size_t deg = poly.size();
    while (deg > 0 && poly[deg - 1] == 0) --deg;
    if (deg <= 1) return {};
    std::vector<std::complex<double>> c(deg);
    for (std::size_t i = 0; i < deg; ++i) c[i] = static_cast<double>(poly[i]);
    // Durand-Kerner
    std::size_t n = deg - 1;
    std::vector<std::complex<double>> z(n);
    std::complex<double> seed(0.4, 0.9);
    z[0] = seed;
    for (std::size_t i = 1; i < n; ++i) z[i] = z[i - 1] * seed;
    auto eval = [&](std::complex<double> p) {
        std::complex<double> v = c[deg - 1];
        for (std::size_t i = deg - 1; i-- > 0;) v = v * p + c[i];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> d = c[deg - 1];
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) d *= (z[i] - z[j]);
            std::complex<double> step = eval(z[i]) / d;
            z[i] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

}  // namespace

ContinuationModel pade_continue(const FormalPowerSeries& F, int order) {
    if (F.plane != Plane::BorelP)
        throw DomainError("pade_continue expects a p-plane series");
    const int n = order;
    std::vector<Rational> c(2 * n + 1);
    for (int k = 0; k <= 2 * n; ++k) c[k] = F.coeff(k).rational();

    ContinuationModel m;
    m.den.assign(n + 1, Rational(0));
    m.den[0] = 1;
    if (n > 0) {
        // sum_{j=0..n} q_j c_{t-j} = 0 for t = n+1 .. 2n, with q_0 = 1
        std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
        std::vector<Rational> rhs(n);
        bool all_zero = true;
        for (int row = 0; row < n; ++row) {
            int t = n + 1 + row;
            for (int j = 1; j <= n; ++j) {
                A[row][j - 1] = (t - j >= 0) ? c[t - j] : Rational(0);
                if (A[row][j - 1] != 0) all_zero = false;
            }
            rhs[row] = -c[t];
            if (rhs[row] != 0) all_zero = false;
        }
        if (!all_zero) {
            auto q = solve_rational(std::move(A), std::move(rhs));
            for (int j = 1; j <= n; ++j) m.den[j] = q[j - 1];
        }
    }
    m.num.assign(n + 1, Rational(0));
    for (int t = 0; t <= n; ++t) {
        Rational acc = 0;
        for (int j = 0; j <= std::min(t, n); ++j) acc += m.den[j] * c[t - j];
        m.num[t] = acc;
    }

    auto num_at = [&](std::complex<double> p) {
        std::complex<double> v = 0;
        for (std::size_t i = m.num.size(); i-- > 0;) v = v * p + static_cast<double>(m.num[i]);
        return v;
    };
    for (auto& root : polynomial_roots(m.den)) {
        // derivative of the denominator at the root
        std::complex<double> dv = 0;
        for (std::size_t i = m.den.size(); i-- > 1;)
            dv = dv * root + double(i) * static_cast<double>(m.den[i]);
        m.poles.push_back({root, num_at(root) / dv});
    }
    std::sort(m.poles.begin(), m.poles.end(),
              [](const auto& a, const auto& b) { return a.location.real() < b.location.real(); });
    return m;
}

double ContinuationModel::eval(double p) const {
    double nv = 0, dv = 0;
    for (std::size_t i = num.size(); i-- > 0;) nv = nv * p + static_cast<double>(num[i]);
    for (std::size_t i = den.size(); i-- > 0;) dv = dv * p + static_cast<double>(den[i]);
    return nv / dv;
}

std::vector<ContinuationModel::Pole> ContinuationModel::positive_real_poles() const {
    std::vector<Pole> out;
    for (const auto& p : poles)
        if (std::abs(p.location.imag()) < 1e-9 && p.location.real() > 1e-12) out.push_back(p);
    return out;
}

// --- Quadrature -------------------------------------------------------

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4 * fm + fb);
}

void adaptive(const std::function<double(double)>& f, double a, double fa, double b,
              double fb, double m, double fm, double whole, double tol, int depth,
              double& acc, double& err) {
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, flm, m, fm);
    double right = simpson(m, fm, frm, b, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) {
        acc += left + right + delta / 15;
        err += std::abs(delta) / 15;
        return;
    }
    adaptive(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1, acc, err);
    adaptive(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1, acc, err);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                                    double hi, double tol) {
    if (hi <= lo) return {0, 0};
    double m = (lo + hi) / 2;
    double flo = f(lo), fhi = f(hi), fm = f(m);
    double whole = simpson(lo, flo, fm, hi, fhi);
    QuadratureResult r;
    adaptive(f, lo, flo, hi, fhi, m, fm, whole, tol, 50, r.value, r.error);
    return r;
}

namespace {

QuadratureResult laplace_of(const std::function<double(double)>& g, double x, double P,
                            double gbound, double tol) {
    auto f = [&](double p) { return std::exp(-x * p) * g(p); };
    QuadratureResult r = integrate_adaptive(f, 0, P, tol);
    double tail = gbound * std::exp(-x * P) / x;
    r.error += tail;
    return r;
}

double model_sup_bound(const ContinuationModel& m, double from) {
    // diagonal Pade is bounded at infinity; probe a coarse grid for a sup
    double s = std::abs(m.eval(from));
    for (double p = from; p < from * 64; p *= 1.3) s = std::max(s, std::abs(m.eval(p)));
    return 2 * s + 1e-300;
}

}  // namespace

QuadratureResult laplace_quadrature(const ContinuationModel& model, double x, double tol) {
    if (x <= 0) throw DomainError("laplace_quadrature requires x > 0");
    if (!model.positive_real_poles().empty())
        throw DomainError("pole on the positive real axis: use pv_laplace");
    double max_pole = 0;
    for (const auto& p : model.poles) max_pole = std::max(max_pole, std::abs(p.location));
    double P = std::max(50.0 / x, 4 * max_pole);
    return laplace_of([&](double p) { return model.eval(p); }, x, P,
                      model_sup_bound(model, P), tol);
}

QuadratureResult pv_laplace(const ContinuationModel& model, double x, double tol) {
    if (x <= 0) throw DomainError("pv_laplace requires x > 0");
    auto onaxis = model.positive_real_poles();
    if (onaxis.empty()) return laplace_quadrature(model, x, tol);
    for (const auto& p : onaxis) {
        // simple-pole check: residue finite and the denominator's derivative
        // nonvanishing is implied by the residue computation succeeding
        if (!std::isfinite(p.residue.real()) || std::abs(p.residue.imag()) > 1e-8)
            throw UnsupportedFragment("higher-order pole on the positive real axis");
    }
    // subtract the singular parts; the two lateral deformations average to
    // exactly the principal value for a half-half weight, and
    // PV int_0^inf e^{-xp}/(p - p0) dp = -e^{-x p0} Ei(x p0)
    auto regular = [&](double p) {
        double v = model.eval(p);
        for (const auto& q : onaxis) v -= q.residue.real() / (p - q.location.real());
        return v;
    };
    double max_pole = 0;
    for (const auto& p : model.poles) max_pole = std::max(max_pole, std::abs(p.location));
    double P = std::max(50.0 / x, 4 * max_pole);
    double bound = 0;
    for (double p = P; p < P * 64; p *= 1.3) bound = std::max(bound, std::abs(regular(p)));
    QuadratureResult r = laplace_of(regular, x, P, 2 * bound + 1e-300, tol);
    for (const auto& q : onaxis) {
        double p0 = q.location.real();
        r.value += q.residue.real() * (-std::exp(-x * p0) * ei_double(x * p0));
    }
    return r;
}

// --- Least-term summation ----------------------------------------------

LeastTermResult least_term_sum(const FormalPowerSeries& f, double rho, double x) {
    if (f.plane != Plane::InverseX)
        throw DomainError("least_term_sum expects a 1/x-plane series");
    if (x <= 1) throw DomainError("least_term_sum requires x > 1");
    LeastTermResult out;
    out.k_star = static_cast<long>(std::floor(rho * x));
    BigFloat xb = x, pw = 1 / xb, acc = 0;
    for (long k = 0; k <= out.k_star; ++k) {
        acc += f.coeff(k).to_bigfloat() * pw;
        pw /= xb;
    }
    out.value_hp = acc;
    out.value = acc.convert_to<double>();
    return out;
}

BigFloat least_term_error_constant(const std::function<BigFloat(const BigFloat&)>& oracle,
                                   const FormalPowerSeries& f, double b, double rho,
                                   const std::vector<double>& grid) {
    BigFloat sup = 0;
    for (double x : grid) {
        BigFloat xb = x;
        BigFloat diff = oracle(xb) - least_term_sum(f, rho, x).value_hp;
        BigFloat weight = exp(BigFloat(-rho * x)) * pow(xb, BigFloat(b));
        BigFloat ratio = abs(diff) / weight;
        if (ratio > sup) sup = ratio;
    }
    return sup;
}

// --- Borel-plane integration --------------------------------------------

FormalPowerSeries borel_plane_integrate(const FormalPowerSeries& Y, const Rational& a,
                                        const Rational& b) {
    if (a <= 0) throw DomainError("borel_plane_integrate kernel is singular at a = 0");
    if (Y.plane != Plane::BorelP)
        throw DomainError("borel_plane_integrate expects a p-plane series");
    // Comparing p^n coefficients in (a+p) G' = (b-1) G - Y' gives
    //   a (n+1) G_{n+1} + n G_n = (b-1) G_n - (n+1) Y_{n+1},
    // i.e. G_m = ((b - m) G_{m-1} - m Y_m) / (a m), seeded by G_0 = -Y_0 / a
    // (the constant-term balance of the integrated equation).
    auto cache = std::make_shared<std::vector<Scalar>>();
    FormalPowerSeries G;
    G.plane = Plane::BorelP;
    G.coeff = [cache, y = Y.coeff, a, b](long n) {
        while (static_cast<long>(cache->size()) <= n) {
            long m = static_cast<long>(cache->size());
            if (m == 0) {
                cache->push_back(Scalar(-1 / a) * y(0));
            } else {
                Scalar num = Scalar(b - m) * cache->back() -
                             Scalar(Rational(m)) * y(m);
                cache->push_back(num * Scalar(1 / (a * m)));
            }
        }
        return (*cache)[n];
    };
    return G;
}

// --- Concrete series/oracles ---------------------------------------------

FormalPowerSeries ei_series_for_least_term() {
    FormalPowerSeries f;
    f.plane = Plane::InverseX;
    f.coeff = [](long k) { return Scalar(rational_factorial(k)); };
    f.gevrey = Gevrey1{1.0, 1.0};
    return f;
}

double ei_double(double x) {
    if (x == 0) throw DomainError("Ei is singular at 0");
    constexpr double euler_gamma = 0.57721566490153286060651209008240243;
    if (std::abs(x) <= 40) {
        double sum = 0, term = 1;
        for (long k = 1; k <= 400; ++k) {
            term *= x / k;
            double add = term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * (std::abs(sum) + 1)) break;
        }
        return euler_gamma + std::log(std::abs(x)) + sum;
    }
    // asymptotic least-term sum, error ~ e^x/sqrt(x) relative 1e-17 at x > 40
    double s = 0, t = 1 / x;
    for (long k = 0; k <= static_cast<long>(x); ++k) {
        s += t;
        t *= (k + 1) / x;
    }
    return std::exp(x) * s;
}

}  // namespace surcal
