#include "zetarg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "zetarg/errors.hpp"

namespace zetarg {

namespace {

template <typename T>
T pairwise_impl(std::span<const T> xs) {
    if (xs.empty()) return T{};
    if (xs.size() <= 8) {
        T s{};
        for (const T& x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_impl(xs.first(half)) + pairwise_impl(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
    return pairwise_impl(xs);
}

double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

const GaussLegendre& GaussLegendre::get(int order) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.x.resize(order);
    gl.w.resize(order);
    // Newton iteration on P_n from the Chebyshev initial guess.
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        gl.x[i] = -x;
        gl.x[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.w[i] = w;
        gl.w[order - 1 - i] = w;
    }
    if (order % 2 == 1) gl.x[order / 2] = 0.0;
    auto [pos, _] = cache.emplace(order, std::move(gl));
    return pos->second;
}

namespace {

template <typename T>
T gl_panel(const std::function<T(double)>& f, double a, double b, int order) {
    const GaussLegendre& gl = GaussLegendre::get(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<T> terms(gl.x.size());
    for (std::size_t i = 0; i < gl.x.size(); ++i)
        terms[i] = gl.w[i] * f(mid + half * gl.x[i]);
    return half * pairwise_impl(std::span<const T>(terms));
}

template <typename T>
struct AdaptiveState {
    T value{};
    double err = 0.0;
    int panels_used = 0;
};

template <typename T>
void adaptive_recurse(const std::function<T(double)>& f, double a, double b, double tol,
                      int max_panels, int depth, AdaptiveState<T>& st) {
    const T coarse = gl_panel(f, a, b, 8);
    const double m = 0.5 * (a + b);
    const T left = gl_panel(f, a, m, 8);
    const T right = gl_panel(f, m, b, 8);
    const T fine = left + right;
    const double disc = std::abs(fine - coarse);
    st.panels_used += 3;
    if (st.panels_used > max_panels)
        throw QuadratureBudgetExceeded("integrate_adaptive: panel budget exhausted");
    // Rounding floor: below it further splitting cannot help.
    const double floor_err =
        8.0 * std::numeric_limits<double>::epsilon() * (std::abs(fine) + std::abs(coarse));
    if (disc <= std::max(tol, floor_err) || depth >= 40) {
        st.value += fine;
        st.err += disc;
        return;
    }
    adaptive_recurse(f, a, m, tol * 0.5, max_panels, depth + 1, st);
    adaptive_recurse(f, m, b, tol * 0.5, max_panels, depth + 1, st);
}

template <typename T>
AdaptiveState<T> adaptive_run(const std::function<T(double)>& f,
                              std::span<const double> breakpoints, double abs_tol,
                              int max_panels) {
    std::vector<double> bp(breakpoints.begin(), breakpoints.end());
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    if (bp.size() < 2) throw InvalidConfig("integrate_adaptive: need at least two breakpoints");
    AdaptiveState<T> st;
    const double per_panel = abs_tol / static_cast<double>(bp.size() - 1);
    for (std::size_t i = 0; i + 1 < bp.size(); ++i)
        adaptive_recurse(f, bp[i], bp[i + 1], per_panel, max_panels, 0, st);
    return st;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints, double abs_tol,
                                    int max_panels) {
    auto st = adaptive_run(f, breakpoints, abs_tol, max_panels);
    return {st.value, st.err};
}

ComplexQuadratureResult integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, std::span<const double> breakpoints,
    double abs_tol, int max_panels) {
    auto st = adaptive_run(f, breakpoints, abs_tol, max_panels);
    return {st.value, st.err};
}

QuadratureResult tanh_sinh(const std::function<double(double, double, double)>& f, double a,
                           double b, double abs_tol, int max_level) {
    // x = c + r*tanh((pi/2) sinh(u)); endpoint distances computed from the
    // stable form r*(1 - |tanh|) to keep log-type singularities evaluable.
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    const double pi_half = 0.5 * std::numbers::pi;

    auto eval_at = [&](double u, double& contrib) {
        const double s = std::sinh(u);
        if (pi_half * std::abs(s) > 320.0) {  // weight underflows; node is at the endpoint
            contrib = 0.0;
            return;
        }
        const double th = std::tanh(pi_half * s);
        const double ch = std::cosh(pi_half * s);
        const double weight = pi_half * std::cosh(u) / (ch * ch);
        // 1 -+ tanh(y) = 2 e^{-2|y|} / (1 + e^{-2|y|}) evaluated stably:
        const double e2 = std::exp(-2.0 * std::abs(pi_half * s));
        const double dist_near = r * 2.0 * e2 / (1.0 + e2);  // distance to the endpoint th points at
        double x, da, db;
        if (th >= 0.0) {
            x = c + r * th;
            db = dist_near;
            da = (b - a) - db;
        } else {
            x = c + r * th;
            da = dist_near;
            db = (b - a) - da;
        }
        contrib = weight * f(x, da, db);
    };

    double h = 1.0;
    double level0;
    eval_at(0.0, level0);
    for (int k = 1; k <= 8; ++k) {
        double cpos, cneg;
        eval_at(static_cast<double>(k), cpos);
        eval_at(-static_cast<double>(k), cneg);
        level0 += cpos + cneg;
        if (std::abs(cpos) + std::abs(cneg) < 1e-300 && k > 4) break;
    }
    double integral = h * level0;
    double prev = integral;
    double err = std::abs(integral);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double added = 0.0;
        const int kmax = static_cast<int>(std::ceil(8.0 / h));
        for (int k = 1; k <= kmax; k += 2) {
            const double u = k * h;
            double cpos, cneg;
            eval_at(u, cpos);
            eval_at(-u, cneg);
            added += cpos + cneg;
            if (std::abs(cpos) + std::abs(cneg) < 1e-300 && u > 4.0) break;
        }
        integral = 0.5 * prev + h * added;
        err = std::abs(integral - prev);
        prev = integral;
        if (level >= 4 && err <= abs_tol) break;
    }
    if (err > abs_tol)
        throw QuadratureBudgetExceeded("tanh_sinh: error target not met at max level");
    return {r * integral, r * err};
}

ComplexQuadratureResult clenshaw_curtis_panel(
    const std::function<std::complex<double>(double)>& f, double a, double b) {
    constexpr int N = 16;  // degree-16 Lobatto grid; the degree-8 grid nests inside
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    std::complex<double> fv[N + 1];
    for (int j = 0; j <= N; ++j) {
        const double x = std::cos(std::numbers::pi * j / N);
        fv[j] = f(c + r * x);
    }
    // Clenshaw-Curtis weights via the cosine-moment formula, computed directly.
    auto cc_value = [&](int n, int stride) {
        // integrate using nodes j = 0, stride, 2*stride, ... (n+1 nodes)
        std::vector<std::complex<double>> contrib(n + 1);
        for (int j = 0; j <= n; ++j) {
            // weight for node j of the (n+1)-point CC rule on [-1,1]
            double w = 1.0;
            double acc = 0.0;
            for (int k = 1; k <= n / 2; ++k) {
                const double bk = (2 * k == n) ? 1.0 : 2.0;
                acc += bk / (4.0 * k * k - 1.0) * std::cos(2.0 * k * std::numbers::pi * j / n);
            }
            w = (2.0 / n) * (1.0 - acc);
            if (j == 0 || j == n) w *= 0.5;
            contrib[j] = w * fv[j * stride];
        }
        return pairwise_sum(std::span<const std::complex<double>>(contrib));
    };
    const std::complex<double> fine = cc_value(N, 1);
    const std::complex<double> coarse = cc_value(N / 2, 2);
    return {r * fine, r * std::abs(fine - coarse)};
}

ChebPanel::ChebPanel(double a, double b, std::vector<double> coeffs)
    : a_(a), b_(b), c_(std::move(coeffs)) {}

ChebPanel ChebPanel::fit(const std::function<double(double)>& f, double a, double b, int degree) {
    const int p = degree;
    std::vector<double> fv(p);
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    for (int j = 0; j < p; ++j) {
        const double x = std::cos(std::numbers::pi * (j + 0.5) / p);
        fv[j] = f(c + r * x);
    }
    std::vector<double> coeffs(p);
    for (int k = 0; k < p; ++k) {
        double s = 0.0;
        for (int j = 0; j < p; ++j) s += fv[j] * std::cos(std::numbers::pi * k * (j + 0.5) / p);
        coeffs[k] = 2.0 / p * s;
    }
    return ChebPanel(a, b, std::move(coeffs));
}

double ChebPanel::eval(double t) const {
    const double x = (2.0 * t - a_ - b_) / (b_ - a_);
    // Clenshaw with the c_[0]/2 convention.
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c_.size(); k-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + c_[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + 0.5 * c_[0];
}

ChebPanel ChebPanel::antiderivative(double left_value) const {
    const std::size_t p = c_.size();
    std::vector<double> C(p + 1, 0.0);
    const double scale = 0.5 * (b_ - a_);  // dt = scale * dx
    auto cc = [&](std::size_t k) { return k < p ? c_[k] : 0.0; };
    for (std::size_t k = 1; k <= p; ++k)
        C[k] = scale * (cc(k - 1) - cc(k + 1)) / (2.0 * k);
    // T_k(-1) = (-1)^k; fix C[0] so that eval(a_) == left_value.
    double at_left = 0.0;
    for (std::size_t k = 1; k <= p; ++k) at_left += C[k] * ((k % 2 == 0) ? 1.0 : -1.0);
    C[0] = 2.0 * (left_value - at_left);
    return ChebPanel(a_, b_, std::move(C));
}

double ChebPanel::integral() const {
    // Integral over the panel of the interpolant: only even coefficients contribute.
    double s = 0.5 * c_[0] * 2.0;
    for (std::size_t k = 2; k < c_.size(); k += 2)
        s += c_[k] * (2.0 / (1.0 - static_cast<double>(k) * static_cast<double>(k)));
    return 0.5 * (b_ - a_) * s;
}

double ChebPanel::tail_estimate() const {
    if (c_.size() < 3) return 0.0;
    const std::size_t p = c_.size();
    return std::abs(c_[p - 1]) + std::abs(c_[p - 2]);
}

}  // namespace zetarg
