#include "zetarg/iterates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zetarg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2 = std::numbers::ln2;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double binom(int n, int k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// Im{ i^n z } for integer n.
double im_of_i_pow(int n, Complex z) {
    switch (((n % 4) + 4) % 4) {
        case 0: return z.imag();
        case 1: return z.real();
        case 2: return -z.imag();
        default: return -z.real();
    }
}

// Tail of Int_V^inf (v-sigma)^m |log zeta(v+it)| dv using
// |log zeta(v+it)| <= -2 log(1 - 2^{1-v}) <= 8 * 2^{-v} for v >= 4:
// 8 e^{-L V} sum_{j<=m} (L(V-sigma))^j / j! / L^{m+1},  L = log 2.
double logzeta_tail_bound(int m, double sigma, double V) {
    const double x = kLog2 * (V - sigma);
    double s = 0.0, term = 1.0;
    for (int j = 0; j <= m; ++j) {
        s += term;
        term *= x / (j + 1);
    }
    return 8.0 * std::exp(-kLog2 * V) * s / std::pow(kLog2, m + 1);
}

double pick_tail_cut(int m, double sigma, double tol) {
    double V = 20.0;
    while (logzeta_tail_bound(m, sigma, V) > tol && V < 400.0) V += 4.0;
    return V;
}

}  // namespace

double S_value(const CriticalStripPoint& p, const PrecisionPolicy& policy) {
    return log_zeta_littlewood_path(p, policy).arg_over_pi;
}

// --------------------------------------------------------------------------
// delta constants
// --------------------------------------------------------------------------

double delta_odd_scheme_gl(int n, double sigma, const PrecisionPolicy& policy, double* est) {
    const int k = (n + 1) / 2;
    const int m = n - 1;  // weight (u-sigma)^m / m!
    const double mfact = factorial(m);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double tol = std::max(2e-12, policy.internal_target() * 1e-2);
    const double V = pick_tail_cut(m, sigma, 0.05 * tol * mfact);
    const double a = 0.25;

    auto weight = [&](double u) { return std::pow(u - sigma, m) / mfact; };
    auto smooth = [&](double u) {
        if (u >= 3.0)  // log1p of zeta-1 keeps relative accuracy deep in the half plane
            return weight(u) * std::log1p(zeta_minus_one(Complex(u, 0.0), policy).real());
        return weight(u) * std::log(std::abs(zeta_eval(Complex(u, 0.0), policy)));
    };

    double total_est = 0.0;
    // away from the pole at u = 1
    std::vector<double> bp_low{sigma, 0.5 * (sigma + 1.0 - a), 1.0 - a};
    auto low = integrate_adaptive(smooth, bp_low, 0.3 * tol);
    std::vector<double> bp_high{1.0 + a, 2.0, 3.0, 5.0, 9.0, 16.0, V};
    auto high = integrate_adaptive(smooth, bp_high, 0.3 * tol);
    total_est += low.est_error + high.est_error;

    // |u - 1| <= a: split log|zeta| = log|(u-1) zeta(u)| - log|u-1|; the second
    // factor integrates in closed form against the polynomial weight.
    auto regular = [&](double u) {
        return weight(u) * std::log(std::abs(zeta_times_s_minus_1(Complex(u, 0.0), policy)));
    };
    std::vector<double> bp_mid{1.0 - a, 1.0, 1.0 + a};
    auto mid = integrate_adaptive(regular, bp_mid, 0.3 * tol);
    total_est += mid.est_error;

    double log_part = 0.0;  // Int_{1-a}^{1+a} w(u) (-log|u-1|) du
    for (int i = 0; i <= m; i += 2) {
        const double coef = binom(m, i) * std::pow(1.0 - sigma, m - i) / mfact;
        log_part += coef * 2.0 * std::pow(a, i + 1) *
                    (1.0 / ((i + 1.0) * (i + 1.0)) - std::log(a) / (i + 1.0));
    }

    const double tail = logzeta_tail_bound(m, sigma, V) / mfact;
    total_est += tail;
    if (est) *est = total_est / kPi;
    return sign / kPi * (low.value + high.value + mid.value + log_part);
}

double delta_odd_scheme_tanh_sinh(int n, double sigma, const PrecisionPolicy& policy,
                                  double* est) {
    const int k = (n + 1) / 2;
    const int m = n - 1;
    const double mfact = factorial(m);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double tol = std::max(2e-12, policy.internal_target() * 1e-2);
    const double V = pick_tail_cut(m, sigma, 0.05 * tol * mfact);

    // log|zeta(u)| with the pole removed through the exact distance to u = 1.
    auto log_abs_zeta_dist = [&](double u, double dist1) {
        if (dist1 < 0.2)
            return std::log(std::abs(zeta_times_s_minus_1(Complex(u, 0.0), policy))) -
                   std::log(dist1);
        if (u >= 3.0)
            return std::log1p(zeta_minus_one(Complex(u, 0.0), policy).real());
        return std::log(std::abs(zeta_eval(Complex(u, 0.0), policy)));
    };

    double total_est = 0.0;
    auto left = tanh_sinh(
        [&](double u, double /*da*/, double db) {
            return std::pow(u - sigma, m) / mfact * log_abs_zeta_dist(u, db);
        },
        sigma, 1.0, 0.3 * tol);
    auto right = tanh_sinh(
        [&](double u, double da, double /*db*/) {
            return std::pow(u - sigma, m) / mfact * log_abs_zeta_dist(u, da);
        },
        1.0, V, 0.3 * tol);
    total_est += left.est_error + right.est_error;

    const double tail = logzeta_tail_bound(m, sigma, V) / mfact;
    total_est += tail;
    if (est) *est = total_est / kPi;
    return sign / kPi * (left.value + right.value);
}

DeltaConstant delta_constant(int n, double sigma, const PrecisionPolicy& policy) {
    if (n < 1 || n > kMaxIterateOrder)
        throw InvalidConfig("delta_constant: n must be in [1, max iterate order]");
    if (!(sigma >= 0.5 && sigma <= 1.0))
        throw InvalidConfig("delta_constant: sigma must lie in [1/2, 1]");
    DeltaConstant d;
    d.n = n;
    d.sigma = sigma;
    if (n % 2 == 0) {
        const int k = n / 2;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        d.value = sign * std::pow(1.0 - sigma, n) / factorial(n);
        d.route = DeltaConstant::Scheme::closed_form_even;
        d.est_error = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(d.value);
        return d;
    }
    double est_a = 0.0, est_b = 0.0;
    const double va = delta_odd_scheme_gl(n, sigma, policy, &est_a);
    const double vb = delta_odd_scheme_tanh_sinh(n, sigma, policy, &est_b);
    const double diff = std::abs(va - vb);
    if (diff > std::max(1e-8, est_a + est_b))
        throw PrecisionUnreachable("delta_constant: independent quadrature schemes disagree");
    d.value = va;
    d.route = DeltaConstant::Scheme::quadrature_odd;
    d.est_error = std::max({diff, est_a, 2e-12});
    return d;
}

// --------------------------------------------------------------------------
// representation route
// --------------------------------------------------------------------------

double representation_Sn(int n, const CriticalStripPoint& p, const PrecisionPolicy& policy,
                         double* est) {
    if (n < 1) throw InvalidConfig("representation_Sn: requires n >= 1");
    if (!(p.t > 0.0)) throw InvalidConfig("representation_Sn: requires t > 0");
    const double sigma = p.sigma;
    const double pref = 1.0 / (kPi * factorial(n - 1));
    const double tol = std::max(2e-12, policy.internal_target() * 0.1) / pref;
    const double V = pick_tail_cut(n - 1, sigma, 0.05 * tol);

    Complex total(0.0, 0.0);
    double quad_est = 0.0;

    if (sigma < 2.0) {
        HorizontalBranchLine line(sigma, p.t, policy);
        auto f_low = [&](double v) {
            return std::pow(v - sigma, n - 1) * line.log_zeta_at(v);
        };
        std::vector<double> bp{sigma, 0.5 * (sigma + 2.0), 2.0};
        auto low = integrate_adaptive_complex(f_low, bp, 0.4 * tol);
        total += low.value;
        quad_est += low.est_error;
    }
    auto f_high = [&](double v) {
        // principal log == continued branch for v >= 2
        if (v >= 3.0)
            return std::pow(v - sigma, n - 1) *
                   log1p_complex(zeta_minus_one(Complex(v, p.t), policy));
        return std::pow(v - sigma, n - 1) * std::log(zeta_eval(Complex(v, p.t), policy));
    };
    std::vector<double> bp_high{std::max(2.0, sigma), 3.0, 4.0, 6.0, 10.0, 18.0, V};
    bp_high.erase(std::remove_if(bp_high.begin(), bp_high.end(),
                                 [&](double v) { return v > V; }),
                  bp_high.end());
    if (bp_high.back() != V) bp_high.push_back(V);
    auto high = integrate_adaptive_complex(f_high, bp_high, 0.4 * tol);
    total += high.value;
    quad_est += high.est_error;

    const double tail = logzeta_tail_bound(n - 1, sigma, V);
    if (est) *est = pref * (quad_est + tail) + 1e-12;
    return pref * im_of_i_pow(n, total);
}

// --------------------------------------------------------------------------
// SnEvaluator: piecewise-Chebyshev iterate ladder
// --------------------------------------------------------------------------

namespace {

PrecisionPolicy sampler_policy(double t, const PrecisionPolicy& base) {
    PrecisionPolicy p = base;
    p.target_abs_error = std::max(1e-13, 1e-14 * std::sqrt(std::max(t, 1.0)));
    p.guard_digits = 0;
    return p;
}

}  // namespace

SnEvaluator::SnEvaluator(double sigma, double t_max, int n_max, const PrecisionPolicy& policy,
                         Backend backend)
    : sigma_(sigma), t_max_(t_max), n_max_(n_max), policy_(policy), backend_(backend) {
    if (n_max < 0 || n_max > kMaxIterateOrder)
        throw InvalidConfig("SnEvaluator: n_max outside [0, max iterate order]");
    if (!(sigma >= 0.5)) throw InvalidConfig("SnEvaluator: requires sigma >= 1/2");
    if (!(t_max > 0.0)) throw InvalidConfig("SnEvaluator: requires t_max > 0");
    if (backend_ == Backend::automatic)
        backend_ = (sigma == 0.5) ? Backend::line_formula : Backend::path_tracked;
    if (backend_ == Backend::line_formula && sigma != 0.5)
        throw InvalidConfig("SnEvaluator: line backend requires sigma = 1/2");

    zeros_ = count_zeros(t_max_, policy_);

    deltas_.assign(n_max_ + 1, 0.0);
    delta_errs_.assign(n_max_ + 1, 0.0);
    for (int n = 1; n <= n_max_; ++n) {
        const DeltaConstant d = delta_constant(n, sigma_, policy_);
        deltas_[n] = d.value;
        delta_errs_[n] = d.est_error;
    }
    build_panels();
}

double SnEvaluator::sample_S(double tau) const {
    if (backend_ == Backend::line_formula) {
        const auto& g = zeros_.ordinates;
        const auto cnt = std::upper_bound(g.begin(), g.end(), tau) - g.begin();
        return static_cast<double>(cnt) - 1.0 - riemann_siegel_theta(tau) / kPi;
    }
    const Complex lz = log_zeta_from_corner(sigma_, tau, sampler_policy(tau, policy_));
    return lz.imag() / kPi;
}

void SnEvaluator::build_panels() {
    const bool line = backend_ == Backend::line_formula;
    const double W = line ? 4.0 : 1.5;
    const double fit_tol = line ? 4e-12 : 4e-11;
    const int degree = 24;
    sampler_noise_ = line ? 1e-13 : 30.0 * sampler_policy(t_max_, policy_).target_abs_error;

    std::vector<double> brk{0.0};
    for (double g : zeros_.ordinates)
        if (g < t_max_) brk.push_back(g);
    brk.push_back(t_max_);

    auto sampler = [this](double tau) { return sample_S(tau); };

    std::function<void(double, double, int)> fit_range = [&](double a, double b, int depth) {
        ChebPanel panel = ChebPanel::fit(sampler, a, b, degree);
        if (panel.tail_estimate() > fit_tol && depth < 12) {
            const double mid = 0.5 * (a + b);
            fit_range(a, mid, depth + 1);
            fit_range(mid, b, depth + 1);
            return;
        }
        interp_eps_ = std::max(interp_eps_, panel.tail_estimate());
        integrated_eps_ += panel.tail_estimate() * (b - a) * 0.5;
        s_panels_.push_back(std::move(panel));
    };

    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        const double a = brk[i], b = brk[i + 1];
        if (b - a < 1e-12) continue;
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / W)));
        for (int j = 0; j < pieces; ++j)
            fit_range(a + (b - a) * j / pieces, a + (b - a) * (j + 1) / pieces, 0);
    }

    panel_starts_.reserve(s_panels_.size());
    for (const auto& p : s_panels_) panel_starts_.push_back(p.a());

    levels_.resize(n_max_);
    const std::vector<ChebPanel>* prev = &s_panels_;
    for (int n = 1; n <= n_max_; ++n) {
        std::vector<ChebPanel> lvl;
        lvl.reserve(prev->size());
        double running = deltas_[n];
        for (const auto& p : *prev) {
            lvl.push_back(p.antiderivative(running));
            running = lvl.back().eval(p.b());
        }
        levels_[n - 1] = std::move(lvl);
        prev = &levels_[n - 1];
    }
}

double SnEvaluator::delta_n(int n) const {
    if (n < 1 || n > n_max_) throw InvalidConfig("SnEvaluator::delta_n: order out of range");
    return deltas_[n];
}

double SnEvaluator::Sn(int n, double t) const {
    if (n < 0 || n > n_max_) throw InvalidConfig("SnEvaluator::Sn: order out of range");
    if (t < 0.0 || t > t_max_ * (1.0 + 1e-12))
        throw InvalidConfig("SnEvaluator::Sn: t outside model range");
    if (n == 0) {
        if (backend_ == Backend::line_formula)
            return zeros_.count_up_to(t) - 1.0 - riemann_siegel_theta(t) / kPi;
        return sample_S(t);
    }
    auto it = std::upper_bound(panel_starts_.begin(), panel_starts_.end(), t);
    std::size_t idx = (it == panel_starts_.begin()) ? 0 : (it - panel_starts_.begin() - 1);
    idx = std::min(idx, levels_[n - 1].size() - 1);
    return levels_[n - 1][idx].eval(std::min(t, levels_[n - 1][idx].b()));
}

double SnEvaluator::est_error(int n, double t) const {
    if (n == 0) return sampler_noise_ + interp_eps_;
    double est = 0.0;
    for (int j = 1; j <= n; ++j)
        est += delta_errs_[j] * std::pow(t, n - j) / factorial(n - j);
    const double e1 = integrated_eps_ + sampler_noise_ * std::sqrt(t + 1.0);
    est += e1 * std::pow(t, n - 1) / factorial(n - 1);
    return est;
}

double SnEvaluator::max_signed_S1(int sign, double a, double b) const {
    if (backend_ != Backend::line_formula)
        throw InvalidConfig("max_signed_S1: available on the line backend only");
    if (!(a > 2.0 * kPi))
        throw InvalidConfig("max_signed_S1: requires a > 2*pi (concavity of S_1 pieces)");
    if (!(b > a)) throw InvalidConfig("max_signed_S1: empty interval");
    std::vector<double> cuts{a};
    for (double g : zeros_.ordinates)
        if (g > a && g < b) cuts.push_back(g);
    cuts.push_back(b);

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double x0 = cuts[i], x1 = cuts[i + 1];
        best = std::max({best, sign * Sn(1, x0), sign * Sn(1, x1)});
        if (sign > 0) {
            // S decreases on each piece; an interior max of S_1 needs S to cross 0.
            const double eps = 1e-9 * std::max(1.0, x1);
            double lo = x0 + eps, hi = x1 - eps;
            if (hi <= lo) continue;
            double s_lo = Sn(0, lo), s_hi = Sn(0, hi);
            if (s_lo > 0.0 && s_hi < 0.0) {
                for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (Sn(0, mid) > 0.0 ? lo : hi) = mid;
                }
                best = std::max(best, Sn(1, 0.5 * (lo + hi)));
            }
        }
    }
    return best;
}

double SnEvaluator::sampled_max_Sn(int n, int sign, double a, double b, int samples,
                                   double* slack) const {
    samples = std::max(samples, 2);
    double best = -std::numeric_limits<double>::infinity();
    double deriv_sup = 0.0;
    double prev = 0.0;
    const double step = (b - a) / samples;
    for (int i = 0; i <= samples; ++i) {
        const double t = a + (b - a) * i / samples;
        const double v = sign * Sn(n, t);
        best = std::max(best, v);
        if (n >= 1)
            deriv_sup = std::max(deriv_sup, std::abs(Sn(n - 1, t)));
        else if (i > 0)
            deriv_sup = std::max(deriv_sup, 2.0 * std::abs(v - prev) / step);
        prev = v;
    }
    if (slack) *slack = (deriv_sup + 0.5) * step * 0.5;
    return best;
}

// --------------------------------------------------------------------------
// shift differences, single-point ops, RvM residual
// --------------------------------------------------------------------------

double delta_h_Sn(int n, const CriticalStripPoint& p, double h, const PrecisionPolicy& policy,
                  DeltaRoute route) {
    if (!(h >= 0.0)) throw InvalidConfig("delta_h_Sn: requires h >= 0");
    if (!(p.t - h > 0.0)) throw InvalidConfig("delta_h_Sn: requires t - h > 0");
    if (h == 0.0) return 0.0;
    if (route == DeltaRoute::direct) {
        if (n == 0) {
            return S_value(CriticalStripPoint(p.sigma, p.t + h), policy) -
                   S_value(CriticalStripPoint(p.sigma, p.t - h), policy);
        }
        SnEvaluator model(p.sigma, p.t + h + 0.5, n, policy);
        return model.Sn(n, p.t + h) - model.Sn(n, p.t - h);
    }
    // Finite-strip route (the O(h) remainder is the object of study):
    // (1/pi) Im{ i^n/(n-1)! Int_sigma^2 (v-sigma)^{n-1} Delta_h log zeta(v+it) dv }.
    if (n < 1) throw InvalidConfig("delta_h_Sn: finite-strip route requires n >= 1");
    HorizontalBranchLine upper(p.sigma, p.t + h, policy);
    HorizontalBranchLine lower(p.sigma, p.t - h, policy);
    auto f = [&](double v) {
        return std::pow(v - p.sigma, n - 1) * (upper.log_zeta_at(v) - lower.log_zeta_at(v));
    };
    std::vector<double> bp{p.sigma, 0.5 * (p.sigma + 2.0), 2.0};
    auto integral = integrate_adaptive_complex(f, bp, 1e-10);
    return im_of_i_pow(n, integral.value) / (kPi * factorial(n - 1));
}

IterateValue Sn_value(int n, const CriticalStripPoint& p, Route route,
                      const PrecisionPolicy& policy) {
    if (n < 0 || n > kMaxIterateOrder)
        throw InvalidConfig("Sn_value: n outside [0, max iterate order]");
    IterateValue out;
    out.n = n;
    out.point = p;
    out.route = route;
    if (route == Route::representation) {
        out.value = representation_Sn(n, p, policy, &out.est_error);
        return out;
    }
    if (n == 0) {
        out.value = S_value(p, policy);
        out.est_error = 10.0 * policy.target_abs_error;
        return out;
    }
    if (p.t == 0.0) {
        const DeltaConstant d = delta_constant(n, p.sigma, policy);
        out.value = d.value;
        out.est_error = d.est_error;
        return out;
    }
    SnEvaluator model(p.sigma, p.t + 0.25, n, policy);
    out.value = model.Sn(n, p.t);
    out.est_error = model.est_error(n, p.t);
    return out;
}

double rvm_residual(double t, const PrecisionPolicy& policy) {
    if (!(t >= 2.0)) throw InvalidConfig("rvm_residual: requires t >= 2");
    const ZeroOrdinateList zeros = count_zeros(t, policy);
    const double N = zeros.count_up_to(t);
    const double S = log_zeta_littlewood_path(CriticalStripPoint(0.5, t), policy).arg_over_pi;
    const double residual = N - (rvm_main_term(t) + S);
    if (std::abs(residual) >= 0.5)
        throw ReconciliationFailure("rvm_residual: count and formula disagree by >= 1/2");
    return residual;
}

}  // namespace zetarg
