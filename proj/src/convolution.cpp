#include "zetarg/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "zetarg/iterates.hpp"
#include "zetarg/quadrature.hpp"
#include "zetarg/zeta.hpp"

namespace zetarg {

namespace {

constexpr double kPi = std::numbers::pi;

double im_of_i_pow(int n, Complex z) {
    switch (((n % 4) + 4) % 4) {
        case 0: return z.imag();
        case 1: return z.real();
        case 2: return -z.imag();
        default: return -z.real();
    }
}

std::vector<std::pair<double, double>> build_panels(double U, double width,
                                                    std::vector<double> extra_edges) {
    const int count = std::max(2, static_cast<int>(std::ceil(2.0 * U / width)));
    std::vector<double> edges;
    edges.reserve(count + 1 + extra_edges.size());
    for (int i = 0; i <= count; ++i) edges.push_back(-U + 2.0 * U * i / count);
    for (double e : extra_edges)
        if (e > -U && e < U) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<std::pair<double, double>> panels;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i + 1] - edges[i] > 1e-13) panels.emplace_back(edges[i], edges[i + 1]);
    return panels;
}

// Branch log zeta at every requested height (Littlewood branch; conjugation
// below the real axis), evaluated through vertical trackers in sorted order.
std::map<double, Complex> branch_log_zeta_at_heights(double sigma,
                                                     const std::vector<double>& heights,
                                                     const PrecisionPolicy& policy) {
    std::vector<double> pos, neg;
    for (double y : heights) {
        if (y > 0.0)
            pos.push_back(y);
        else if (y < 0.0)
            neg.push_back(-y);
        else
            throw InvalidConfig("convolution: integrand height hit the real-axis branch cut");
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    std::map<double, Complex> out;
    if (!pos.empty()) {
        VerticalBranchTracker tracker(sigma, policy);
        for (double y : pos) out[y] = tracker.log_zeta_at(y);
    }
    if (!neg.empty()) {
        VerticalBranchTracker tracker(sigma, policy);
        for (double y : neg) out[-y] = std::conj(tracker.log_zeta_at(y));
    }
    return out;
}

void validate_range(double t, double h, double T, double U, const ConvolutionOptions& opt) {
    if (!(h >= 0.0 && h <= 1.0)) throw InvalidConfig("convolution: requires 0 <= h <= 1");
    if (!(t >= std::pow(T, opt.beta) && t <= T * std::log(T)))
        throw InvalidConfig("convolution: requires T^beta <= t <= T log T");
    if (opt.require_positive_heights && !(t - U - h > 0.0))
        throw InvalidConfig(
            "convolution: t - (log T)^3 - h must be positive so the integrand heights stay "
            "off the real-axis branch cut (pick a larger t or disable the check)");
}

}  // namespace

ConvolutionReport lemma22_eval(double sigma, double t, double h, double alpha, double H,
                               double T, const PrecisionPolicy& policy,
                               const ConvolutionOptions& opt) {
    if (!(sigma > 0.5 && sigma <= 2.0))
        throw InvalidConfig("lemma22_eval: requires 1/2 < sigma <= 2");
    if (!(alpha > 0.0)) throw InvalidConfig("lemma22_eval: requires alpha > 0");
    const double U = std::pow(std::log(T), 3);
    validate_range(t, h, T, U, opt);

    double width = opt.panel_width;
    if (width <= 0.0) width = std::min(0.25, kPi / (4.0 * (alpha + std::abs(H)) + 4.0));
    auto panels = build_panels(U, width, {-t, -t - h, -t + h});

    // Pass 1: record every height the quadrature will touch.
    std::vector<double> heights;
    heights.reserve(panels.size() * 34);
    for (auto [a, b] : panels) {
        clenshaw_curtis_panel(
            [&](double u) {
                heights.push_back(t + u + h);
                if (h != 0.0) heights.push_back(t + u - h);
                return Complex(0.0, 0.0);
            },
            a, b);
    }
    std::sort(heights.begin(), heights.end());
    heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
    const auto logs = branch_log_zeta_at_heights(sigma, heights, policy);

    // Pass 2: assemble the oscillatory integral panel by panel.
    Complex lhs(0.0, 0.0);
    double quad_err = 0.0;
    for (auto [a, b] : panels) {
        auto res = clenshaw_curtis_panel(
            [&](double u) {
                const Complex up = logs.at(t + u + h);
                const Complex dn = (h == 0.0) ? up : logs.at(t + u - h);
                const double fej = alpha * alpha * sinc(alpha * u) * sinc(alpha * u);
                const Complex osc(std::cos(H * u), std::sin(H * u));
                return (up - dn) * fej * osc;
            },
            a, b);
        lhs += res.value;
        quad_err += res.est_error;
    }

    const std::int64_t limit =
        static_cast<std::int64_t>(std::ceil(std::exp(H + 2.0 * alpha))) + 1;
    const PrimePowerTable table = lambda_sieve(std::max<std::int64_t>(limit, 4));
    const auto sum = weighted_dirichlet_sum(alpha, H, sigma, t, h, 1, table);

    ConvolutionReport rep;
    rep.lhs = lhs;
    rep.rhs = Complex(0.0, -kPi) * sum.value;
    rep.residual = rep.lhs - rep.rhs;
    rep.quad_error = quad_err + static_cast<double>(heights.size()) * 1e-13;
    rep.paper_error_budget =
        h * (1.0 + std::abs(std::log(2.0 * sigma - 1.0))) * std::exp(2.0 * alpha + std::abs(H)) / U;
    rep.T = T;
    rep.t = t;
    rep.h = h;
    rep.sigma = sigma;
    rep.n = 0;
    rep.kp.alpha = alpha;
    rep.kp.H = H;
    rep.kp.log_log_T = log2_iter(T);
    rep.u_range = U;
    rep.lhs_evals = heights.size();
    return rep;
}

ConvolutionReport prop24_eval(int n, double sigma, double t, double h, const KernelParams& kp,
                              double T, const PrecisionPolicy& policy,
                              const ConvolutionOptions& opt) {
    if (!kp.admissible()) throw InvalidConfig("prop24_eval: inadmissible kernel parameters");
    const bool case_i = (n >= 1 && sigma >= 0.5 && sigma < 1.0);
    const bool case_ii = (n == 0 && sigma > 0.5 && sigma < 1.0);
    if (!case_i && !case_ii)
        throw InvalidConfig("prop24_eval: requires n >= 1 with sigma in [1/2,1) or n = 0 with sigma in (1/2,1)");
    const double L2 = log2_iter(T);
    if (std::abs(kp.log_log_T - L2) > 1e-9 || std::abs(kp.alpha - kp.gamma * L2) > 1e-9)
        throw InvalidConfig("prop24_eval: kernel params must carry alpha = gamma * loglog T for this T");
    const double U = std::pow(std::log(T), 3);
    validate_range(t, h, T, U, opt);

    double width = opt.panel_width;
    if (width <= 0.0) width = std::min(0.35, kPi / (2.0 * L2));

    Complex lhs(0.0, 0.0);
    double quad_err = 0.0;
    double model_term = 0.0;
    std::size_t evals = 0;

    if (n >= 1) {
        SnEvaluator model(sigma, t + U + h + 1.0, n, policy);
        std::vector<double> extra;
        for (double g : model.zeros().ordinates) {
            const double u = g - t;
            if (u > -U && u < U) extra.push_back(u);
        }
        auto panels = build_panels(U, width, std::move(extra));
        for (auto [a, b] : panels) {
            auto res = clenshaw_curtis_panel(
                [&](double u) {
                    ++evals;
                    const double d =
                        model.Sn(n, t + u + h) - model.Sn(n, t + u - h);
                    return Complex(d * combined_kernel(u, kp), 0.0);
                },
                a, b);
            lhs += res.value;
            quad_err += res.est_error;
        }
        // Kernel-weighted contribution of the model's own error estimate.
        model_term = 2.0 * model.est_error(n, t + U) * 5.0 * kPi * kp.gamma * L2;
    } else {
        auto panels = build_panels(U, width, {});
        std::vector<double> heights;
        for (auto [a, b] : panels) {
            clenshaw_curtis_panel(
                [&](double u) {
                    heights.push_back(t + u + h);
                    if (h != 0.0) heights.push_back(t + u - h);
                    return Complex(0.0, 0.0);
                },
                a, b);
        }
        std::sort(heights.begin(), heights.end());
        heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
        const auto logs = branch_log_zeta_at_heights(sigma, heights, policy);
        evals = heights.size();
        for (auto [a, b] : panels) {
            auto res = clenshaw_curtis_panel(
                [&](double u) {
                    const Complex up = logs.at(t + u + h);
                    const Complex dn = (h == 0.0) ? up : logs.at(t + u - h);
                    const double d = (up.imag() - dn.imag()) / kPi;
                    return Complex(d * combined_kernel(u, kp), 0.0);
                },
                a, b);
            lhs += res.value;
            quad_err += res.est_error;
        }
    }

    const std::int64_t limit =
        static_cast<std::int64_t>(std::ceil(std::exp(L2 * (1.0 + 2.0 * kp.gamma)))) + 1;
    const PrimePowerTable table = lambda_sieve(std::max<std::int64_t>(limit, 4));
    const auto A = dirichlet_sum(SumKind::a, kp, sigma, t, h, n, table);
    const auto B = dirichlet_sum(SumKind::b, kp, sigma, t, h, n, table);
    const double rhs = im_of_i_pow(n + 3, 3.0 * kp.delta * A.value) +
                       im_of_i_pow(n + 2, static_cast<double>(kp.delta_prime) * B.value);

    ConvolutionReport rep;
    rep.lhs = lhs;
    rep.rhs = Complex(rhs, 0.0);
    rep.residual = rep.lhs - rep.rhs;
    rep.quad_error = quad_err + model_term + static_cast<double>(evals) * 1e-13;
    rep.paper_error_budget = h * L2;
    rep.T = T;
    rep.t = t;
    rep.h = h;
    rep.sigma = sigma;
    rep.n = n;
    rep.kp = kp;
    rep.u_range = U;
    rep.lhs_evals = evals;
    return rep;
}

}  // namespace zetarg
