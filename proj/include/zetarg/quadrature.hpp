#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace zetarg {

// Deterministic pairwise summation (fixed reduction tree, independent of chunking).
double pairwise_sum(std::span<const double> xs);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs);

// sin(x)/x with a series branch near 0.
double sinc(double x);

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order and cached.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
    static const GaussLegendre& get(int order);
};

struct QuadratureResult {
    double value = 0.0;
    double est_error = 0.0;
};

struct ComplexQuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double est_error = 0.0;
};

// Adaptive composite Gauss-Legendre with bisection refinement.  Panels are
// seeded from `breakpoints` (must include a and b).  Throws
// QuadratureBudgetExceeded if the budget of panel evaluations runs out before
// the absolute-error target is met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    double abs_tol, int max_panels = 400000);

ComplexQuadratureResult integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f,
    std::span<const double> breakpoints, double abs_tol, int max_panels = 400000);

// Tanh-sinh (double exponential) quadrature over [a, b].  The integrand is
// called as f(x, da, db) where da = x - a and db = b - x are the exact
// distances to the endpoints, so integrable endpoint singularities can be
// evaluated without cancellation.
QuadratureResult tanh_sinh(const std::function<double(double, double, double)>& f,
                           double a, double b, double abs_tol, int max_level = 12);

// One fixed Clenshaw-Curtis panel of degree 16 with the embedded degree-8 rule
// (nodes nest) as the error estimate.  Used for long oscillatory integrals with
// a fixed panelization.
ComplexQuadratureResult clenshaw_curtis_panel(
    const std::function<std::complex<double>(double)>& f, double a, double b);

// Chebyshev interpolation of a smooth function on [a, b], sampled at the
// degree-p Chebyshev points of the first kind (all interior).  Supports exact
// antidifferentiation, which is how the iterate ladder S_1, S_2, ... is built.
class ChebPanel {
  public:
    ChebPanel() = default;
    ChebPanel(double a, double b, std::vector<double> coeffs);

    static ChebPanel fit(const std::function<double(double)>& f, double a, double b, int degree);

    double eval(double t) const;
    // Indefinite integral scaled to t-units; the additive constant is fixed so
    // that the antiderivative equals `left_value` at the panel's left edge.
    ChebPanel antiderivative(double left_value) const;
    // Integral of the interpolant over the whole panel.
    double integral() const;
    // Magnitude of the trailing coefficients: truncation-error estimate.
    double tail_estimate() const;

    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<double>& coeffs() const { return c_; }

  private:
    double a_ = 0.0, b_ = 1.0;
    std::vector<double> c_;  // c_[0]/2 * T_0 + sum_{k>=1} c_[k] T_k
};

}  // namespace zetarg
