#pragma once

#include <complex>

#include "zetarg/kernel.hpp"
#include "zetarg/policy.hpp"

namespace zetarg {

// Two-sided evaluation of a convolution identity: LHS kernel integral by
// oscillatory quadrature, RHS Dirichlet sum with its prefactor, residual, and
// the two error budgets (measured quadrature error; displayed O-term with unit
// implied constant).  All inputs are echoed for reproducibility.
struct ConvolutionReport {
    std::complex<double> lhs{0.0, 0.0};
    std::complex<double> rhs{0.0, 0.0};
    std::complex<double> residual{0.0, 0.0};
    double quad_error = 0.0;
    double paper_error_budget = 0.0;
    double T = 0.0, t = 0.0, h = 0.0, sigma = 0.0;
    int n = 0;
    KernelParams kp;
    double u_range = 0.0;      // (log T)^3
    std::size_t lhs_evals = 0;

    bool within_budget() const {
        return std::abs(residual) <= quad_error + paper_error_budget;
    }
};

struct ConvolutionOptions {
    double beta = 0.3;          // validates T^beta <= t <= T log T
    double panel_width = 0.0;   // 0 = automatic
    // The identity's heights t + u +- h must stay positive (the Littlewood
    // branch has a cut on the real axis), which at desk scale means
    // t > (log T)^3 + h.  Set to false to allow straddling runs anyway.
    bool require_positive_heights = true;
};

// Lemma-2.2 identity:
//   Int_{-(log T)^3}^{(log T)^3} Delta_h log zeta(sigma + i(t+u)) (sin(alpha u)/u)^2 e^{iHu} du
//     = -pi i Sum_m Lambda(m) w_m(alpha,H) sin(h log m) / ((log m) m^{sigma+it})
//       + O( h (1+|log(2 sigma - 1)|) e^{2 alpha + |H|} / (log T)^3 ).
ConvolutionReport lemma22_eval(double sigma, double t, double h, double alpha, double H,
                               double T, const PrecisionPolicy& policy,
                               const ConvolutionOptions& opt = {});

// Prop-2.4 identity:
//   Int Delta_h S_n(sigma, t+u) (sin(gamma u log2T)/u)^2 (3 delta + 2 delta' sin(u log2T)) du
//     = Im{3 i^{n+3} delta A} + Im{i^{n+2} delta' B} + O(h log2T),
// where A, B are the kind-a/kind-b weighted Dirichlet sums.
ConvolutionReport prop24_eval(int n, double sigma, double t, double h, const KernelParams& kp,
                              double T, const PrecisionPolicy& policy,
                              const ConvolutionOptions& opt = {});

}  // namespace zetarg
