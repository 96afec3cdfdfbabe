#pragma once

#include <memory>
#include <vector>

#include "zetarg/policy.hpp"
#include "zetarg/quadrature.hpp"
#include "zetarg/zeta.hpp"

namespace zetarg {

inline constexpr int kMaxIterateOrder = 8;  // factorial prefactors degrade conditioning beyond

enum class Route { representation, recursive };

struct IterateValue {
    int n = 0;
    CriticalStripPoint point;
    double value = 0.0;
    Route route = Route::recursive;
    double est_error = 0.0;
};

struct DeltaConstant {
    enum class Scheme { closed_form_even, quadrature_odd };
    int n = 1;
    double sigma = 0.5;
    double value = 0.0;
    Scheme route = Scheme::closed_form_even;
    double est_error = 0.0;
};

// S(sigma, t) = (1/pi) arg zeta(sigma + it) along the Littlewood path.
double S_value(const CriticalStripPoint& p, const PrecisionPolicy& policy);

// delta_{n,sigma}: closed polynomial form for even n; for odd n = 2k-1 the
// (2k-1)-fold nested integral collapsed (Fubini) to
//   (-1)^{k-1}/pi * Int_sigma^inf (u-sigma)^{2k-2}/(2k-2)! * log|zeta(u)| du,
// evaluated by two independent quadrature schemes that must agree to 1e-8.
DeltaConstant delta_constant(int n, double sigma, const PrecisionPolicy& policy);

// The two odd-n schemes individually (exposed for the certification tests):
// A = singularity-subtracted composite Gauss-Legendre, B = tanh-sinh.
double delta_odd_scheme_gl(int n, double sigma, const PrecisionPolicy& policy, double* est = nullptr);
double delta_odd_scheme_tanh_sinh(int n, double sigma, const PrecisionPolicy& policy, double* est = nullptr);

// Representation route for n >= 1 and t > 0:
//   S_n(sigma,t) = (1/pi) Im{ i^n/(n-1)! Int_sigma^inf (v-sigma)^{n-1} log zeta(v+it) dv },
// with branch-tracked log zeta on [sigma, 2], principal log beyond, and the
// tail truncated where the dyadic bound 2*|log(1 - 2^{1-v})| falls below target.
double representation_Sn(int n, const CriticalStripPoint& p, const PrecisionPolicy& policy,
                         double* est = nullptr);

// Piecewise-Chebyshev model of tau -> S(sigma, tau) on [0, t_max] with exact
// panel antidifferentiation for the iterates S_1..S_n_max (recursive route).
// Panels split at every zero ordinate; S has unit jumps there when sigma = 1/2.
//
// Backends: at sigma = 1/2 the sampler is the argument-principle form
// N(tau) - 1 - theta(tau)/pi over the certified ordinate list (exact and
// cheap); off the line it walks the horizontal segment from the corner
// 2 + i tau.  Both agree with log_zeta_littlewood_path (tested property).
class SnEvaluator {
  public:
    enum class Backend { automatic, line_formula, path_tracked };

    SnEvaluator(double sigma, double t_max, int n_max, const PrecisionPolicy& policy,
                Backend backend = Backend::automatic);

    double sigma() const { return sigma_; }
    double t_max() const { return t_max_; }
    int n_max() const { return n_max_; }
    Backend backend() const { return backend_; }

    // S_n(sigma, t) for 0 <= n <= n_max, 0 <= t <= t_max (n >= 1 at t = 0 gives delta_n).
    double Sn(int n, double t) const;
    // Conservative absolute error estimate for Sn(n, t).
    double est_error(int n, double t) const;

    const ZeroOrdinateList& zeros() const { return zeros_; }
    double delta_n(int n) const;

    // Exact maximum of sign * S_1 over [a, b] (line backend, a > 2*pi):
    // between consecutive ordinates S_1 is strictly concave (S_1'' = -theta'/pi < 0),
    // so each piece's maximum is at an endpoint or the unique interior root of S.
    double max_signed_S1(int sign, double a, double b) const;
    // Dense-sampling fallback for general n; `slack` receives the certified
    // discretization allowance |S_{n-1}|_sup * step / 2.
    double sampled_max_Sn(int n, int sign, double a, double b, int samples, double* slack) const;

  private:
    double sample_S(double tau) const;
    void build_panels();

    double sigma_;
    double t_max_;
    int n_max_;
    PrecisionPolicy policy_;
    Backend backend_;
    ZeroOrdinateList zeros_;
    std::vector<double> deltas_;      // delta_{n,sigma}, index n (0 unused)
    std::vector<double> delta_errs_;
    std::vector<ChebPanel> s_panels_;              // level 0: S itself
    std::vector<std::vector<ChebPanel>> levels_;   // levels_[n-1]: S_n panels
    std::vector<double> panel_starts_;
    double sampler_noise_ = 0.0;
    double interp_eps_ = 0.0;      // max panel tail
    double integrated_eps_ = 0.0;  // sum of tail * width
};

// Two-sided shift difference Delta_h S_n(sigma,t) = S_n(sigma,t+h) - S_n(sigma,t-h).
enum class DeltaRoute { direct, finite_strip };
double delta_h_Sn(int n, const CriticalStripPoint& p, double h, const PrecisionPolicy& policy,
                  DeltaRoute route = DeltaRoute::direct);

// Single-point iterate evaluation by either route (builds a one-shot model for
// the recursive route; use SnEvaluator directly for sweeps).
IterateValue Sn_value(int n, const CriticalStripPoint& p, Route route,
                      const PrecisionPolicy& policy);

// N(t) - [main(t) + S(t)]; throws ReconciliationFailure when |residual| >= 0.5.
double rvm_residual(double t, const PrecisionPolicy& policy);

}  // namespace zetarg
