#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "zetarg/policy.hpp"

namespace zetarg {

using Complex = std::complex<double>;

// zeta(s) by Euler-Maclaurin summation with a rigorous tail bound (Backlund's
// remainder estimate).  Valid throughout the strip and on the real axis away
// from s = 1; meets policy.target_abs_error or throws PrecisionUnreachable.
Complex zeta_eval(Complex s, const PrecisionPolicy& policy);
Complex zeta_eval(const CriticalStripPoint& p, const PrecisionPolicy& policy);

// (s - 1) * zeta(s) with the pole handled analytically, so it stays accurate
// arbitrarily close to s = 1.
Complex zeta_times_s_minus_1(Complex s, const PrecisionPolicy& policy);

// zeta(s) - 1 with the leading term removed inside the summation, so the
// result keeps full relative accuracy when zeta(s) is within an ulp of 1
// (large Re s).  Pair with log1p for log zeta deep in the half plane.
Complex zeta_minus_one(Complex s, const PrecisionPolicy& policy);

// log(1 + w) accurate for small complex w.
inline Complex log1p_complex(Complex w) {
    if (std::abs(w) < 1e-3) {
        // w - w^2/2 + w^3/3 - w^4/4, remainder < |w|^5
        return w * (1.0 + w * (-0.5 + w * (1.0 / 3.0 + w * (-0.25))));
    }
    return std::log(Complex(1.0, 0.0) + w);
}

// log Gamma on the right half plane (Stirling with recurrence shift),
// principal branch for Re z > 0.
Complex log_gamma(Complex z);

// Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi.
double riemann_siegel_theta(double t);

// Hardy Z(t) = Re{ e^{i theta(t)} zeta(1/2 + it) }; real zeros = ordinates.
double hardy_Z(double t, const PrecisionPolicy& policy);

struct LogZetaValue {
    double log_modulus = 0.0;  // log |zeta|
    double arg_over_pi = 0.0;  // S(sigma, t); imaginary part of log zeta is pi * this
    bool at_zero = false;      // two-sided averaging convention applied
};

// Branch-tracked log zeta along the Littlewood path 2 -> 2 + it -> sigma + it,
// normalized by arg zeta(2) = 0.  Steps adaptively along both segments; the
// step halves whenever the argument increment reaches pi/2.  If the endpoint
// sits on a zero (|zeta| below 10x the precision target) the two one-sided
// limits are averaged and at_zero is set.
// Requires p.sigma >= 1/2 and p.t > 0 (the pole at s = 1 lies on the t = 0 path).
LogZetaValue log_zeta_littlewood_path(const CriticalStripPoint& p, const PrecisionPolicy& policy);

// Continuous-branch log zeta at the corner 2 + it.  Equal to the principal
// logarithm: |Im log zeta(2 + i tau)| <= log zeta(2) < pi/2 for all tau, so the
// branch continued from arg zeta(2) = 0 never leaves the principal strip.
Complex log_zeta_at_corner(double t, const PrecisionPolicy& policy);

// Branch value of log zeta at sigma + it (t > 0), anchored at the corner by the
// principal logarithm and walked along the horizontal segment only.  Equivalent
// to the fully stepped Littlewood path (the vertical segment never leaves the
// principal strip); used where many single-point branch values are needed.
Complex log_zeta_from_corner(double sigma, double t, const PrecisionPolicy& policy);

// Branch-continued log zeta along the horizontal ray v + it, v in [sigma_min, 2],
// walked once from the corner; arbitrary points on the ray are then reachable
// with a single ratio step from the nearest stored sample.
class HorizontalBranchLine {
  public:
    HorizontalBranchLine(double sigma_min, double t, const PrecisionPolicy& policy);
    Complex log_zeta_at(double v) const;  // v in [sigma_min, 2]
    double t() const { return t_; }

  private:
    double sigma_min_, t_;
    PrecisionPolicy policy_;
    std::vector<double> vs_;             // decreasing from 2 to sigma_min
    std::vector<Complex> logs_;
    std::vector<Complex> zetas_;
};

// Branch-continued log zeta along a vertical line sigma + i y for y > 0, with
// heights requested in non-decreasing order.  Anchored once via the Littlewood
// path at the first height.  For y < 0 use conjugation: the Littlewood branch
// satisfies log zeta(sigma - iy) = conj(log zeta(sigma + iy)).
class VerticalBranchTracker {
  public:
    VerticalBranchTracker(double sigma, const PrecisionPolicy& policy);
    Complex log_zeta_at(double y);  // y > 0, non-decreasing across calls

  private:
    Complex advance(double from_y, Complex from_log, double to_y, int depth);
    double sigma_;
    PrecisionPolicy policy_;
    std::optional<double> last_y_;
    Complex last_log_;
};

struct ZeroOrdinateList {
    struct Bracket {  // sign-change certificate for one ordinate
        double lo = 0.0, hi = 0.0;
        double z_lo = 0.0, z_hi = 0.0;
    };
    std::vector<double> ordinates;     // strictly ascending
    std::vector<Bracket> certificates; // one per ordinate
    double scan_step = 0.0;
    int refine_rounds = 0;

    // N(t): zeros with ordinate <= t, ordinates equal to t counted with weight 1/2.
    double count_up_to(double t) const;
};

// All ordinates of critical-line zeros in (0, t_max], found by dense Hardy-Z
// sign scanning plus bracket refinement.  Completeness is certified by
// reconciling the count against the Riemann-von Mangoldt main term plus the
// computed S(t); throws ReconciliationFailure if they disagree after refinement.
ZeroOrdinateList count_zeros(double t_max, const PrecisionPolicy& policy);

// Main term of the Riemann-von Mangoldt formula:
// (t/2pi) log(t/2pi) - t/2pi + 7/8.
double rvm_main_term(double t);

}  // namespace zetarg
