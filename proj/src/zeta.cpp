#include "zetarg/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <vector>

#include "zetarg/quadrature.hpp"

namespace zetarg {

namespace {

constexpr double kPi = std::numbers::pi;

// --------------------------------------------------------------------------
// Shared tables
// --------------------------------------------------------------------------

// B_{2k} / (2k)!  via  2 (-1)^{k+1} zeta(2k) / (2 pi)^{2k}.
const std::vector<double>& b2k_over_fact() {
    static const std::vector<double> table = [] {
        constexpr int kMax = 60;
        std::vector<double> t(kMax + 1, 0.0);
        for (int k = 1; k <= kMax; ++k) {
            double z2k;
            if (k == 1)
                z2k = kPi * kPi / 6.0;
            else if (k == 2)
                z2k = std::pow(kPi, 4) / 90.0;
            else if (k == 3)
                z2k = std::pow(kPi, 6) / 945.0;
            else {
                z2k = 1.0;
                for (int n = 2;; ++n) {
                    const double term = std::pow(static_cast<double>(n), -2.0 * k);
                    z2k += term;
                    if (term < 1e-22) break;
                }
            }
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            t[k] = sign * 2.0 * z2k / std::pow(2.0 * kPi, 2.0 * k);
        }
        return t;
    }();
    return table;
}

// log n table, grown on demand; fetch the span once per summation.
const double* log_int_table(std::int64_t n) {
    static std::mutex mu;
    static std::vector<double>* logs = new std::vector<double>{0.0, 0.0};  // leaked on purpose
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<std::int64_t>(logs->size()) <= n) {
        auto* grown = new std::vector<double>(*logs);
        grown->reserve(static_cast<std::size_t>(n + 1));
        while (static_cast<std::int64_t>(grown->size()) <= n)
            grown->push_back(std::log(static_cast<double>(grown->size())));
        logs = grown;  // old table intentionally kept alive for concurrent readers
    }
    return logs->data();
}

struct EmCore {
    Complex partial{0.0, 0.0};  // everything except the pole term N^{1-s}/(s-1)
    double n_pow_1ms_re = 0.0;  // N^{1-s} (complex), kept separately for the scaled form
    double n_pow_1ms_im = 0.0;
    double bound = 0.0;         // truncation + rounding, absolute
    bool ok = false;
};

// Euler-Maclaurin core at a fixed truncation point N.  Backlund's remainder:
// |R_q| <= |B_{2q+2}/(2q+2)! * (s)_{2q+1} * N^{-s-2q-1}| * |s+2q+1|/(sigma+2q+1).
EmCore em_core_at(Complex s, std::int64_t N, double target, bool skip_first = false) {
    const double sigma = s.real();
    const auto& b2f = b2k_over_fact();

    // sum_{j=1}^{N-1} j^{-s} with Neumaier compensation
    const double* ljs = log_int_table(N);
    const bool half = (sigma == 0.5);
    double sre = 0.0, sim = 0.0, cre = 0.0, cim = 0.0, abs_sum = 0.0;
    for (std::int64_t j = skip_first ? 2 : 1; j < N; ++j) {
        const double lj = ljs[j];
        const double mag =
            half ? 1.0 / std::sqrt(static_cast<double>(j)) : std::exp(-sigma * lj);
        // Pre-reduce the phase so sincos takes its fast path; the k*ulp(2pi)
        // reduction slack is below the inherent fl(t*log j) rounding noise.
        const double ph_raw = s.imag() * lj;
        const double ph = ph_raw - std::rint(ph_raw * (1.0 / (2.0 * kPi))) * (2.0 * kPi);
        double sn, cn;
        ::sincos(ph, &sn, &cn);
        const double tre = mag * cn;
        const double tim = -mag * sn;
        abs_sum += mag;
        // branchless TwoSum compensation
        double t = sre + tre;
        double z = t - sre;
        cre += (sre - (t - z)) + (tre - z);
        sre = t;
        t = sim + tim;
        z = t - sim;
        cim += (sim - (t - z)) + (tim - z);
        sim = t;
    }
    Complex sum(sre + cre, sim + cim);

    const double lnN = std::log(static_cast<double>(N));
    const Complex n_pow_ms = std::exp(-s * lnN);            // N^{-s}
    const Complex n_pow_1ms = n_pow_ms * static_cast<double>(N);  // N^{1-s}
    sum += 0.5 * n_pow_ms;
    abs_sum += 0.5 * std::abs(n_pow_ms);

    // Correction terms T_k = b2f[k] * (s)_{2k-1} * N^{1-s-2k}, built iteratively.
    Complex rising = s;                       // (s)_{2k-1} for k = 1
    Complex small_pow = n_pow_ms / static_cast<double>(N);  // N^{-s-1}
    const double inv_n2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
    EmCore out;
    double best_bound = std::numeric_limits<double>::infinity();
    Complex acc = sum;
    double abs_acc = abs_sum;
    const int q_max = static_cast<int>(b2f.size()) - 2;
    for (int k = 1; k <= q_max; ++k) {
        const Complex term = b2f[k] * rising * small_pow;
        acc += term;
        abs_acc += std::abs(term);
        // remainder bound after keeping k terms
        const Complex rising_next = rising * (s + Complex(2.0 * k - 1.0, 0.0)) *
                                    (s + Complex(2.0 * k, 0.0));
        const double denom = sigma + 2.0 * k + 1.0;
        if (denom > 0.0) {
            const double rem = std::abs(b2f[k + 1]) * std::abs(rising_next) *
                               std::abs(small_pow) * inv_n2 *
                               (std::abs(s + Complex(2.0 * k + 1.0, 0.0)) / denom);
            const double round = 8.0 * std::numeric_limits<double>::epsilon() * abs_acc;
            if (rem + round < best_bound) {
                best_bound = rem + round;
                out.partial = acc;
                out.bound = rem + round;
                out.n_pow_1ms_re = n_pow_1ms.real();
                out.n_pow_1ms_im = n_pow_1ms.imag();
                out.ok = true;
            }
            if (rem + round <= target) return out;
            if (rem > 10.0 * best_bound) break;  // terms diverging; bigger N needed
        }
        rising = rising_next;
        small_pow *= inv_n2;
    }
    return out;  // best effort; caller checks out.bound
}

EmCore em_core(Complex s, const PrecisionPolicy& policy, bool skip_first = false) {
    const double target = policy.internal_target();
    // N must exceed |t|/(2 pi) for the correction terms to decay; the 1.25
    // headroom lets the first pass reach ~1e-12 without doubling.
    std::int64_t N = std::max<std::int64_t>(
        16, static_cast<std::int64_t>(std::ceil(1.25 * std::abs(s.imag()) / (2.0 * kPi))) + 16);
    EmCore best;
    best.bound = std::numeric_limits<double>::infinity();
    while (N <= policy.max_series_terms) {
        EmCore c = em_core_at(s, N, target, skip_first);
        if (c.ok && c.bound < best.bound) best = c;
        if (best.ok && best.bound <= target) return best;
        N *= 2;
    }
    if (best.ok && best.bound <= policy.target_abs_error) return best;
    throw PrecisionUnreachable("zeta_eval: Euler-Maclaurin could not reach target_abs_error");
}

}  // namespace

Complex zeta_eval(Complex s, const PrecisionPolicy& policy) {
    policy.validate();
    if (s == Complex(1.0, 0.0)) throw PoleAtOne();
    EmCore c = em_core(s, policy);
    const Complex n_pow_1ms(c.n_pow_1ms_re, c.n_pow_1ms_im);
    return c.partial + n_pow_1ms / (s - Complex(1.0, 0.0));
}

Complex zeta_eval(const CriticalStripPoint& p, const PrecisionPolicy& policy) {
    return zeta_eval(Complex(p.sigma, p.t), policy);
}

Complex zeta_times_s_minus_1(Complex s, const PrecisionPolicy& policy) {
    policy.validate();
    if (s == Complex(1.0, 0.0)) return Complex(1.0, 0.0);
    EmCore c = em_core(s, policy);
    const Complex n_pow_1ms(c.n_pow_1ms_re, c.n_pow_1ms_im);
    return c.partial * (s - Complex(1.0, 0.0)) + n_pow_1ms;
}

Complex zeta_minus_one(Complex s, const PrecisionPolicy& policy) {
    policy.validate();
    if (s == Complex(1.0, 0.0)) throw PoleAtOne();
    EmCore c = em_core(s, policy, /*skip_first=*/true);
    const Complex n_pow_1ms(c.n_pow_1ms_re, c.n_pow_1ms_im);
    return c.partial + n_pow_1ms / (s - Complex(1.0, 0.0));
}

// --------------------------------------------------------------------------
// log Gamma, theta, Hardy Z
// --------------------------------------------------------------------------

Complex log_gamma(Complex z) {
    if (z.real() <= 0.0 && z.imag() == 0.0 && z.real() == std::floor(z.real()))
        throw InvalidConfig("log_gamma: pole at non-positive integer");
    Complex shift(0.0, 0.0);
    while (std::abs(z) < 24.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    // Stirling series with B_2..B_14.
    static const double B[7] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                                5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
    const Complex lz = std::log(z);
    Complex out = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * kPi);
    const Complex z2 = z * z;
    Complex zp = z;
    for (int k = 0; k < 7; ++k) {
        out += B[k] / ((2.0 * k + 2.0) * (2.0 * k + 1.0) * zp);
        zp *= z2;
    }
    return out + shift;
}

double riemann_siegel_theta(double t) {
    const Complex lg = log_gamma(Complex(0.25, 0.5 * t));
    return lg.imag() - 0.5 * t * std::log(kPi);
}

double hardy_Z(double t, const PrecisionPolicy& policy) {
    const double th = riemann_siegel_theta(t);
    const Complex z = zeta_eval(Complex(0.5, t), policy);
    return (std::cos(th) * z.real() - std::sin(th) * z.imag());
}

// --------------------------------------------------------------------------
// Littlewood-path branch tracking
// --------------------------------------------------------------------------

namespace {

constexpr double kMinStep = 1e-6;
constexpr double kMaxArgStep = 0.5 * kPi;

// One adaptive sweep of log zeta along a straight segment, from `from` to `to`
// (complex endpoints with either Re or Im fixed).  `start_log` is the branch
// value at `from`.  Steps shrink as 1/|zeta'/zeta| and halve whenever the
// argument increment reaches pi/2.
Complex track_segment(Complex from, Complex to, Complex start_log, Complex start_zeta,
                      const PrecisionPolicy& policy) {
    const double total = std::abs(to - from);
    if (total == 0.0) return start_log;
    const Complex dir = (to - from) / total;
    double done = 0.0;
    Complex lz = start_log;
    Complex z_prev = start_zeta;
    double deriv_est = 0.6;  // |zeta'/zeta|; exact starting value is irrelevant
    while (done < total) {
        double step = std::min({0.9 / std::max(deriv_est, 0.2), 2.5, total - done});
        for (;;) {
            const Complex s_new = from + dir * (done + step);
            const Complex z_new = zeta_eval(s_new, policy);
            if (std::abs(z_new) < 1e-300)
                throw StepCollapse("track_segment: zeta vanished mid-segment");
            const Complex dl = std::log(z_new / z_prev);
            if (std::abs(dl.imag()) >= kMaxArgStep) {
                step *= 0.5;
                if (step < kMinStep)
                    throw StepCollapse("track_segment: step floor reached without certified crossing");
                continue;
            }
            lz += dl;
            z_prev = z_new;
            deriv_est = std::abs(dl) / step;
            done += step;
            break;
        }
    }
    return lz;
}

// Branch value of log zeta at sigma + it along the Littlewood path.
// Endpoint must not be a zero (caller handles the averaging convention).
Complex littlewood_log_zeta(double sigma, double t, const PrecisionPolicy& policy) {
    // Vertical segment 2 -> 2 + it, starting from log zeta(2) real (arg zeta(2) = 0).
    const Complex z2 = zeta_eval(Complex(2.0, 0.0), policy);
    Complex lz(std::log(z2.real()), 0.0);
    Complex corner_zeta = z2;
    if (t > 0.0) {
        lz = track_segment(Complex(2.0, 0.0), Complex(2.0, t), lz, z2, policy);
        corner_zeta = zeta_eval(Complex(2.0, t), policy);
    }
    if (sigma != 2.0)
        lz = track_segment(Complex(2.0, t), Complex(sigma, t), lz, corner_zeta, policy);
    return lz;
}

}  // namespace

Complex log_zeta_at_corner(double t, const PrecisionPolicy& policy) {
    // |Im log zeta(2+i tau)| <= sum Lambda(m)/(m^2 log m) = log zeta(2) < pi/2,
    // so the continued branch coincides with the principal logarithm.
    return std::log(zeta_eval(Complex(2.0, t), policy));
}

Complex log_zeta_from_corner(double sigma, double t, const PrecisionPolicy& policy) {
    const Complex corner_log = log_zeta_at_corner(t, policy);
    if (sigma == 2.0) return corner_log;
    const Complex corner_zeta = zeta_eval(Complex(2.0, t), policy);
    return track_segment(Complex(2.0, t), Complex(sigma, t), corner_log, corner_zeta, policy);
}

LogZetaValue log_zeta_littlewood_path(const CriticalStripPoint& p, const PrecisionPolicy& policy) {
    if (p.sigma < 0.5) throw InvalidConfig("log_zeta_littlewood_path: requires sigma >= 1/2");
    if (!(p.t > 0.0)) throw InvalidConfig("log_zeta_littlewood_path: requires t > 0 (pole on the t = 0 path)");
    const Complex z_end = zeta_eval(Complex(p.sigma, p.t), policy);
    if (std::abs(z_end) < 10.0 * policy.target_abs_error) {
        // Zero on the path endpoint: two-sided averaging convention.
        const double eps = std::max(1e-6, 1e5 * policy.target_abs_error);
        const Complex above = littlewood_log_zeta(p.sigma, p.t + eps, policy);
        const Complex below = littlewood_log_zeta(p.sigma, p.t - eps, policy);
        LogZetaValue v;
        v.log_modulus = 0.5 * (above.real() + below.real());
        v.arg_over_pi = 0.5 * (above.imag() + below.imag()) / kPi;
        v.at_zero = true;
        return v;
    }
    const Complex lz = littlewood_log_zeta(p.sigma, p.t, policy);
    return {lz.real(), lz.imag() / kPi, false};
}

HorizontalBranchLine::HorizontalBranchLine(double sigma_min, double t,
                                           const PrecisionPolicy& policy)
    : sigma_min_(sigma_min), t_(t), policy_(policy) {
    if (sigma_min > 2.0) throw InvalidConfig("HorizontalBranchLine: sigma_min must be <= 2");
    Complex lz = log_zeta_at_corner(t, policy);
    Complex z_prev = zeta_eval(Complex(2.0, t), policy);
    vs_.push_back(2.0);
    logs_.push_back(lz);
    zetas_.push_back(z_prev);
    double v = 2.0;
    double deriv_est = 1.0;
    while (v > sigma_min_) {
        double step = std::min({0.45 / std::max(deriv_est, 0.25), 0.5, v - sigma_min_});
        for (;;) {
            const double v_new = v - step;
            const Complex z_new = zeta_eval(Complex(v_new, t), policy_);
            if (std::abs(z_new) < 1e-300)
                throw StepCollapse("HorizontalBranchLine: zeta vanished on the ray");
            const Complex dl = std::log(z_new / z_prev);
            if (std::abs(dl.imag()) >= 0.25 * kPi) {  // quarter-pi margin so queries between
                step *= 0.5;                          // samples stay on the branch
                if (step < kMinStep)
                    throw StepCollapse("HorizontalBranchLine: step floor reached");
                continue;
            }
            lz += dl;
            z_prev = z_new;
            deriv_est = std::abs(dl) / step;
            v = v_new;
            vs_.push_back(v);
            logs_.push_back(lz);
            zetas_.push_back(z_prev);
            break;
        }
    }
}

Complex HorizontalBranchLine::log_zeta_at(double v) const {
    if (v > 2.0 || v < sigma_min_ - 1e-12)
        throw InvalidConfig("HorizontalBranchLine: v outside [sigma_min, 2]");
    v = std::max(v, sigma_min_);
    // vs_ is decreasing; find nearest stored sample.
    auto it = std::lower_bound(vs_.begin(), vs_.end(), v, std::greater<double>());
    std::size_t idx = static_cast<std::size_t>(it - vs_.begin());
    if (idx == vs_.size()) idx = vs_.size() - 1;
    if (idx > 0 && std::abs(vs_[idx - 1] - v) < std::abs(vs_[idx] - v)) --idx;
    const Complex z = zeta_eval(Complex(v, t_), policy_);
    return logs_[idx] + std::log(z / zetas_[idx]);
}

VerticalBranchTracker::VerticalBranchTracker(double sigma, const PrecisionPolicy& policy)
    : sigma_(sigma), policy_(policy) {}

Complex VerticalBranchTracker::advance(double from_y, Complex from_log, double to_y, int depth) {
    const Complex z_from = zeta_eval(Complex(sigma_, from_y), policy_);
    const Complex z_to = zeta_eval(Complex(sigma_, to_y), policy_);
    const Complex dl = std::log(z_to / z_from);
    if (std::abs(dl.imag()) < kMaxArgStep) return from_log + dl;
    if (depth > 52) throw StepCollapse("VerticalBranchTracker: recursion floor reached");
    const double mid = 0.5 * (from_y + to_y);
    const Complex at_mid = advance(from_y, from_log, mid, depth + 1);
    return advance(mid, at_mid, to_y, depth + 1);
}

Complex VerticalBranchTracker::log_zeta_at(double y) {
    if (!(y > 0.0)) throw InvalidConfig("VerticalBranchTracker: requires y > 0");
    if (!last_y_) {
        last_log_ = littlewood_log_zeta(sigma_, y, policy_);
        last_y_ = y;
        return last_log_;
    }
    if (y < *last_y_ - 1e-15)
        throw InvalidConfig("VerticalBranchTracker: heights must be non-decreasing");
    if (y == *last_y_) return last_log_;
    last_log_ = advance(*last_y_, last_log_, y, 0);
    last_y_ = y;
    return last_log_;
}

// --------------------------------------------------------------------------
// Zero counting
// --------------------------------------------------------------------------

double ZeroOrdinateList::count_up_to(double t) const {
    const double tol = 1e-12 * std::max(1.0, t);
    auto it = std::lower_bound(ordinates.begin(), ordinates.end(), t - tol);
    double n = static_cast<double>(it - ordinates.begin());
    while (it != ordinates.end() && std::abs(*it - t) <= tol) {
        n += 0.5;
        ++it;
    }
    return n;
}

double rvm_main_term(double t) {
    const double x = t / (2.0 * kPi);
    return x * std::log(x) - x + 7.0 / 8.0;
}

namespace {

// Refine a sign-change bracket with the Illinois variant of regula falsi.
// The bracket is preserved; returns the refined ordinate and tight bracket.
ZeroOrdinateList::Bracket refine_bracket(double lo, double hi, double zlo, double zhi,
                                         const PrecisionPolicy& policy) {
    const double tol = std::max(1e-11, 4.0 * std::numeric_limits<double>::epsilon() * hi);
    double flo = zlo, fhi = zhi;
    for (int iter = 0; iter < 80 && (hi - lo) > tol; ++iter) {
        double mid;
        if (iter % 3 == 2) {
            mid = 0.5 * (lo + hi);  // guaranteed progress
        } else {
            mid = (lo * fhi - hi * flo) / (fhi - flo);
            if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        }
        const double fm = hardy_Z(mid, policy);
        if (fm == 0.0) {
            lo = hi = mid;
            flo = fhi = 0.0;
            break;
        }
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
            fhi *= 0.5;  // Illinois damping
        } else {
            hi = mid;
            fhi = fm;
            flo *= 0.5;
        }
    }
    return {lo, hi, flo, fhi};
}

}  // namespace

ZeroOrdinateList count_zeros(double t_max, const PrecisionPolicy& policy) {
    if (t_max < 0.0) throw InvalidConfig("count_zeros: t_max must be >= 0");
    ZeroOrdinateList out;
    if (t_max < 1.0) return out;  // first ordinate is above 14

    auto local_step = [](double t) {
        const double x = std::max(t, 20.0) / (2.0 * kPi);
        return std::min(0.5, 2.0 * kPi / (5.0 * std::log(x)));
    };

    struct Hit {
        double lo, hi, zlo, zhi;
    };
    std::vector<Hit> hits;

    // Dense scan of Z with a density-adaptive step.
    double t = 0.5;
    double z_prev = hardy_Z(t, policy);
    const double base_step = local_step(t_max);
    out.scan_step = base_step;
    double reconcile_at = t_max;
    {
        // Nudge the reconciliation point off any zero.
        double zr = hardy_Z(reconcile_at, policy);
        while (std::abs(zr) < 0.05) {
            reconcile_at += 0.37 * base_step;
            zr = hardy_Z(reconcile_at, policy);
        }
    }
    while (t < reconcile_at) {
        const double t_next = std::min(t + local_step(t), reconcile_at);
        const double z_next = hardy_Z(t_next, policy);
        if ((z_prev > 0) != (z_next > 0)) hits.push_back({t, t_next, z_prev, z_next});
        t = t_next;
        z_prev = z_next;
    }

    std::size_t refined_upto = 0;
    auto refine_new = [&]() {
        for (; refined_upto < hits.size(); ++refined_upto) {
            const Hit& h = hits[refined_upto];
            auto br = refine_bracket(h.lo, h.hi, h.zlo, h.zhi, policy);
            out.ordinates.push_back(0.5 * (br.lo + br.hi));
            out.certificates.push_back(br);
        }
        std::vector<std::size_t> order(out.ordinates.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return out.ordinates[a] < out.ordinates[b];
        });
        std::vector<double> ords(order.size());
        std::vector<ZeroOrdinateList::Bracket> certs(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            ords[i] = out.ordinates[order[i]];
            certs[i] = out.certificates[order[i]];
        }
        out.ordinates = std::move(ords);
        out.certificates = std::move(certs);
    };
    refine_new();

    // Completeness: reconcile with N = main + S (+O(1/t), absorbed by rounding).
    auto expected_count = [&]() {
        const LogZetaValue lz =
            log_zeta_littlewood_path(CriticalStripPoint(0.5, reconcile_at), policy);
        return rvm_main_term(reconcile_at) + lz.arg_over_pi;
    };

    for (int round = 0;; ++round) {
        const std::size_t found =
            static_cast<std::size_t>(std::count_if(out.ordinates.begin(), out.ordinates.end(),
                                                   [&](double g) { return g <= t_max; }));
        const double expected = expected_count();
        if (std::llround(expected) == static_cast<long long>(out.ordinates.size()) &&
            std::abs(expected - static_cast<double>(out.ordinates.size())) < 0.4) {
            out.refine_rounds = round;
            // Trim ordinates beyond t_max (possible after the nudge).
            while (!out.ordinates.empty() && out.ordinates.back() > t_max) {
                out.ordinates.pop_back();
                out.certificates.pop_back();
            }
            (void)found;
            return out;
        }
        if (round >= 4)
            throw ReconciliationFailure("count_zeros: zero count and RvM formula disagree");

        // A missed pair hides in a gap whose theta-increment looks too wide.
        std::vector<std::pair<double, double>> suspects;
        std::vector<double> pegs{0.5};
        for (double g : out.ordinates) pegs.push_back(g);
        pegs.push_back(reconcile_at);
        const double width_threshold = 1.7 - 0.15 * round;
        for (std::size_t i = 0; i + 1 < pegs.size(); ++i) {
            const double width =
                (riemann_siegel_theta(pegs[i + 1]) - riemann_siegel_theta(pegs[i])) / kPi;
            if (width >= width_threshold && pegs[i + 1] > 14.0)
                suspects.emplace_back(pegs[i], pegs[i + 1]);
        }
        if (suspects.empty()) suspects.emplace_back(0.5, reconcile_at);
        const double fine = base_step / std::pow(8.0, round + 1);
        for (auto [a, b] : suspects) {
            double u = a + 1e-9;
            double zu = hardy_Z(u, policy);
            while (u < b - 1e-9) {
                const double u_next = std::min(u + fine, b - 1e-9);
                const double zv = hardy_Z(u_next, policy);
                if ((zu > 0) != (zv > 0)) {
                    const bool known = std::any_of(hits.begin(), hits.end(), [&](const Hit& h) {
                        return h.lo <= u_next && u <= h.hi;
                    });
                    if (!known) hits.push_back({u, u_next, zu, zv});
                }
                u = u_next;
                zu = zv;
            }
        }
        refine_new();
    }
}

}  // namespace zetarg
