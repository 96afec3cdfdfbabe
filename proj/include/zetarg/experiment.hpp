#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "zetarg/iterates.hpp"
#include "zetarg/kernel.hpp"
#include "zetarg/policy.hpp"
#include "zetarg/resonator.hpp"

namespace zetarg {

// Worker count for grid sweeps; ZETARG_WORKERS overrides, results are
// identical for any count (fixed-block deterministic reduction).
std::size_t worker_count();

// Extreme-value hunt for delta_n * (S_n(sigma, t+h) - S_n(sigma, t)) over
// [T^beta, T].  Fully deterministic, no seeds.
struct HuntConfig {
    int n = 1;
    double sigma = 0.5;
    double T = 1e4;
    double beta = 0.3;
    double h = 0.1;
    int sign = +1;          // validated against the variation-theorem sign table
    double grid_step = 0.0; // 0 = min(1/log T, h/4)
    double c_floor = 1.0;   // n = 0 short-range constant (default documented as arbitrary)
    int refine_top = 10;    // local refinement around the top candidates
    PrecisionPolicy policy;

    void validate() const;
    double effective_step() const;
    std::string to_json() const;
    static HuntConfig from_json(const std::string& text);
};

struct GridRow {
    double t = 0.0;
    double Sn = 0.0;
    double dSn = 0.0;  // S_n(t+h) - S_n(t)
    int sign = +1;
    std::string flags;
};

struct HuntReport {
    HuntConfig cfg;
    double best_t = 0.0;
    double best_value = 0.0;        // delta_n * dSn at best_t
    double theoretical_scale = 0.0; // h (log T)^{1/2} (log3T)^{1/2} / (log2T)^{n-1/2}
    double ratio = 0.0;
    std::size_t grid_points = 0;
    double grid_step = 0.0;
    double wall_time_s = 0.0;
    // Corollary post-processing (mean-value inequality at h = 1/log2T):
    double corollary_h = 0.0;
    double corollary_best = 0.0;    // max over t of sign * Delta S_{n+1} / h
    double corollary_best_t = 0.0;
    // max_{u in [t,t+h]} sign*S_n >= h^{-1} sign*Delta S_{n+1}, checked at all t:
    std::size_t mean_value_checked = 0;
    std::size_t mean_value_violations = 0;
    double mean_value_worst_margin = 0.0;
    std::vector<GridRow> rows;

    std::string to_json(bool include_timing = true) const;
};

double theoretical_scale(int n, double T, double h);

HuntReport run_hunt(const HuntConfig& cfg);
// Overload with a caller-owned iterate model (must match sigma and cover
// [0, T + max(h, 1/loglog T) + 1] at order n+1); results are identical to the
// self-building overload, which constructs exactly this model.
HuntReport run_hunt(const HuntConfig& cfg, const SnEvaluator& model);

// Resonated-moment pipeline: assembles the inequality chain
//   main resonated sum  -  completion corrections  -  unit-constant budget
//   >= (lower bound) * kernel_integral * half_moment
// with every intermediate quantity logged.
struct PipelineConfig {
    int n = 1;
    double sigma = 0.5;
    double T = 1e4;
    double beta = 0.3;
    double h = 0.01;
    ResonatorSpec rspec;
    double gamma = 0.0;   // 0 = parity default (1/8 for odd n, 2/3 for even n)
    int delta = 0;        // 0 = parity default
    int delta_prime = 2;  // 2 = parity default
    PrecisionPolicy policy;

    KernelParams kernel() const;
    void validate() const;
    std::string to_json() const;
    static PipelineConfig from_json(const std::string& text);
};

struct PipelineReport {
    PipelineConfig cfg;
    KernelParams kp;
    double sum_f_sq = 0.0;
    double term_a = 0.0;          // Im{3 i^{n+3} delta * A_inf}
    double term_b = 0.0;          // Im{i^{n+2} delta' * B_inf}
    double main_term = 0.0;       // term_a + term_b
    double completion_low = 0.0;  // signed [0, T^beta] correction
    double completion_high = 0.0; // bound on the [T log T, inf) tail
    double o_budget_unit = 0.0;   // h T log2T sum f^2
    double lemma33_budget = 0.0;  // a-sum error budget (Lemma 3.3 shape)
    double kernel_integral = 0.0; // int over +-(log T)^3 of the positive kernel / delta
    double kernel_bound = 0.0;    // 5 pi gamma log2T
    double half_moment = 0.0;     // int_0^inf |R|^2 Phi(t/T) dt (closed form)
    double lower_bound_computed = 0.0;
    double lower_bound_net = 0.0;

    std::string to_json() const;
};

PipelineReport run_pipeline(const PipelineConfig& cfg);

// CSV (header `t,Sn,delta_h_Sn,sign,flags`, one row per grid point, all
// reports concatenated) plus one report_<k>.json per report.  Returns the
// written paths; an empty report list still produces the header-only CSV.
std::vector<std::filesystem::path> emit_outputs(const std::vector<HuntReport>& reports,
                                                const std::filesystem::path& out_dir);

}  // namespace zetarg
