#include "zetarg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "zetarg/convolution.hpp"
#include "zetarg/quadrature.hpp"

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

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::ordered_json policy_to_json(const PrecisionPolicy& p) {
    return {{"target_abs_error", p.target_abs_error},
            {"guard_digits", p.guard_digits},
            {"max_series_terms", p.max_series_terms}};
}

PrecisionPolicy policy_from_json(const nlohmann::json& j) {
    PrecisionPolicy p;
    if (j.contains("target_abs_error")) p.target_abs_error = j["target_abs_error"].get<double>();
    if (j.contains("guard_digits")) p.guard_digits = j["guard_digits"].get<int>();
    if (j.contains("max_series_terms")) p.max_series_terms = j["max_series_terms"].get<std::int64_t>();
    return p;
}

}  // namespace

std::size_t worker_count() {
    if (const char* env = std::getenv("ZETARG_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

// Deterministic parallel map: fixed blocks, workers pull block indices, and the
// per-block results are reduced in block order afterwards.
void parallel_blocks(std::size_t total, std::size_t block,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    const std::size_t nblocks = (total + block - 1) / block;
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(nblocks, 1));
    if (workers <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b)
            fn(b, b * block, std::min(total, (b + 1) * block));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= nblocks) break;
                fn(b, b * block, std::min(total, (b + 1) * block));
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

// --------------------------------------------------------------------------
// HuntConfig
// --------------------------------------------------------------------------

void HuntConfig::validate() const {
    policy.validate();
    if (n < 0 || n > kMaxIterateOrder) throw InvalidConfig("HuntConfig: n outside [0, 8]");
    if (!(T > std::exp(std::exp(1.0)) && std::isfinite(T)))
        throw InvalidConfig("HuntConfig: T too small (iterated logs undefined)");
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidConfig("HuntConfig: beta must lie in (0, 1)");
    const double L2 = log2_iter(T);
    if (!(h >= 0.0 && h <= 1.0 / L2))
        throw InvalidConfig("HuntConfig: h must lie in [0, 1/loglog T]");
    if (n == 0) {
        const double floor_h = c_floor / std::sqrt(std::log(T) * L2 * log3_iter(T));
        if (h < floor_h)
            throw InvalidConfig("HuntConfig: n = 0 requires h >= c (log T)^{-1/2} (loglog T)^{-1/2} (logloglog T)^{-1/2}");
        if (!(sigma > 0.5))
            throw InvalidConfig("HuntConfig: n = 0 requires sigma > 1/2 strictly");
    }
    if (!(sigma >= 0.5 && sigma <= 0.5 + 1.0 / L2))
        throw InvalidConfig("HuntConfig: sigma must lie in [1/2, 1/2 + 1/loglog T]");
    if (!sign_table(n, SignContext::variation_thm).contains(sign))
        throw InvalidSign("HuntConfig: sign not admissible for this n");
    if (refine_top < 0) throw InvalidConfig("HuntConfig: refine_top must be >= 0");
}

double HuntConfig::effective_step() const {
    if (grid_step > 0.0) return grid_step;
    const double by_T = 1.0 / std::log(T);
    return (h > 0.0) ? std::min(by_T, 0.25 * h) : by_T;
}

std::string HuntConfig::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["sigma"] = sigma;
    j["T"] = T;
    j["beta"] = beta;
    j["h"] = h;
    j["sign"] = sign;
    j["grid_step"] = grid_step;
    j["c_floor"] = c_floor;
    j["refine_top"] = refine_top;
    j["policy"] = policy_to_json(policy);
    return j.dump(2);
}

HuntConfig HuntConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    HuntConfig c;
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("sigma")) c.sigma = j["sigma"].get<double>();
    if (j.contains("T")) c.T = j["T"].get<double>();
    if (j.contains("beta")) c.beta = j["beta"].get<double>();
    if (j.contains("h")) c.h = j["h"].get<double>();
    if (j.contains("sign")) c.sign = j["sign"].get<int>();
    if (j.contains("grid_step")) c.grid_step = j["grid_step"].get<double>();
    if (j.contains("c_floor")) c.c_floor = j["c_floor"].get<double>();
    if (j.contains("refine_top")) c.refine_top = j["refine_top"].get<int>();
    if (j.contains("policy")) c.policy = policy_from_json(j["policy"]);
    return c;
}

double theoretical_scale(int n, double T, double h) {
    return h * std::sqrt(std::log(T)) * std::sqrt(log3_iter(T)) /
           std::pow(log2_iter(T), n - 0.5);
}

// --------------------------------------------------------------------------
// run_hunt
// --------------------------------------------------------------------------

HuntReport run_hunt(const HuntConfig& cfg) {
    cfg.validate();
    const double pad = std::max(cfg.h, 1.0 / log2_iter(cfg.T)) + 1.0;
    SnEvaluator model(cfg.sigma, cfg.T + pad, cfg.n + 1, cfg.policy);
    return run_hunt(cfg, model);
}

HuntReport run_hunt(const HuntConfig& cfg, const SnEvaluator& model) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();

    const double t0 = std::pow(cfg.T, cfg.beta);
    const double t1 = cfg.T;
    const double step = cfg.effective_step();
    const std::size_t points = static_cast<std::size_t>(std::floor((t1 - t0) / step)) + 1;
    const double L2 = log2_iter(cfg.T);
    const double h_cor = 1.0 / L2;
    const double pad = std::max(cfg.h, h_cor) + 1.0;
    if (model.sigma() != cfg.sigma || model.t_max() < t1 + pad - 1e-9 || model.n_max() < cfg.n + 1)
        throw InvalidConfig("run_hunt: shared model does not cover this configuration");

    HuntReport rep;
    rep.cfg = cfg;
    rep.grid_step = step;
    rep.grid_points = points;
    rep.corollary_h = h_cor;
    rep.rows.resize(points);

    struct BlockBest {
        double best = -std::numeric_limits<double>::infinity();
        double best_t = 0.0;
        double cor_best = -std::numeric_limits<double>::infinity();
        double cor_t = 0.0;
        std::size_t mv_checked = 0, mv_viol = 0;
        double mv_worst = std::numeric_limits<double>::infinity();
    };
    const std::size_t block = 8192;
    std::vector<BlockBest> bests((points + block - 1) / block);

    const bool line = (model.backend() == SnEvaluator::Backend::line_formula);
    // The inequality is an identity for the model's own iterate ladder (S_{n+1}
    // is the exact antiderivative of the S_n panels), so the allowance covers
    // only max-localization rounding, not model-vs-truth error.
    const double mv_allow = 1e-8;

    parallel_blocks(points, block, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        BlockBest& bb = bests[b];
        for (std::size_t i = lo; i < hi; ++i) {
            const double t = t0 + static_cast<double>(i) * step;
            GridRow& row = rep.rows[i];
            row.t = t;
            row.sign = cfg.sign;
            row.Sn = model.Sn(cfg.n, t);
            row.dSn = model.Sn(cfg.n, t + cfg.h) - row.Sn;
            const double val = cfg.sign * row.dSn;
            if (val > bb.best) {
                bb.best = val;
                bb.best_t = t;
            }
            // Corollary quantity at the canonical h = 1/loglog T.
            const double cor =
                cfg.sign * (model.Sn(cfg.n + 1, t + h_cor) - model.Sn(cfg.n + 1, t)) / h_cor;
            if (cor > bb.cor_best) {
                bb.cor_best = cor;
                bb.cor_t = t;
            }
            // Mean-value inequality at the hunt's own h (skipped when h = 0).
            if (cfg.h > 0.0) {
                const double rhs =
                    cfg.sign * (model.Sn(cfg.n + 1, t + cfg.h) - model.Sn(cfg.n + 1, t)) / cfg.h;
                double lhs;
                if (cfg.n == 1 && line && t > 2.0 * kPi + 0.1) {
                    lhs = model.max_signed_S1(cfg.sign, t, t + cfg.h);
                } else {
                    double slack = 0.0;
                    lhs = model.sampled_max_Sn(cfg.n, cfg.sign, t, t + cfg.h, 16, &slack) + slack;
                }
                const double margin = lhs - rhs;
                ++bb.mv_checked;
                if (margin < bb.mv_worst) bb.mv_worst = margin;
                if (margin < -mv_allow) {
                    ++bb.mv_viol;
                    row.flags = "mv_violation";
                }
            }
        }
    });

    rep.best_value = -std::numeric_limits<double>::infinity();
    rep.corollary_best = -std::numeric_limits<double>::infinity();
    rep.mean_value_worst_margin = std::numeric_limits<double>::infinity();
    for (const BlockBest& bb : bests) {
        if (bb.best > rep.best_value) {
            rep.best_value = bb.best;
            rep.best_t = bb.best_t;
        }
        if (bb.cor_best > rep.corollary_best) {
            rep.corollary_best = bb.cor_best;
            rep.corollary_best_t = bb.cor_t;
        }
        rep.mean_value_checked += bb.mv_checked;
        rep.mean_value_violations += bb.mv_viol;
        rep.mean_value_worst_margin = std::min(rep.mean_value_worst_margin, bb.mv_worst);
    }

    // Local refinement around the strongest candidates (never decreases the max).
    if (cfg.refine_top > 0 && cfg.h > 0.0) {
        std::vector<std::size_t> order(points);
        for (std::size_t i = 0; i < points; ++i) order[i] = i;
        const std::size_t keep = std::min<std::size_t>(cfg.refine_top, points);
        std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                          [&](std::size_t a, std::size_t b) {
                              const double va = cfg.sign * rep.rows[a].dSn;
                              const double vb = cfg.sign * rep.rows[b].dSn;
                              if (va != vb) return va > vb;
                              return rep.rows[a].t < rep.rows[b].t;
                          });
        for (std::size_t c = 0; c < keep; ++c) {
            const double tc = rep.rows[order[c]].t;
            for (int j = -15; j <= 15; ++j) {
                const double t = tc + static_cast<double>(j) * (step / 16.0);
                if (t < t0 || t + cfg.h > t1 + pad - 0.5 || t <= 0.0) continue;
                const double d = model.Sn(cfg.n, t + cfg.h) - model.Sn(cfg.n, t);
                const double val = cfg.sign * d;
                if (val > rep.best_value) {
                    rep.best_value = val;
                    rep.best_t = t;
                }
            }
        }
    }

    rep.theoretical_scale = theoretical_scale(cfg.n, cfg.T, cfg.h);
    rep.ratio = (rep.theoretical_scale > 0.0) ? rep.best_value / rep.theoretical_scale : 0.0;
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

std::string HuntReport::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["schema"] = "report_v1";
    j["kind"] = "hunt";
    j["config"] = nlohmann::ordered_json::parse(cfg.to_json());
    j["results"]["best_t"] = best_t;
    j["results"]["best_value"] = best_value;
    j["results"]["theoretical_scale"] = theoretical_scale;
    j["results"]["ratio"] = ratio;
    j["results"]["grid"]["t0"] = std::pow(cfg.T, cfg.beta);
    j["results"]["grid"]["t1"] = cfg.T;
    j["results"]["grid"]["step"] = grid_step;
    j["results"]["grid"]["points"] = grid_points;
    j["results"]["corollary"]["h"] = corollary_h;
    j["results"]["corollary"]["best"] = corollary_best;
    j["results"]["corollary"]["best_t"] = corollary_best_t;
    j["results"]["mean_value"]["checked"] = mean_value_checked;
    j["results"]["mean_value"]["violations"] = mean_value_violations;
    j["results"]["mean_value"]["worst_margin"] = mean_value_worst_margin;
    j["versions"]["zetarg"] = "1.0.0";
    j["versions"]["report"] = "report_v1";
    if (include_timing) j["timing"]["wall_time_s"] = wall_time_s;
    return j.dump(2);
}

// --------------------------------------------------------------------------
// Pipeline
// --------------------------------------------------------------------------

KernelParams PipelineConfig::kernel() const {
    double g = gamma;
    int d = delta;
    int dp = delta_prime;
    const bool odd = (n % 2 == 1);
    if (g == 0.0) g = odd ? 0.125 : (2.0 / 3.0);
    if (dp == 2) dp = odd ? (((n + 1) / 2) % 2 == 0 ? 1 : -1) : 0;
    if (d == 0) d = odd ? 1 : (((n + 2) / 2) % 2 == 0 ? 1 : -1);
    return KernelParams::for_prop24(g, d, dp, T);
}

void PipelineConfig::validate() const {
    policy.validate();
    if (n < 0 || n > kMaxIterateOrder) throw InvalidConfig("PipelineConfig: n outside [0, 8]");
    if (!(h >= 0.0 && h <= 1.0)) throw InvalidConfig("PipelineConfig: h must lie in [0, 1]");
    if (!(sigma >= 0.5 && sigma < 1.0))
        throw InvalidConfig("PipelineConfig: sigma must lie in [1/2, 1)");
    if (!kernel().admissible()) throw InvalidConfig("PipelineConfig: inadmissible kernel parameters");
}

std::string PipelineConfig::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["sigma"] = sigma;
    j["T"] = T;
    j["beta"] = beta;
    j["h"] = h;
    j["gamma"] = gamma;
    j["delta"] = delta;
    j["delta_prime"] = delta_prime;
    j["resonator"]["T"] = rspec.T;
    j["resonator"]["beta"] = rspec.beta;
    j["resonator"]["sigma"] = rspec.sigma;
    if (rspec.window_override)
        j["resonator"]["window_override"] = {rspec.window_override->lo, rspec.window_override->hi};
    j["resonator"]["support_cap"] = rspec.support_cap;
    j["policy"] = policy_to_json(policy);
    return j.dump(2);
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PipelineConfig c;
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("sigma")) c.sigma = j["sigma"].get<double>();
    if (j.contains("T")) c.T = j["T"].get<double>();
    if (j.contains("beta")) c.beta = j["beta"].get<double>();
    if (j.contains("h")) c.h = j["h"].get<double>();
    if (j.contains("gamma")) c.gamma = j["gamma"].get<double>();
    if (j.contains("delta")) c.delta = j["delta"].get<int>();
    if (j.contains("delta_prime")) c.delta_prime = j["delta_prime"].get<int>();
    if (j.contains("resonator")) {
        const auto& r = j["resonator"];
        if (r.contains("T")) c.rspec.T = r["T"].get<double>();
        if (r.contains("beta")) c.rspec.beta = r["beta"].get<double>();
        if (r.contains("sigma")) c.rspec.sigma = r["sigma"].get<double>();
        if (r.contains("window_override"))
            c.rspec.window_override =
                PrimeInterval{r["window_override"][0].get<double>(),
                              r["window_override"][1].get<double>()};
        if (r.contains("support_cap")) c.rspec.support_cap = r["support_cap"].get<std::int64_t>();
    }
    if (j.contains("policy")) c.policy = policy_from_json(j["policy"]);
    return c;
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    PipelineReport rep;
    rep.cfg = cfg;
    rep.kp = cfg.kernel();
    const KernelParams& kp = rep.kp;
    const double L2 = kp.log_log_T;

    const Resonator res = build_resonator(cfg.rspec);
    {
        std::size_t ki = 0;
        for (const auto& el : res.support)
            if (ki < res.kept.size() && el.n == res.kept[ki]) {
                rep.sum_f_sq += el.f * el.f;
                ++ki;
            }
    }

    const std::int64_t limit =
        static_cast<std::int64_t>(std::ceil(std::exp(L2 * (1.0 + 2.0 * kp.gamma)))) + 1;
    const PrimePowerTable table = lambda_sieve(std::max<std::int64_t>(limit, 4));

    // coefficient lists: Lambda(m) x_m(T,h) / ((log m)^{n+1} m^sigma)
    struct Coef {
        double log_m;
        double value;
    };
    auto collect = [&](double H) {
        std::vector<Coef> cs;
        const double alpha = kp.gamma * L2;
        for (const auto& e : table.prime_powers) {
            const double log_m = e.k * e.log_p;
            const double w = w_weight_logm(log_m, alpha, H);
            if (w == 0.0) continue;
            const double x_m = w * std::sin(cfg.h * log_m);
            cs.push_back({log_m, e.log_p * x_m /
                                     (std::pow(log_m, cfg.n + 1) *
                                      std::pow(std::exp(log_m), cfg.sigma))});
        }
        return cs;
    };
    const std::vector<Coef> ca = collect(0.0);
    const std::vector<Coef> cb = collect(L2);

    // Main term: sums against the one-sided closed-form moments.
    Complex A_inf(0.0, 0.0), B_inf(0.0, 0.0);
    for (const Coef& c : ca) A_inf += c.value * one_sided_moment(res, c.log_m, cfg.T);
    for (const Coef& c : cb) B_inf += c.value * one_sided_moment(res, c.log_m, cfg.T);
    rep.term_a = im_of_i_pow(cfg.n + 3, 3.0 * kp.delta * A_inf);
    rep.term_b = im_of_i_pow(cfg.n + 2, static_cast<double>(kp.delta_prime) * B_inf);
    rep.main_term = rep.term_a + rep.term_b;

    // Completion corrections.
    const double t_beta = std::pow(cfg.T, cfg.beta);
    auto low_piece = [&](double log_m) {
        auto f = [&](double t) {
            const Complex R = evaluate_R(res, t);
            const double ph = t * log_m;
            return Complex(std::cos(ph), -std::sin(ph)) * std::norm(R) *
                   std::exp(-0.5 * (t / cfg.T) * (t / cfg.T));
        };
        std::vector<double> bp;
        const int panels = std::max(4, static_cast<int>(std::ceil(t_beta / 0.25)));
        for (int i = 0; i <= panels; ++i) bp.push_back(t_beta * i / panels);
        return integrate_adaptive_complex(f, bp, 1e-10 * cfg.T).value;
    };
    Complex A_low(0.0, 0.0), B_low(0.0, 0.0);
    for (const Coef& c : ca) A_low += c.value * low_piece(c.log_m);
    for (const Coef& c : cb) B_low += c.value * low_piece(c.log_m);
    rep.completion_low = im_of_i_pow(cfg.n + 3, 3.0 * kp.delta * A_low) +
                         im_of_i_pow(cfg.n + 2, static_cast<double>(kp.delta_prime) * B_low);

    // [T log T, inf): |Phi| tail bound, same for every m.
    const double y0 = std::log(cfg.T);
    const double tail_gauss = cfg.T * std::exp(-0.5 * y0 * y0) / y0;
    double coef_abs = 0.0;
    for (const Coef& c : ca) coef_abs += 3.0 * std::abs(c.value);
    for (const Coef& c : cb) coef_abs += std::abs(c.value);
    const double r0 = res.R0();
    rep.completion_high = coef_abs * r0 * r0 * tail_gauss;

    rep.o_budget_unit = cfg.h * cfg.T * L2 * rep.sum_f_sq;

    // Lemma 3.3 budget for the a-sum side.
    rep.lemma33_budget = cfg.h * cfg.T *
                         std::pow(std::log(cfg.T), 2.0 * kp.gamma * (1.0 - cfg.sigma)) /
                         std::pow(L2, cfg.n - 1) * rep.sum_f_sq;

    // Kernel integral over the identity's u-range (positive by admissibility).
    const double U = std::pow(std::log(cfg.T), 3);
    auto kf = [&](double u) {
        const double a = kp.gamma * L2;
        const double fej = a * a * sinc(a * u) * sinc(a * u);
        return fej * (3.0 + 2.0 * (static_cast<double>(kp.delta_prime) / kp.delta) *
                                std::sin(u * L2));
    };
    {
        std::vector<double> bp;
        const int panels = static_cast<int>(std::ceil(2.0 * U / 0.5));
        for (int i = 0; i <= panels; ++i) bp.push_back(-U + 2.0 * U * i / panels);
        rep.kernel_integral = integrate_adaptive(kf, bp, 1e-8).value;
    }
    rep.kernel_bound = 5.0 * kPi * kp.gamma * L2;

    rep.half_moment = 0.5 * gaussian_moment(res, {MomentRequest::Kind::unit, {}, cfg.T},
                                            cfg.sigma, MomentMethod::closed_form);

    const double denom = rep.kernel_integral * rep.half_moment;
    if (denom > 0.0) {
        rep.lower_bound_computed =
            (rep.main_term - rep.completion_low - rep.completion_high) / denom;
        rep.lower_bound_net = (rep.main_term - rep.completion_low - rep.completion_high -
                               rep.o_budget_unit) /
                              denom;
    }
    return rep;
}

std::string PipelineReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "report_v1";
    j["kind"] = "pipeline";
    j["config"] = nlohmann::ordered_json::parse(cfg.to_json());
    j["kernel"]["gamma"] = kp.gamma;
    j["kernel"]["delta"] = kp.delta;
    j["kernel"]["delta_prime"] = kp.delta_prime;
    j["kernel"]["alpha"] = kp.alpha;
    j["kernel"]["log_log_T"] = kp.log_log_T;
    j["results"]["sum_f_sq"] = sum_f_sq;
    j["results"]["term_a"] = term_a;
    j["results"]["term_b"] = term_b;
    j["results"]["main_term"] = main_term;
    j["results"]["completion_low"] = completion_low;
    j["results"]["completion_high"] = completion_high;
    j["results"]["o_budget_unit"] = o_budget_unit;
    j["results"]["lemma33_budget"] = lemma33_budget;
    j["results"]["kernel_integral"] = kernel_integral;
    j["results"]["kernel_bound"] = kernel_bound;
    j["results"]["half_moment"] = half_moment;
    j["results"]["lower_bound_computed"] = lower_bound_computed;
    j["results"]["lower_bound_net"] = lower_bound_net;
    j["versions"]["zetarg"] = "1.0.0";
    return j.dump(2);
}

// --------------------------------------------------------------------------
// Outputs
// --------------------------------------------------------------------------

std::vector<std::filesystem::path> emit_outputs(const std::vector<HuntReport>& reports,
                                                const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;

    const auto csv_path = out_dir / "points.csv";
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw NumericError("emit_outputs: cannot open " + csv_path.string());
        csv << "t,Sn,delta_h_Sn,sign,flags\n";
        for (const HuntReport& rep : reports) {
            for (const GridRow& row : rep.rows) {
                csv << fmt_double(row.t) << ',' << fmt_double(row.Sn) << ','
                    << fmt_double(row.dSn) << ',' << row.sign << ',' << row.flags << '\n';
            }
        }
    }
    written.push_back(csv_path);

    for (std::size_t k = 0; k < reports.size(); ++k) {
        const auto path = out_dir / ("report_" + std::to_string(k) + ".json");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw NumericError("emit_outputs: cannot open " + path.string());
        out << reports[k].to_json() << '\n';
        written.push_back(path);
    }
    return written;
}

}  // namespace zetarg
