// zetarg: command-line laboratory for the argument of the Riemann zeta
// function, its iterated integrals, the convolution identities, resonator
// construction, and extreme-value hunts.
//
// Subcommands: sn eval | zeros count | conv lemma22 | conv prop24 |
//              res build | res moment | hunt run | pipeline run
//
// All subcommands accept --config <file.json> (a single declarative file whose
// sections mirror HuntConfig / ResonatorSpec / KernelParams / policy); command
// line flags override config values.  ZETARG_WORKERS controls the worker
// count; everything else is deterministic.
//
// Exit codes: 0 ok, 2 invalid configuration, 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetarg/convolution.hpp"
#include "zetarg/experiment.hpp"
#include "zetarg/iterates.hpp"
#include "zetarg/resonator.hpp"

using namespace zetarg;
using nlohmann::json;

namespace {

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

// flag defaulting: CLI flag wins, then config section key, then fallback
template <typename T>
T pick(const CLI::Option* opt, T flag_value, const json& section, const char* key, T fallback) {
    if (opt && opt->count() > 0) return flag_value;
    if (section.contains(key)) return section[key].get<T>();
    return fallback;
}

PrecisionPolicy policy_from(const json& cfg, double target_flag, const CLI::Option* target_opt) {
    PrecisionPolicy pol;
    if (cfg.contains("policy")) {
        const json& p = cfg["policy"];
        if (p.contains("target_abs_error")) pol.target_abs_error = p["target_abs_error"];
        if (p.contains("guard_digits")) pol.guard_digits = p["guard_digits"];
        if (p.contains("max_series_terms")) pol.max_series_terms = p["max_series_terms"];
    }
    if (target_opt && target_opt->count() > 0) pol.target_abs_error = target_flag;
    return pol;
}

ResonatorSpec rspec_from(const json& cfg) {
    ResonatorSpec spec;
    if (!cfg.contains("resonator")) return spec;
    const json& r = cfg["resonator"];
    if (r.contains("T")) spec.T = r["T"];
    if (r.contains("beta")) spec.beta = r["beta"];
    if (r.contains("sigma")) spec.sigma = r["sigma"];
    if (r.contains("support_cap")) spec.support_cap = r["support_cap"];
    if (r.contains("window_override"))
        spec.window_override = PrimeInterval{r["window_override"][0].get<double>(),
                                             r["window_override"][1].get<double>()};
    return spec;
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw NumericError("cannot open output file: " + out_path);
    out << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for S(sigma,t), its iterates, and resonance hunts"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // keep -h free for the shift parameter
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "declarative JSON config; flags override")
        ->configurable(false);

    // ---- sn eval ----------------------------------------------------------
    auto* sn = app.add_subcommand("sn", "argument iterates");
    auto* sn_eval = sn->add_subcommand("eval", "evaluate S, S_n and delta_{n,sigma} at a point");
    double se_sigma = 0.5, se_t = 30.0, se_target = 1e-10;
    int se_n = 1;
    std::string se_route = "both";
    sn_eval->add_option("--sigma", se_sigma, "real part, in [1/2, 1]");
    sn_eval->add_option("--t", se_t, "height t >= 0");
    auto* se_n_opt = sn_eval->add_option("--n", se_n, "iterate order (0 = S itself)");
    sn_eval->add_option("--route", se_route, "representation | recursive | both");
    auto* se_target_opt = sn_eval->add_option("--target", se_target, "absolute error target");

    // ---- zeros count ------------------------------------------------------
    auto* zeros = app.add_subcommand("zeros", "critical-line zero ordinates");
    auto* zeros_count = zeros->add_subcommand("count", "sign-scan zeros in (0, tmax]");
    double zc_tmax = 100.0;
    std::string zc_out;
    zeros_count->add_option("--tmax", zc_tmax, "upper end of the scan");
    zeros_count->add_option("--out", zc_out, "write ordinates as JSON to this file");

    // ---- conv lemma22 / prop24 ---------------------------------------------
    auto* conv = app.add_subcommand("conv", "two-sided convolution identity checks");
    auto* c22 = conv->add_subcommand("lemma22", "kernel integral vs weighted Dirichlet sum");
    c22->set_help_flag("--help", "print help");
    double c22_sigma = 0.75, c22_t = 800.0, c22_h = 0.01, c22_alpha = 1.0, c22_H = 0.0,
           c22_T = 1e4;
    std::string c22_out;
    c22->add_option("--sigma", c22_sigma);
    c22->add_option("--t", c22_t);
    c22->add_option("--h", c22_h);
    c22->add_option("--alpha", c22_alpha);
    c22->add_option("--H", c22_H);
    c22->add_option("--T", c22_T);
    c22->add_option("--out", c22_out, "write the report JSON to this file");

    auto* c24 = conv->add_subcommand("prop24", "iterate-difference kernel identity");
    c24->set_help_flag("--help", "print help");
    int c24_n = 1, c24_delta = 1, c24_dp = 1;
    double c24_sigma = 0.5, c24_t = 800.0, c24_h = 0.01, c24_gamma = 0.125, c24_T = 1e4;
    std::string c24_out;
    c24->add_option("--n", c24_n);
    c24->add_option("--sigma", c24_sigma);
    c24->add_option("--t", c24_t);
    c24->add_option("--h", c24_h);
    c24->add_option("--gamma", c24_gamma);
    c24->add_option("--delta", c24_delta);
    c24->add_option("--delta-prime", c24_dp);
    c24->add_option("--T", c24_T);
    c24->add_option("--out", c24_out);

    // ---- res build / moment -------------------------------------------------
    auto* res_cmd = app.add_subcommand("res", "resonator construction and moments");
    auto* res_build = res_cmd->add_subcommand("build", "build and serialize a resonator");
    double rb_T = 1e4, rb_beta = 0.3, rb_sigma = 0.5, rb_wlo = 0.0, rb_whi = 0.0;
    std::int64_t rb_cap = 1000000;
    std::string rb_out;
    auto* rb_T_o = res_build->add_option("--T", rb_T);
    auto* rb_beta_o = res_build->add_option("--beta", rb_beta);
    auto* rb_sigma_o = res_build->add_option("--sigma", rb_sigma);
    auto* rb_w_o =
        res_build->add_option("--window-lo", rb_wlo, "override window lower bound (exclusive)");
    res_build->add_option("--window-hi", rb_whi, "override window upper bound (inclusive)");
    auto* rb_cap_o = res_build->add_option("--support-cap", rb_cap);
    res_build->add_option("--out", rb_out, "write the resonator record to this file");

    auto* res_moment = res_cmd->add_subcommand("moment", "Gaussian-weighted moments of |R|^2");
    std::string rm_in;
    double rm_sigma = 0.5;
    std::vector<double> rm_cp;
    res_moment->add_option("--resonator", rm_in, "resonator JSON record")->required();
    res_moment->add_option("--sigma", rm_sigma);
    res_moment->add_option("--cp", rm_cp,
                           "pairs m c_m for the Lambda-series weight (default: G == 1)");

    // ---- hunt run ------------------------------------------------------------
    auto* hunt = app.add_subcommand("hunt", "extreme-value hunts");
    auto* hunt_run =
        hunt->add_subcommand("run", "sweep delta_n (S_n(t+h) - S_n(t)) over [T^beta, T]");
    hunt_run->set_help_flag("--help", "print help");
    HuntConfig hc;
    std::string hr_outdir = "hunt_out";
    auto* h_n = hunt_run->add_option("--n", hc.n);
    auto* h_sigma = hunt_run->add_option("--sigma", hc.sigma);
    auto* h_T = hunt_run->add_option("--T", hc.T);
    auto* h_beta = hunt_run->add_option("--beta", hc.beta);
    auto* h_h = hunt_run->add_option("--h", hc.h);
    auto* h_sign = hunt_run->add_option("--sign", hc.sign);
    auto* h_step = hunt_run->add_option("--grid-step", hc.grid_step);
    auto* h_c = hunt_run->add_option("--c-floor", hc.c_floor);
    auto* h_rt = hunt_run->add_option("--refine-top", hc.refine_top);
    hunt_run->add_option("--out-dir", hr_outdir);

    // ---- pipeline run ---------------------------------------------------------
    auto* pipe = app.add_subcommand("pipeline", "resonated-moment inequality chain");
    auto* pipe_run = pipe->add_subcommand("run", "assemble the lower-bound pipeline");
    pipe_run->set_help_flag("--help", "print help");
    PipelineConfig pc;
    std::string pr_out;
    auto* p_n = pipe_run->add_option("--n", pc.n);
    auto* p_sigma = pipe_run->add_option("--sigma", pc.sigma);
    auto* p_T = pipe_run->add_option("--T", pc.T);
    auto* p_beta = pipe_run->add_option("--beta", pc.beta);
    auto* p_h = pipe_run->add_option("--h", pc.h);
    auto* p_gamma = pipe_run->add_option("--gamma", pc.gamma);
    auto* p_delta = pipe_run->add_option("--delta", pc.delta);
    auto* p_dp = pipe_run->add_option("--delta-prime", pc.delta_prime);
    pipe_run->add_option("--out", pr_out);

    for (CLI::App* sub : {static_cast<CLI::App*>(sn), static_cast<CLI::App*>(sn_eval),
                          static_cast<CLI::App*>(zeros), static_cast<CLI::App*>(zeros_count),
                          static_cast<CLI::App*>(conv), static_cast<CLI::App*>(c22),
                          static_cast<CLI::App*>(c24), static_cast<CLI::App*>(res_cmd),
                          static_cast<CLI::App*>(res_build), static_cast<CLI::App*>(res_moment),
                          static_cast<CLI::App*>(hunt), static_cast<CLI::App*>(hunt_run),
                          static_cast<CLI::App*>(pipe), static_cast<CLI::App*>(pipe_run)})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        const json cfg = load_config(config_path);

        if (sn_eval->parsed()) {
            const PrecisionPolicy pol = policy_from(cfg, se_target, se_target_opt);
            const json sec = cfg.contains("sn") ? cfg["sn"] : json::object();
            const int n = pick(se_n_opt, se_n, sec, "n", se_n);
            const CriticalStripPoint p(se_sigma, se_t);
            json out;
            out["sigma"] = se_sigma;
            out["t"] = se_t;
            out["n"] = n;
            if (n == 0) {
                out["S"] = S_value(p, pol);
            } else {
                if (se_route == "representation" || se_route == "both") {
                    const IterateValue v = Sn_value(n, p, Route::representation, pol);
                    out["Sn_representation"] = v.value;
                    out["Sn_representation_est_error"] = v.est_error;
                }
                if (se_route == "recursive" || se_route == "both") {
                    const IterateValue v = Sn_value(n, p, Route::recursive, pol);
                    out["Sn_recursive"] = v.value;
                    out["Sn_recursive_est_error"] = v.est_error;
                }
                const DeltaConstant d = delta_constant(n, se_sigma, pol);
                out["delta_n_sigma"] = d.value;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (zeros_count->parsed()) {
            const PrecisionPolicy pol = policy_from(cfg, 0.0, nullptr);
            const ZeroOrdinateList zl = count_zeros(zc_tmax, pol);
            json out;
            out["t_max"] = zc_tmax;
            out["count"] = zl.ordinates.size();
            out["ordinates"] = zl.ordinates;
            out["scan_step"] = zl.scan_step;
            out["refine_rounds"] = zl.refine_rounds;
            write_or_print(out.dump(2), zc_out);
            return 0;
        }

        auto report_json = [](const ConvolutionReport& rep) {
            json out;
            out["lhs"] = {rep.lhs.real(), rep.lhs.imag()};
            out["rhs"] = {rep.rhs.real(), rep.rhs.imag()};
            out["residual_abs"] = std::abs(rep.residual);
            out["quad_error"] = rep.quad_error;
            out["paper_error_budget"] = rep.paper_error_budget;
            out["within_budget"] = rep.within_budget();
            out["T"] = rep.T;
            out["t"] = rep.t;
            out["h"] = rep.h;
            out["sigma"] = rep.sigma;
            out["n"] = rep.n;
            out["u_range"] = rep.u_range;
            out["lhs_evals"] = rep.lhs_evals;
            return out;
        };

        if (c22->parsed()) {
            const PrecisionPolicy pol = policy_from(cfg, 0.0, nullptr);
            const auto rep = lemma22_eval(c22_sigma, c22_t, c22_h, c22_alpha, c22_H, c22_T, pol);
            write_or_print(report_json(rep).dump(2), c22_out);
            return rep.within_budget() ? 0 : 3;
        }

        if (c24->parsed()) {
            const PrecisionPolicy pol = policy_from(cfg, 0.0, nullptr);
            const auto kp = KernelParams::for_prop24(c24_gamma, c24_delta, c24_dp, c24_T);
            const auto rep = prop24_eval(c24_n, c24_sigma, c24_t, c24_h, kp, c24_T, pol);
            write_or_print(report_json(rep).dump(2), c24_out);
            return rep.within_budget() ? 0 : 3;
        }

        if (res_build->parsed()) {
            ResonatorSpec spec = rspec_from(cfg);
            if (rb_T_o->count()) spec.T = rb_T;
            if (rb_beta_o->count()) spec.beta = rb_beta;
            if (rb_sigma_o->count()) spec.sigma = rb_sigma;
            if (rb_cap_o->count()) spec.support_cap = rb_cap;
            if (rb_w_o->count()) spec.window_override = PrimeInterval{rb_wlo, rb_whi};
            const Resonator res = build_resonator(spec);
            write_or_print(res.serialize(), rb_out);
            std::fprintf(stderr,
                         "window primes: %zu, support: %zu, M: %zu, M': %zu, R(0) = %.12g\n",
                         res.window_primes.size(), res.prov.support_size, res.prov.M_size,
                         res.prov.Mp_size, res.R0());
            return 0;
        }

        if (res_moment->parsed()) {
            std::ifstream in(rm_in);
            if (!in) throw InvalidConfig("cannot open resonator record: " + rm_in);
            std::ostringstream ss;
            ss << in.rdbuf();
            const Resonator res = Resonator::deserialize(ss.str());
            MomentRequest req;
            req.T = res.spec.T;
            if (!rm_cp.empty()) {
                if (rm_cp.size() % 2 != 0)
                    throw InvalidConfig("--cp expects pairs: m1 c1 m2 c2 ...");
                req.kind = MomentRequest::Kind::lambda_series;
                for (std::size_t i = 0; i < rm_cp.size(); i += 2)
                    req.coeffs.emplace_back(static_cast<std::uint64_t>(rm_cp[i]), rm_cp[i + 1]);
            }
            const double value = gaussian_moment(res, req, rm_sigma, MomentMethod::closed_form);
            json out;
            out["value"] = value;
            out["kind"] = (req.kind == MomentRequest::Kind::unit) ? "unit" : "lambda_series";
            out["T"] = req.T;
            out["sigma"] = rm_sigma;
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (hunt_run->parsed()) {
            const json sec = cfg.contains("hunt") ? cfg["hunt"] : json::object();
            const double T_eff = pick(h_T, hc.T, sec, "T", 1e4);
            hc.n = pick(h_n, hc.n, sec, "n", 1);
            hc.sigma = pick(h_sigma, hc.sigma, sec, "sigma", 0.5);
            hc.T = T_eff;
            hc.beta = pick(h_beta, hc.beta, sec, "beta", 0.3);
            hc.h = pick(h_h, hc.h, sec, "h", 0.5 / log2_iter(T_eff));
            hc.sign = pick(h_sign, hc.sign, sec, "sign", 1);
            hc.grid_step = pick(h_step, hc.grid_step, sec, "grid_step", 0.0);
            hc.c_floor = pick(h_c, hc.c_floor, sec, "c_floor", 1.0);
            hc.refine_top = pick(h_rt, hc.refine_top, sec, "refine_top", 10);
            hc.policy = policy_from(cfg, 0.0, nullptr);
            const HuntReport rep = run_hunt(hc);
            const auto files = emit_outputs({rep}, hr_outdir);
            std::printf("best_t = %.12g\nbest_value = %.12g\ntheoretical_scale = %.12g\n"
                        "ratio = %.12g\ngrid_points = %zu\nmean_value_violations = %zu\n",
                        rep.best_t, rep.best_value, rep.theoretical_scale, rep.ratio,
                        rep.grid_points, rep.mean_value_violations);
            for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
            return 0;
        }

        if (pipe_run->parsed()) {
            const json sec = cfg.contains("pipeline") ? cfg["pipeline"] : json::object();
            pc.n = pick(p_n, pc.n, sec, "n", 1);
            pc.sigma = pick(p_sigma, pc.sigma, sec, "sigma", 0.5);
            pc.T = pick(p_T, pc.T, sec, "T", 1e4);
            pc.beta = pick(p_beta, pc.beta, sec, "beta", 0.3);
            pc.h = pick(p_h, pc.h, sec, "h", 0.01);
            pc.gamma = pick(p_gamma, pc.gamma, sec, "gamma", 0.0);
            pc.delta = pick(p_delta, pc.delta, sec, "delta", 0);
            pc.delta_prime = pick(p_dp, pc.delta_prime, sec, "delta_prime", 2);
            pc.rspec = rspec_from(cfg);
            pc.policy = policy_from(cfg, 0.0, nullptr);
            const PipelineReport rep = run_pipeline(pc);
            write_or_print(rep.to_json(), pr_out);
            return 0;
        }

        std::fprintf(stderr, "no subcommand executed\n");
        return 2;
    } catch (const InvalidConfig& e) {
        std::fprintf(stderr, "invalid config: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
