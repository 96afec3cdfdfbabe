#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetarg/kernel.hpp"
#include "zetarg/policy.hpp"

namespace zetarg {

struct PrimeInterval {
    double lo = 0.0;  // exclusive
    double hi = 0.0;  // inclusive
};

// Construction parameters.  The paper's prime window
//   e log N log2N < p <= exp((log2N)^{1/8}) log N log2N
// is the default; at desk-scale N it is usually empty (WindowEmpty is a
// first-class outcome), so experiments pass window_override.
struct ResonatorSpec {
    double T = 1e4;
    double beta = 0.3;
    double sigma = 0.5;
    std::optional<PrimeInterval> window_override;
    std::int64_t support_cap = 1000000;

    double kappa() const { return 0.5 * (1.0 - beta); }
    std::int64_t N() const { return static_cast<std::int64_t>(std::floor(std::pow(T, kappa()))); }

    void validate() const;
};

struct SupportElement {
    std::uint64_t n = 1;   // squarefree product of window primes (1 = empty product)
    double f = 1.0;        // multiplicative weight, > 0 on the support
};

struct Resonator {
    ResonatorSpec spec;
    std::vector<std::int64_t> window_primes;
    std::vector<SupportElement> support;   // supp(f), ascending in n
    std::vector<std::uint64_t> kept;       // M = supp(f) minus the pruned sets, ascending
    std::vector<std::uint64_t> support_m;  // M': grid-cell minima m_j, ascending
    std::vector<double> r;                 // r(m_j) > 0

    struct Provenance {
        int k_max = 0;                                   // floor((log2N)^{1/8})
        std::vector<std::pair<int, std::size_t>> pruned_per_k;
        std::size_t support_size = 0;
        std::size_t M_size = 0;
        std::size_t Mp_size = 0;
    } prov;

    double R0() const;  // sum of r = R(0)

    std::string serialize() const;                  // versioned JSON record
    static Resonator deserialize(const std::string& json_text);
};

// Full pipeline: window, multiplicative weights, pruning (P_k, alpha_k, M_k),
// grid selection M', coefficients r(m_j).
Resonator build_resonator(const ResonatorSpec& spec);

// R(t) = sum r(m) m^{-it} with deterministic pairwise reduction.
std::complex<double> evaluate_R(const Resonator& res, double t);

// G(t) = sum Lambda(n) c_n / ((log n) n^{sigma+it}) with c_n >= 0 on prime
// powers, or the constant 1 (kind unit).
struct MomentRequest {
    enum class Kind { unit, lambda_series } kind = Kind::unit;
    std::vector<std::pair<std::uint64_t, double>> coeffs;  // (prime power, c_n)
    double T = 1e4;
};

enum class MomentMethod { closed_form, quadrature };

// Int_{-inf}^{inf} G(t) |R(t)|^2 Phi(t/T) dt with Phi(t) = exp(-t^2/2).
// closed_form expands |R|^2 into pairs and applies the exact Gaussian
// transform; quadrature integrates directly (toy scales; cross-check oracle).
double gaussian_moment(const Resonator& res, const MomentRequest& req, double sigma,
                       MomentMethod method = MomentMethod::closed_form);

// Int_0^inf m^{-it} |R(t)|^2 Phi(t/T) dt in closed form (Gaussian + Dawson).
std::complex<double> one_sided_moment(const Resonator& res, double log_m, double T);

// Dawson integral D(x) = e^{-x^2} Int_0^x e^{u^2} du.
double dawson(double x);

// Lemma-3.3 check: exact left side
//   | sum_m Lambda(m) a_m(T,h) / ((log m)^{n+1} m^sigma) * Int_0^inf m^{-it}|R|^2 Phi dt |
// against the displayed budget h T (log T)^{2 gamma (1-sigma)} / (log2T)^{n-1} * sum f(l)^2
// with unit constant.
struct ErrorSumReport {
    double lhs_abs = 0.0;
    double rhs_bound = 0.0;
    double ratio = 0.0;
    double sum_f_sq = 0.0;
    double h = 0.0;
    int n = 0;
};

ErrorSumReport error_sum_check(const Resonator& res, const KernelParams& kp, int n, double sigma,
                               double h, double T, const PrimePowerTable& table);

}  // namespace zetarg
