#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "zetarg/policy.hpp"

namespace zetarg {

// Von Mangoldt table on [2, M]: Lambda(m) = log p if m = p^k, else 0.
// The exact (p, k) structure is retained; log p is computed once per prime.
struct PrimePowerTable {
    struct Entry {
        std::int64_t m;
        std::int64_t p;
        int k;
        double log_p;
    };
    std::int64_t limit = 0;
    std::vector<Entry> prime_powers;  // ascending in m
    std::vector<double> lambda_dense; // index m, 0 <= m <= limit

    double lambda(std::int64_t m) const {
        return (m >= 0 && m <= limit) ? lambda_dense[static_cast<std::size_t>(m)] : 0.0;
    }
};

PrimePowerTable lambda_sieve(std::int64_t M);

// Fejer tent weight w_m(alpha, H) = max{0, 2 alpha - |H - log m|}.
double w_weight(std::int64_t m, double alpha, double H);
double w_weight_logm(double log_m, double alpha, double H);

// Parameters of the sign-definite kernel
//   (sin(gamma u log2T)/u)^2 (3 delta + 2 delta' sin(u log2T)).
// Admissible: (0 < gamma <= 1/2, delta' in {-1,1}) or (1/2 < gamma <= 1, delta' = 0);
// alpha = gamma * log2T whenever the kernel is used in the convolution identity.
// log2T here is the iterated logarithm log log T, not a base-2 logarithm.
struct KernelParams {
    double alpha = 0.0;
    double H = 0.0;
    double gamma = 0.5;
    int delta = 1;
    int delta_prime = 0;
    double log_log_T = 0.0;

    bool admissible() const {
        if (delta != 1 && delta != -1) return false;
        if (gamma > 0.0 && gamma <= 0.5) return delta_prime == 1 || delta_prime == -1;
        if (gamma > 0.5 && gamma <= 1.0) return delta_prime == 0;
        return false;
    }

    static KernelParams for_prop24(double gamma, int delta, int delta_prime, double T) {
        KernelParams kp;
        kp.gamma = gamma;
        kp.delta = delta;
        kp.delta_prime = delta_prime;
        kp.log_log_T = log2_iter(T);
        kp.alpha = gamma * kp.log_log_T;
        kp.H = 0.0;
        return kp;
    }
};

// Kernel value; at u = 0 the sinc limit gives 3 delta (gamma log2T)^2.
double combined_kernel(double u, const KernelParams& kp);

enum class SumKind { a, b };

struct WeightedDirichletSum {
    SumKind kind = SumKind::a;
    // (m, coefficient) with coefficient = Lambda(m) w_m sin(h log m) / (log m)^{n+1};
    // the full term is coefficient * m^{-sigma - i t}.  Only w_m != 0 retained.
    std::vector<std::pair<std::int64_t, double>> terms;
    std::complex<double> value{0.0, 0.0};
};

// General weighted sum  sum_m Lambda(m) w_m(alpha,H) sin(h log m) / ((log m)^pow m^{sigma+it}).
WeightedDirichletSum weighted_dirichlet_sum(double alpha, double H, double sigma, double t,
                                            double h, int log_power,
                                            const PrimePowerTable& table);

// Prop. 2.4 sums: kind a uses H = 0, kind b uses H = log2T; weight power n+1.
WeightedDirichletSum dirichlet_sum(SumKind kind, const KernelParams& kp, double sigma, double t,
                                   double h, int n, const PrimePowerTable& table);

enum class SignContext { variation_thm, omega_cor };

struct SignSet {
    std::vector<int> values;  // subset of {-1, +1}
    bool contains(int s) const {
        for (int v : values)
            if (v == s) return true;
        return false;
    }
};

// Admissible signs delta_n:
//   variation_thm: +-1 for odd n, (-1)^{(n+2)/2} for even n;
//   omega_cor:     +-1 for even n, (-1)^{(n+3)/2} for odd n.
SignSet sign_table(int n, SignContext context);

}  // namespace zetarg
