#include "zetarg/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "zetarg/errors.hpp"
#include "zetarg/quadrature.hpp"

namespace zetarg {

PrimePowerTable lambda_sieve(std::int64_t M) {
    if (M < 2) throw InvalidConfig("lambda_sieve: M must be >= 2");
    PrimePowerTable t;
    t.limit = M;
    t.lambda_dense.assign(static_cast<std::size_t>(M) + 1, 0.0);

    // smallest-prime-factor sieve
    std::vector<std::int32_t> spf(static_cast<std::size_t>(M) + 1, 0);
    std::vector<std::int64_t> primes;
    for (std::int64_t i = 2; i <= M; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::int32_t>(i);
            primes.push_back(i);
        }
        for (std::int64_t p : primes) {
            if (p > spf[i] || i * p > M) break;
            spf[i * p] = static_cast<std::int32_t>(p);
        }
    }
    for (std::int64_t p : primes) {
        const double lp = std::log(static_cast<double>(p));
        std::int64_t q = p;
        int k = 1;
        while (q <= M) {
            t.prime_powers.push_back({q, p, k, lp});
            t.lambda_dense[static_cast<std::size_t>(q)] = lp;
            if (q > M / p) break;
            q *= p;
            ++k;
        }
    }
    std::sort(t.prime_powers.begin(), t.prime_powers.end(),
              [](const auto& a, const auto& b) { return a.m < b.m; });
    return t;
}

double w_weight_logm(double log_m, double alpha, double H) {
    return std::max(0.0, 2.0 * alpha - std::abs(H - log_m));
}

double w_weight(std::int64_t m, double alpha, double H) {
    if (m < 2) throw InvalidConfig("w_weight: m must be >= 2");
    if (!(alpha > 0.0)) throw InvalidConfig("w_weight: alpha must be positive");
    return w_weight_logm(std::log(static_cast<double>(m)), alpha, H);
}

double combined_kernel(double u, const KernelParams& kp) {
    if (!kp.admissible()) throw InvalidConfig("combined_kernel: inadmissible parameters");
    const double a = kp.gamma * kp.log_log_T;
    const double fejer = a * a * sinc(a * u) * sinc(a * u);
    return fejer * (3.0 * kp.delta + 2.0 * kp.delta_prime * std::sin(u * kp.log_log_T));
}

WeightedDirichletSum weighted_dirichlet_sum(double alpha, double H, double sigma, double t,
                                            double h, int log_power,
                                            const PrimePowerTable& table) {
    if (!(alpha > 0.0)) throw InvalidConfig("weighted_dirichlet_sum: alpha must be positive");
    if (h < 0.0) throw InvalidConfig("weighted_dirichlet_sum: h must be >= 0");
    // Support of the tent is log m in (H - 2 alpha, H + 2 alpha).
    if (std::log(static_cast<double>(table.limit)) < H + 2.0 * alpha)
        throw TableTooSmall("weighted_dirichlet_sum: sieve limit below exp(H + 2 alpha)");
    WeightedDirichletSum out;
    std::vector<std::complex<double>> contrib;
    for (const auto& e : table.prime_powers) {
        const double log_m = e.k * e.log_p;
        const double w = w_weight_logm(log_m, alpha, H);
        if (w == 0.0) continue;
        const double coef =
            e.log_p * w * std::sin(h * log_m) / std::pow(log_m, log_power);
        out.terms.emplace_back(e.m, coef);
        const double mag = coef * std::exp(-sigma * log_m);
        const double ph = t * log_m;
        contrib.emplace_back(mag * std::cos(ph), -mag * std::sin(ph));
    }
    out.value = pairwise_sum(std::span<const std::complex<double>>(contrib));
    return out;
}

WeightedDirichletSum dirichlet_sum(SumKind kind, const KernelParams& kp, double sigma, double t,
                                   double h, int n, const PrimePowerTable& table) {
    if (!kp.admissible()) throw InvalidConfig("dirichlet_sum: inadmissible kernel parameters");
    const double alpha = kp.gamma * kp.log_log_T;
    const double H = (kind == SumKind::a) ? 0.0 : kp.log_log_T;
    WeightedDirichletSum out = weighted_dirichlet_sum(alpha, H, sigma, t, h, n + 1, table);
    out.kind = kind;
    return out;
}

SignSet sign_table(int n, SignContext context) {
    if (n < 0) throw InvalidConfig("sign_table: n must be >= 0");
    SignSet s;
    const bool odd = (n % 2 == 1);
    if (context == SignContext::variation_thm) {
        if (odd) {
            s.values = {-1, +1};
        } else {
            s.values = {((n + 2) / 2) % 2 == 0 ? +1 : -1};
        }
    } else {
        if (!odd) {
            s.values = {-1, +1};
        } else {
            s.values = {((n + 3) / 2) % 2 == 0 ? +1 : -1};
        }
    }
    return s;
}

}  // namespace zetarg
