#include "zetarg/resonator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <json.hpp>

#include "zetarg/errors.hpp"
#include "zetarg/quadrature.hpp"

namespace zetarg {

namespace {

constexpr double kE = std::numbers::e;

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::int64_t> primes_in(double lo, double hi) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = static_cast<std::int64_t>(std::floor(lo)) + 1;
         static_cast<double>(p) <= hi; ++p)
        if (is_prime(p)) ps.push_back(p);
    return ps;
}

// Grid cell index: j with (1+1/T)^j <= n < (1+1/T)^{j+1}.
std::int64_t cell_index(std::uint64_t n, double T) {
    const long double step = log1pl(1.0L / static_cast<long double>(T));
    return static_cast<std::int64_t>(floorl(logl(static_cast<long double>(n)) / step));
}

}  // namespace

void ResonatorSpec::validate() const {
    if (!(T > 1.0)) throw InvalidConfig("ResonatorSpec: T must exceed 1");
    if (!(beta >= 0.0 && beta < 1.0)) throw InvalidConfig("ResonatorSpec: beta must lie in [0, 1)");
    if (kappa() + beta >= 1.0) throw InvalidConfig("ResonatorSpec: kappa + beta must be < 1");
    if (!(sigma >= 0.5 && sigma <= 1.0))
        throw InvalidConfig("ResonatorSpec: sigma must lie in [1/2, 1]");
    const double N = static_cast<double>(this->N());
    if (!(N > std::exp(kE)))
        throw InvalidConfig("ResonatorSpec: N = floor(T^kappa) too small (log log log N undefined)");
    const double loglogN = log2_iter(N);
    // The sigma constraint binds once 1/2 + 1/loglogN < 1.
    if (loglogN > 2.0 && sigma > 0.5 + 1.0 / loglogN + 1e-12)
        throw InvalidConfig("ResonatorSpec: sigma exceeds 1/2 + 1/loglog N");
    if (support_cap < 1) throw InvalidConfig("ResonatorSpec: support_cap must be >= 1");
}

Resonator build_resonator(const ResonatorSpec& spec) {
    spec.validate();
    const double N = static_cast<double>(spec.N());
    const double logN = std::log(N);
    const double log2N = std::log(logN);
    const double log3N = std::log(log2N);

    Resonator res;
    res.spec = spec;

    // Prime window.
    const double paper_lo = kE * logN * log2N;
    const double paper_hi = std::exp(std::pow(log2N, 0.125)) * logN * log2N;
    double lo = paper_lo, hi = paper_hi;
    if (spec.window_override) {
        lo = spec.window_override->lo;
        hi = spec.window_override->hi;
    }
    res.window_primes = primes_in(lo, hi);
    if (res.window_primes.empty())
        throw WindowEmpty("build_resonator: prime window (" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] contains no primes");

    // Multiplicative weight on the window primes.
    const double front = std::pow(logN, 1.0 - spec.sigma) * std::pow(log2N, spec.sigma) /
                         std::pow(log3N, 1.0 - spec.sigma);
    std::vector<double> fp(res.window_primes.size());
    for (std::size_t i = 0; i < res.window_primes.size(); ++i) {
        const double p = static_cast<double>(res.window_primes[i]);
        const double denom = std::log(p) - log2N - log3N;
        if (!(denom > 0.0))
            throw NonpositiveWeight("build_resonator: log p - loglog N - logloglog N <= 0 for p = " +
                                    std::to_string(res.window_primes[i]));
        fp[i] = front / (std::pow(p, spec.sigma) * denom);
    }

    // Squarefree support: all subset products (1 included), depth-first over the
    // sorted primes, capped by support_cap and the uint64 range.
    const std::size_t P = res.window_primes.size();
    if (P > 62) throw SupportCapExceeded("build_resonator: window has more than 62 primes");
    std::vector<SupportElement> supp;
    std::vector<std::uint64_t> masks;
    {
        // iterative DFS by increasing prime index
        struct Frame { std::size_t next; std::uint64_t prod; double f; std::uint64_t mask; };
        std::vector<Frame> stack{{0, 1, 1.0, 0}};
        while (!stack.empty()) {
            Frame fr = stack.back();
            stack.pop_back();
            supp.push_back({fr.prod, fr.f});
            masks.push_back(fr.mask);
            if (static_cast<std::int64_t>(supp.size()) > spec.support_cap)
                throw SupportCapExceeded("build_resonator: support exceeds support_cap");
            for (std::size_t i = fr.next; i < P; ++i) {
                const std::uint64_t p = static_cast<std::uint64_t>(res.window_primes[i]);
                if (fr.prod > std::numeric_limits<std::uint64_t>::max() / 4 / p)
                    throw SupportCapExceeded("build_resonator: support element overflows 64 bits");
                stack.push_back({i + 1, fr.prod * p, fr.f * fp[i], fr.mask | (1ull << i)});
            }
        }
        // ascending n, and keep masks aligned
        std::vector<std::size_t> order(supp.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return supp[a].n < supp[b].n; });
        std::vector<SupportElement> s2(supp.size());
        std::vector<std::uint64_t> m2(supp.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            s2[i] = supp[order[i]];
            m2[i] = masks[order[i]];
        }
        supp = std::move(s2);
        masks = std::move(m2);
    }
    res.support = supp;
    res.prov.support_size = supp.size();

    // Pruning: for each k <= floor((log2N)^{1/8}) remove elements with at least
    // alpha_k prime divisors inside P_k.
    const int k_max = static_cast<int>(std::floor(std::pow(log2N, 0.125)));
    res.prov.k_max = k_max;
    std::vector<bool> removed(supp.size(), false);
    for (int k = 1; k <= k_max; ++k) {
        const double pk_lo = std::exp(static_cast<double>(k)) * logN * log2N;
        const double pk_hi = std::exp(static_cast<double>(k + 1)) * logN * log2N;
        std::uint64_t pk_mask = 0;
        for (std::size_t i = 0; i < P; ++i) {
            const double p = static_cast<double>(res.window_primes[i]);
            if (p > pk_lo && p <= pk_hi) pk_mask |= (1ull << i);
        }
        const double alpha_k = 3.0 * std::pow(logN, 2.0 - 2.0 * spec.sigma) /
                               (static_cast<double>(k) * static_cast<double>(k) *
                                std::pow(log3N, 2.0 - 2.0 * spec.sigma));
        std::size_t pruned = 0;
        for (std::size_t i = 0; i < supp.size(); ++i) {
            const int divisors = std::popcount(masks[i] & pk_mask);
            if (static_cast<double>(divisors) >= alpha_k && !removed[i]) {
                removed[i] = true;
                ++pruned;
            }
        }
        res.prov.pruned_per_k.emplace_back(k, pruned);
    }

    std::vector<std::uint64_t> M;
    std::vector<double> fM;
    for (std::size_t i = 0; i < supp.size(); ++i) {
        if (!removed[i]) {
            M.push_back(supp[i].n);
            fM.push_back(supp[i].f);
        }
    }
    res.kept = M;
    res.prov.M_size = M.size();

    // Grid selection: m_j = min of cell j; r(m_j)^2 sums f(n)^2 over the three
    // cells j-1, j, j+1 (the closed window [(1+1/T)^{j-1}, (1+1/T)^{j+2}]).
    std::map<std::int64_t, std::size_t> cell_min;  // cell -> index into M of the minimum
    std::vector<std::int64_t> cells(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) {
        cells[i] = cell_index(M[i], spec.T);
        auto it = cell_min.find(cells[i]);
        if (it == cell_min.end() || M[i] < M[it->second]) cell_min[cells[i]] = i;
    }
    std::map<std::int64_t, double> r_sq;
    for (std::size_t i = 0; i < M.size(); ++i) {
        for (std::int64_t j = cells[i] - 1; j <= cells[i] + 1; ++j)
            if (cell_min.count(j)) r_sq[j] += fM[i] * fM[i];
    }
    for (const auto& [j, idx] : cell_min) {
        res.support_m.push_back(M[idx]);
        res.r.push_back(std::sqrt(r_sq[j]));
    }
    res.prov.Mp_size = res.support_m.size();
    return res;
}

double Resonator::R0() const {
    std::vector<double> rs(r.begin(), r.end());
    return pairwise_sum(std::span<const double>(rs));
}

std::complex<double> evaluate_R(const Resonator& res, double t) {
    std::vector<std::complex<double>> terms(res.support_m.size());
    for (std::size_t i = 0; i < res.support_m.size(); ++i) {
        const double ph = t * std::log(static_cast<double>(res.support_m[i]));
        terms[i] = res.r[i] * std::complex<double>(std::cos(ph), -std::sin(ph));
    }
    return pairwise_sum(std::span<const std::complex<double>>(terms));
}

// --------------------------------------------------------------------------
// Gaussian moments
// --------------------------------------------------------------------------

double dawson(double x) {
    const double ax = std::abs(x);
    const double sign = (x < 0.0) ? -1.0 : 1.0;
    if (ax < 0.5) {
        // Maclaurin series sum (-2)^k x^{2k+1} k! / (2k+1)!!-form
        double term = ax, sum = ax;
        const double x2 = ax * ax;
        for (int k = 1; k < 40; ++k) {
            term *= -2.0 * x2 / (2.0 * k + 1.0);
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sign * sum;
    }
    if (ax > 15.0) {
        // asymptotic: D(x) ~ sum (2k-1)!! / (2^{k+1} x^{2k+1})
        const double inv2 = 1.0 / (ax * ax);
        double term = 0.5 / ax, sum = term;
        for (int k = 1; k < 10; ++k) {
            term *= (2.0 * k - 1.0) * 0.5 * inv2;
            sum += term;
        }
        return sign * sum;
    }
    // D(x) = int_0^x e^{-(x-u)(x+u)} du, smooth and well-scaled on [0.5, 15].
    auto integrand = [&](double u) { return std::exp((u - ax) * (u + ax)); };
    std::vector<double> bp{0.0, std::max(0.0, ax - 12.0 / ax), ax};
    auto q = integrate_adaptive(integrand, bp, 1e-14);
    return sign * q.value;
}

std::complex<double> one_sided_moment(const Resonator& res, double log_m, double T) {
    // Int_0^inf e^{-i w t} e^{-t^2/(2T^2)} dt = T sqrt(pi/2) e^{-T^2 w^2/2} - i T sqrt(2) D(T w / sqrt 2)
    std::vector<std::complex<double>> terms;
    terms.reserve(res.support_m.size() * res.support_m.size());
    for (std::size_t j = 0; j < res.support_m.size(); ++j) {
        for (std::size_t k = 0; k < res.support_m.size(); ++k) {
            const double w = log_m +
                             std::log(static_cast<double>(res.support_m[j])) -
                             std::log(static_cast<double>(res.support_m[k]));
            const double z = T * w;
            const double re = T * std::sqrt(std::numbers::pi / 2.0) *
                              ((z * z > 1400.0) ? 0.0 : std::exp(-0.5 * z * z));
            const double im = -T * std::sqrt(2.0) * dawson(z / std::sqrt(2.0));
            terms.emplace_back(res.r[j] * res.r[k] * std::complex<double>(re, im));
        }
    }
    return pairwise_sum(std::span<const std::complex<double>>(terms));
}

namespace {

double pair_gaussian_sum(const Resonator& res, double log_n, double T) {
    // sum_{j,k} r_j r_k e^{-T^2 log^2(n m_j / m_k)/2}
    std::vector<double> terms;
    terms.reserve(res.support_m.size() * res.support_m.size());
    for (std::size_t j = 0; j < res.support_m.size(); ++j) {
        for (std::size_t k = 0; k < res.support_m.size(); ++k) {
            const double w = log_n +
                             std::log(static_cast<double>(res.support_m[j])) -
                             std::log(static_cast<double>(res.support_m[k]));
            const double z = T * w;
            terms.push_back((z * z > 1400.0) ? 0.0
                                             : res.r[j] * res.r[k] * std::exp(-0.5 * z * z));
        }
    }
    return pairwise_sum(std::span<const double>(terms));
}

}  // namespace

double gaussian_moment(const Resonator& res, const MomentRequest& req, double sigma,
                       MomentMethod method) {
    const double T = req.T;
    if (!(T > 0.0)) throw InvalidConfig("gaussian_moment: T must be positive");
    if (method == MomentMethod::closed_form) {
        const double root = std::sqrt(2.0 * std::numbers::pi);
        if (req.kind == MomentRequest::Kind::unit)
            return root * T * pair_gaussian_sum(res, 0.0, T);
        double total = 0.0;
        for (const auto& [m, c] : req.coeffs) {
            if (c < 0.0) throw InvalidConfig("gaussian_moment: coefficients must be >= 0");
            if (c == 0.0) continue;
            // Lambda(m)/log m for a prime power p^k is log p / (k log p) = 1/k.
            std::uint64_t q = m;
            std::int64_t p = 0;
            for (std::int64_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d)
                if (m % d == 0) { p = d; break; }
            if (p == 0) p = static_cast<std::int64_t>(m);
            int k = 0;
            while (q % p == 0 && q > 1) { q /= p; ++k; }
            if (q != 1) throw InvalidConfig("gaussian_moment: coefficient index is not a prime power");
            const double log_m = std::log(static_cast<double>(m));
            const double coef = c / (static_cast<double>(k) * std::pow(static_cast<double>(m), sigma));
            total += coef * pair_gaussian_sum(res, log_m, T);
        }
        return root * T * total;
    }
    // Direct quadrature over the effective Gaussian support (toy scales).
    const double cut = T * std::sqrt(2.0 * std::log(1e16));
    auto G = [&](double t) {
        if (req.kind == MomentRequest::Kind::unit) return std::complex<double>(1.0, 0.0);
        std::complex<double> g(0.0, 0.0);
        for (const auto& [m, c] : req.coeffs) {
            const double log_m = std::log(static_cast<double>(m));
            // Lambda(m)/log m = 1/k for m = p^k; recover k from the smallest prime factor
            std::uint64_t q = m;
            std::int64_t p = 0;
            for (std::int64_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d)
                if (m % d == 0) { p = d; break; }
            if (p == 0) p = static_cast<std::int64_t>(m);
            int k = 0;
            while (q % p == 0 && q > 1) { q /= p; ++k; }
            const double mag = c / (static_cast<double>(k) * std::pow(static_cast<double>(m), sigma));
            g += mag * std::complex<double>(std::cos(t * log_m), -std::sin(t * log_m));
        }
        return g;
    };
    auto f = [&](double t) {
        const std::complex<double> R = evaluate_R(res, t);
        return G(t) * std::norm(R) * std::exp(-0.5 * (t / T) * (t / T));
    };
    // Panel width tied to the fastest phase in the pair expansion.
    double max_logm = std::log(static_cast<double>(res.support_m.back()));
    for (const auto& [m, c] : req.coeffs)
        max_logm += std::log(static_cast<double>(m));
    const double width = std::max(0.05, 0.5 / max_logm);
    std::vector<double> bp;
    const int panels = static_cast<int>(std::ceil(2.0 * cut / (width * 256.0)));
    for (int i = 0; i <= std::max(panels, 2); ++i)
        bp.push_back(-cut + 2.0 * cut * i / std::max(panels, 2));
    auto q = integrate_adaptive_complex(f, bp, 1e-9 * T);
    return q.value.real();
}

ErrorSumReport error_sum_check(const Resonator& res, const KernelParams& kp, int n, double sigma,
                               double h, double T, const PrimePowerTable& table) {
    if (!kp.admissible()) throw InvalidConfig("error_sum_check: inadmissible kernel parameters");
    if (h < 0.0) throw InvalidConfig("error_sum_check: h must be >= 0");
    const double L2 = kp.log_log_T;
    const double alpha = kp.gamma * L2;
    if (std::log(static_cast<double>(table.limit)) < 2.0 * alpha)
        throw TableTooSmall("error_sum_check: sieve limit below the a-sum support");

    std::vector<std::complex<double>> terms;
    for (const auto& e : table.prime_powers) {
        const double log_m = e.k * e.log_p;
        const double w = w_weight_logm(log_m, alpha, 0.0);
        if (w == 0.0) continue;
        const double a_m = w * std::sin(h * log_m);
        const double coef = e.log_p * a_m /
                            (std::pow(log_m, n + 1) * std::pow(static_cast<double>(e.m), sigma));
        terms.push_back(coef * one_sided_moment(res, log_m, T));
    }
    ErrorSumReport rep;
    rep.h = h;
    rep.n = n;
    rep.lhs_abs = std::abs(pairwise_sum(std::span<const std::complex<double>>(terms)));
    // sum f(l)^2 over M directly from the stored support elements
    double sum_f_sq = 0.0;
    {
        std::size_t ki = 0;
        for (const auto& el : res.support) {
            if (ki < res.kept.size() && el.n == res.kept[ki]) {
                sum_f_sq += el.f * el.f;
                ++ki;
            }
        }
    }
    rep.sum_f_sq = sum_f_sq;
    rep.rhs_bound = h * T * std::pow(std::log(T), 2.0 * kp.gamma * (1.0 - sigma)) /
                    std::pow(L2, n - 1) * sum_f_sq;
    rep.ratio = (rep.rhs_bound > 0.0) ? rep.lhs_abs / rep.rhs_bound : 0.0;
    return rep;
}

// --------------------------------------------------------------------------
// Serialization (versioned; full-precision doubles for bit-exact replay)
// --------------------------------------------------------------------------

std::string Resonator::serialize() const {
    nlohmann::ordered_json j;
    j["schema"] = "resonator_v1";
    j["spec"]["T"] = spec.T;
    j["spec"]["beta"] = spec.beta;
    j["spec"]["sigma"] = spec.sigma;
    if (spec.window_override) {
        j["spec"]["window_override"] = {spec.window_override->lo, spec.window_override->hi};
    }
    j["spec"]["support_cap"] = spec.support_cap;
    j["window_primes"] = window_primes;
    nlohmann::ordered_json supp = nlohmann::ordered_json::array();
    for (const auto& el : support) supp.push_back({el.n, el.f});
    j["support"] = supp;
    j["kept"] = kept;
    j["support_m"] = support_m;
    j["r"] = r;
    j["provenance"]["k_max"] = prov.k_max;
    j["provenance"]["pruned_per_k"] = prov.pruned_per_k;
    j["provenance"]["support_size"] = prov.support_size;
    j["provenance"]["M_size"] = prov.M_size;
    j["provenance"]["Mp_size"] = prov.Mp_size;
    return j.dump(2);
}

Resonator Resonator::deserialize(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("schema").get<std::string>() != "resonator_v1")
        throw InvalidConfig("Resonator::deserialize: unknown schema");
    Resonator res;
    res.spec.T = j.at("spec").at("T").get<double>();
    res.spec.beta = j.at("spec").at("beta").get<double>();
    res.spec.sigma = j.at("spec").at("sigma").get<double>();
    if (j.at("spec").contains("window_override")) {
        auto w = j.at("spec").at("window_override");
        res.spec.window_override = PrimeInterval{w.at(0).get<double>(), w.at(1).get<double>()};
    }
    res.spec.support_cap = j.at("spec").at("support_cap").get<std::int64_t>();
    res.window_primes = j.at("window_primes").get<std::vector<std::int64_t>>();
    for (const auto& el : j.at("support"))
        res.support.push_back({el.at(0).get<std::uint64_t>(), el.at(1).get<double>()});
    res.kept = j.at("kept").get<std::vector<std::uint64_t>>();
    res.support_m = j.at("support_m").get<std::vector<std::uint64_t>>();
    res.r = j.at("r").get<std::vector<double>>();
    res.prov.k_max = j.at("provenance").at("k_max").get<int>();
    for (const auto& pk : j.at("provenance").at("pruned_per_k"))
        res.prov.pruned_per_k.emplace_back(pk.at(0).get<int>(), pk.at(1).get<std::size_t>());
    res.prov.support_size = j.at("provenance").at("support_size").get<std::size_t>();
    res.prov.M_size = j.at("provenance").at("M_size").get<std::size_t>();
    res.prov.Mp_size = j.at("provenance").at("Mp_size").get<std::size_t>();
    return res;
}

}  // namespace zetarg
