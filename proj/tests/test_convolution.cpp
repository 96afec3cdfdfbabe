#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zetarg/convolution.hpp"
#include "zetarg/zeta.hpp"
#include "zetarg/quadrature.hpp"

using namespace zetarg;

namespace {
const PrecisionPolicy kPol{};
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("lemma22: h = 0 gives exactly zero on both sides") {
    const auto rep = lemma22_eval(0.75, 800.0, 0.0, 1.0, 0.0, 1e4, kPol);
    CHECK(rep.lhs == Complex(0.0, 0.0));
    CHECK(rep.rhs == Complex(0.0, 0.0));
    CHECK(rep.within_budget());
}

TEST_CASE("lemma22: two-sided check at the desk-scale benchmark point") {
    const auto rep = lemma22_eval(0.75, 800.0, 0.05, 1.0, 0.0, 1e4, kPol);
    CHECK(std::abs(rep.residual) <= rep.quad_error + rep.paper_error_budget);
    // the identity is tight: the residual is far below the unit-constant budget
    CHECK(std::abs(rep.residual) < 0.1 * rep.paper_error_budget);
    CHECK(std::abs(rep.rhs) > 1e-3);  // non-vacuous
}

TEST_CASE("lemma22: empty tent support forces rhs = 0") {
    // support (H - 2a, H + 2a) = (-12, -8) contains no log m for m >= 2
    const auto rep = lemma22_eval(0.75, 800.0, 0.01, 1.0, -10.0, 1e4, kPol);
    CHECK(rep.rhs == Complex(0.0, 0.0));
    CHECK(std::abs(rep.lhs) <= rep.paper_error_budget + rep.quad_error);
}

TEST_CASE("lemma22: domain validation") {
    CHECK_THROWS_AS(lemma22_eval(0.5, 800.0, 0.01, 1.0, 0.0, 1e4, kPol), InvalidConfig);
    CHECK_THROWS_AS(lemma22_eval(0.75, 800.0, 2.0, 1.0, 0.0, 1e4, kPol), InvalidConfig);
    CHECK_THROWS_AS(lemma22_eval(0.75, 2.0, 0.01, 1.0, 0.0, 1e4, kPol), InvalidConfig);
    // t below (log T)^3 + h puts integrand heights on the branch cut
    CHECK_THROWS_AS(lemma22_eval(0.75, 300.0, 0.01, 1.0, 0.0, 1e4, kPol), InvalidConfig);
}

TEST_CASE("prop24: h = 0 gives zero, phases recompute, admissibility enforced") {
    auto kp = KernelParams::for_prop24(0.125, 1, 1, 1e4);
    const auto rep = prop24_eval(1, 0.5, 800.0, 0.0, kp, 1e4, kPol);
    CHECK(rep.lhs == Complex(0.0, 0.0));
    CHECK(rep.rhs == Complex(0.0, 0.0));

    // i^{n+2} = (-1)^{(n+1)/2} i for odd n (so the delta' term reads off a real part)
    for (int n : {1, 3, 5, 7}) {
        Complex ip(1.0, 0.0);
        for (int k = 0; k < n + 2; ++k) ip *= Complex(0.0, 1.0);
        const double sign = (((n + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(ip - Complex(0.0, sign)) < 1e-15);
    }

    auto bad = KernelParams::for_prop24(0.75, 1, 1, 1e4);
    CHECK_THROWS_AS(prop24_eval(1, 0.5, 800.0, 0.01, bad, 1e4, kPol), InvalidConfig);
    CHECK_THROWS_AS(prop24_eval(0, 0.5, 800.0, 0.01, kp, 1e4, kPol), InvalidConfig);  // n=0 needs sigma>1/2
}

TEST_CASE("prop24: two-sided check, n = 1 on the critical line") {
    auto kp = KernelParams::for_prop24(0.125, 1, 1, 1e4);
    const auto rep = prop24_eval(1, 0.5, 800.0, 0.01, kp, 1e4, kPol);
    CHECK(std::abs(rep.residual) <= rep.quad_error + rep.paper_error_budget);
    CHECK(std::abs(rep.rhs) > 1e-5);
}

TEST_CASE("prop24: two-sided check, n = 0 off the line (small T)") {
    auto kp = KernelParams::for_prop24(0.125, -1, -1, 100.0);
    const auto rep = prop24_eval(0, 0.7, 120.0, 0.02, kp, 100.0, kPol);
    CHECK(std::abs(rep.residual) <= rep.quad_error + rep.paper_error_budget);
    CHECK(std::abs(rep.rhs) > 1e-5);
}

TEST_CASE("linearity: the combined kernel equals the three-exponential combination") {
    // 3 delta + 2 delta' sin(u L2) = 3 delta e^0 - i delta'(e^{iuL2} - e^{-iuL2});
    // evaluate both routes through the lemma22 and prop24 machinery at n = 0.
    const double T = 300.0, t = 200.0, h = 0.02, sigma = 0.7;
    const double L2 = log2_iter(T);
    const int delta = 1, delta_prime = -1;
    auto kp = KernelParams::for_prop24(0.125, delta, delta_prime, T);
    const double alpha = kp.alpha;

    const auto combined = prop24_eval(0, sigma, t, h, kp, T, kPol);
    const auto I0 = lemma22_eval(sigma, t, h, alpha, 0.0, T, kPol);
    const auto Ip = lemma22_eval(sigma, t, h, alpha, L2, T, kPol);
    const auto Im_ = lemma22_eval(sigma, t, h, alpha, -L2, T, kPol);
    const Complex mix = 3.0 * static_cast<double>(delta) * I0.lhs +
                        Complex(0.0, -static_cast<double>(delta_prime)) * (Ip.lhs - Im_.lhs);
    // Delta_h S_0 = Im{Delta_h log zeta}/pi, so the real kernel integral is Im{mix}/pi.
    CHECK(std::abs(combined.lhs.real() - mix.imag() / kPi) <
          combined.quad_error + I0.quad_error + Ip.quad_error + Im_.quad_error + 1e-9);
}

TEST_CASE("kernel positivity transfers to dominated synthetic integrands") {
    auto kp = KernelParams::for_prop24(0.75, 1, 0, 1e4);
    auto weigh = [&](auto f) {
        Complex total(0.0, 0.0);
        for (double a = -30.0; a < 30.0; a += 0.5) {
            total += clenshaw_curtis_panel(
                         [&](double u) { return Complex(f(u) * combined_kernel(u, kp), 0.0); },
                         a, a + 0.5)
                         .value;
        }
        return total.real();
    };
    auto f1 = [](double u) { return std::exp(-u * u / 50.0); };
    auto f2 = [&](double u) { return f1(u) + 0.3 / (1.0 + u * u); };  // dominates f1
    const double v1 = weigh(f1), v2 = weigh(f2);
    CHECK(v1 > 0.0);
    CHECK(v2 > v1);
}

TEST_CASE("convolution report echoes its inputs") {
    const auto rep = lemma22_eval(0.8, 800.0, 0.01, 0.5, 0.25, 1e4, kPol);
    CHECK(rep.T == 1e4);
    CHECK(rep.t == 800.0);
    CHECK(rep.h == 0.01);
    CHECK(rep.sigma == 0.8);
    CHECK(rep.kp.alpha == 0.5);
    CHECK(rep.kp.H == 0.25);
    CHECK(rep.u_range == doctest::Approx(std::pow(std::log(1e4), 3)));
    CHECK(rep.quad_error >= 0.0);
}
