#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "zetarg/zeta.hpp"

using namespace zetarg;

namespace {
const PrecisionPolicy kPol{};
constexpr double kPi = std::numbers::pi;

// Independent location of the first critical-line zero: plain bisection of
// Hardy Z on [14, 15], no use of count_zeros.
double first_zero_by_bisection() {
    double lo = 14.0, hi = 15.0;
    double zlo = hardy_Z(lo, kPol);
    REQUIRE(zlo * hardy_Z(hi, kPol) < 0.0);
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double zm = hardy_Z(mid, kPol);
        if ((zm > 0) == (zlo > 0)) {
            lo = mid;
            zlo = zm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("zeta special values") {
    CHECK(std::abs(zeta_eval(Complex(2.0, 0.0), kPol).real() - kPi * kPi / 6.0) < 1e-10);
    CHECK(std::abs(zeta_eval(Complex(2.0, 0.0), kPol).imag()) < 1e-12);
    CHECK(std::abs(zeta_eval(Complex(0.0, 0.0), kPol).real() + 0.5) < 1e-10);
    CHECK(std::abs(zeta_eval(Complex(-1.0, 0.0), kPol).real() + 1.0 / 12.0) < 1e-10);
    CHECK_THROWS_AS(zeta_eval(Complex(1.0, 0.0), kPol), PoleAtOne);
}

TEST_CASE("zeta vanishes at the bisected first ordinate") {
    const double g1 = first_zero_by_bisection();
    CHECK(std::abs(g1 - 14.1347251417) < 1e-6);
    CHECK(std::abs(zeta_eval(Complex(0.5, g1), kPol)) < 1e-6);
}

TEST_CASE("zeta conjugate symmetry") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> sig(0.2, 2.5), tt(0.5, 300.0);
    for (int i = 0; i < 40; ++i) {
        const Complex s(sig(rng), tt(rng));
        const Complex a = zeta_eval(std::conj(s), kPol);
        const Complex b = std::conj(zeta_eval(s, kPol));
        CHECK(std::abs(a - b) < 2.0 * kPol.target_abs_error);
    }
}

TEST_CASE("zeta determinism: identical inputs give bit-identical outputs") {
    const Complex s(0.5, 1234.5678);
    const Complex a = zeta_eval(s, kPol);
    const Complex b = zeta_eval(s, kPol);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
}

TEST_CASE("zeta precision policy is honored or refused") {
    PrecisionPolicy cruel;
    cruel.target_abs_error = 1e-30;
    cruel.max_series_terms = 4000;
    CHECK_THROWS_AS(zeta_eval(Complex(0.5, 50.0), cruel), PrecisionUnreachable);
}

TEST_CASE("zeta_minus_one matches zeta and keeps relative accuracy") {
    const Complex s(1.5, 7.0);
    CHECK(std::abs((zeta_eval(s, kPol) - 1.0) - zeta_minus_one(s, kPol)) < 1e-10);
    // deep half plane: zeta(40) - 1 ~ 2^-40, far below an ulp of 1
    const Complex d = zeta_minus_one(Complex(40.0, 0.0), kPol);
    CHECK(d.real() == doctest::Approx(std::pow(2.0, -40.0) + std::pow(3.0, -40.0)).epsilon(1e-9));
}

TEST_CASE("zeta_times_s_minus_1 is regular through the pole") {
    CHECK(std::abs(zeta_times_s_minus_1(Complex(1.0, 0.0), kPol) - 1.0) < 1e-12);
    const Complex near = zeta_times_s_minus_1(Complex(1.0 + 1e-9, 0.0), kPol);
    // (s-1) zeta(s) = 1 + gamma_E (s-1) + ...
    CHECK(std::abs(near - Complex(1.0 + 0.5772156649 * 1e-9, 0.0)) < 1e-12);
}

TEST_CASE("theta matches its asymptotic expansion") {
    // theta(t) ~ t/2 log(t/2pi) - t/2 - pi/8 + 1/(48 t) + 7/(5760 t^3)
    for (double t : {25.0, 100.0, 2000.0}) {
        const double asym = 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 +
                            1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t);
        CHECK(std::abs(riemann_siegel_theta(t) - asym) < 1e-7 / t);
    }
}

TEST_CASE("littlewood path: corner convention and RvM cross-check") {
    // arg zeta(2) = 0: S(2, t) -> 0 as t -> 0+
    const LogZetaValue near0 = log_zeta_littlewood_path(CriticalStripPoint(2.0, 1e-5), kPol);
    CHECK(std::abs(near0.arg_over_pi) < 1e-4);
    // S(1/2, 20) = N(20) - main(20) up to the O(1/t) defect of the main term
    const LogZetaValue at20 = log_zeta_littlewood_path(CriticalStripPoint(0.5, 20.0), kPol);
    CHECK(at20.at_zero == false);
    CHECK(std::abs(at20.arg_over_pi - (1.0 - rvm_main_term(20.0))) < 2e-3);
    CHECK_THROWS_AS(log_zeta_littlewood_path(CriticalStripPoint(0.5, 0.0), kPol), InvalidConfig);
}

TEST_CASE("littlewood path: branch consistency exp(log zeta) == zeta") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> sig(0.55, 2.0), tt(1.0, 60.0);
    for (int i = 0; i < 15; ++i) {
        const CriticalStripPoint p(sig(rng), tt(rng));
        const LogZetaValue lz = log_zeta_littlewood_path(p, kPol);
        const Complex recomposed =
            std::exp(Complex(lz.log_modulus, kPi * lz.arg_over_pi));
        CHECK(std::abs(recomposed - zeta_eval(p, kPol)) < 1e-7);
    }
}

TEST_CASE("littlewood path equals the corner-anchored shortcut") {
    for (double t : {3.0, 21.5, 47.25}) {
        for (double sig : {0.5, 0.8, 1.5}) {
            const LogZetaValue full = log_zeta_littlewood_path(CriticalStripPoint(sig, t), kPol);
            const Complex fast = log_zeta_from_corner(sig, t, kPol);
            CHECK(std::abs(full.arg_over_pi - fast.imag() / kPi) < 1e-9);
            CHECK(std::abs(full.log_modulus - fast.real()) < 1e-9);
        }
    }
}

TEST_CASE("zero on path: averaging convention") {
    const double g1 = first_zero_by_bisection();
    const LogZetaValue at = log_zeta_littlewood_path(CriticalStripPoint(0.5, g1), kPol);
    CHECK(at.at_zero);
    const double eps = 1e-5;
    const double above = log_zeta_littlewood_path(CriticalStripPoint(0.5, g1 + eps), kPol).arg_over_pi;
    const double below = log_zeta_littlewood_path(CriticalStripPoint(0.5, g1 - eps), kPol).arg_over_pi;
    CHECK(std::abs(at.arg_over_pi - 0.5 * (above + below)) < 1e-4);
}

TEST_CASE("jump property: S jumps by the multiplicity at each simple zero") {
    const ZeroOrdinateList zl = count_zeros(26.0, kPol);
    REQUIRE(zl.ordinates.size() == 3);
    const double eps = 1e-4;
    for (double g : zl.ordinates) {
        const double above =
            log_zeta_littlewood_path(CriticalStripPoint(0.5, g + eps), kPol).arg_over_pi;
        const double below =
            log_zeta_littlewood_path(CriticalStripPoint(0.5, g - eps), kPol).arg_over_pi;
        CHECK(std::abs((above - below) - 1.0) < 0.01);  // sign-change count = 1
    }
}

TEST_CASE("count_zeros: edge cases and certificates") {
    CHECK(count_zeros(0.0, kPol).ordinates.empty());
    CHECK(count_zeros(14.0, kPol).ordinates.empty());
    const ZeroOrdinateList one = count_zeros(15.0, kPol);
    REQUIRE(one.ordinates.size() == 1);
    CHECK(std::abs(one.ordinates[0] - 14.134725) < 1e-5);
    REQUIRE(one.certificates.size() == 1);
    CHECK(one.certificates[0].z_lo * one.certificates[0].z_hi <= 0.0);
    CHECK(one.certificates[0].lo <= one.ordinates[0]);
    CHECK(one.certificates[0].hi >= one.ordinates[0]);

    const ZeroOrdinateList hundred = count_zeros(100.0, kPol);
    CHECK(hundred.ordinates.size() == 29);
    for (std::size_t i = 0; i + 1 < hundred.ordinates.size(); ++i)
        CHECK(hundred.ordinates[i] < hundred.ordinates[i + 1]);
    // weight-1/2 convention at an ordinate
    CHECK(hundred.count_up_to(hundred.ordinates[4]) == doctest::Approx(4.5));
}

TEST_CASE("count_zeros determinism") {
    const ZeroOrdinateList a = count_zeros(40.0, kPol);
    const ZeroOrdinateList b = count_zeros(40.0, kPol);
    REQUIRE(a.ordinates.size() == b.ordinates.size());
    for (std::size_t i = 0; i < a.ordinates.size(); ++i)
        CHECK(a.ordinates[i] == b.ordinates[i]);
}

TEST_CASE("vertical branch tracker matches per-point littlewood values") {
    VerticalBranchTracker tracker(0.75, kPol);
    for (double y : {5.0, 9.5, 9.5001, 22.0, 40.0}) {
        const Complex via_tracker = tracker.log_zeta_at(y);
        const LogZetaValue direct = log_zeta_littlewood_path(CriticalStripPoint(0.75, y), kPol);
        CHECK(std::abs(via_tracker.imag() / kPi - direct.arg_over_pi) < 1e-9);
    }
    CHECK_THROWS_AS(tracker.log_zeta_at(1.0), InvalidConfig);  // non-decreasing only
}

TEST_CASE("horizontal branch line matches path values along the ray") {
    HorizontalBranchLine line(0.5, 33.0, kPol);
    for (double v : {0.5, 0.62, 1.0, 1.37, 2.0}) {
        const Complex q = line.log_zeta_at(v);
        const LogZetaValue direct = log_zeta_littlewood_path(CriticalStripPoint(v, 33.0), kPol);
        CHECK(std::abs(q.imag() / kPi - direct.arg_over_pi) < 1e-9);
        CHECK(std::abs(q.real() - direct.log_modulus) < 1e-9);
    }
}
