#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zetarg/iterates.hpp"
#include "zetarg/quadrature.hpp"

using namespace zetarg;

namespace {
const PrecisionPolicy kPol{};
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("delta constants: even closed form") {
    CHECK(delta_constant(2, 0.5, kPol).value == 0.125);
    CHECK(delta_constant(4, 0.5, kPol).value == -1.0 / 384.0);
    CHECK(delta_constant(2, 1.0, kPol).value == 0.0);
    CHECK(delta_constant(6, 1.0, kPol).value == 0.0);
    CHECK(delta_constant(2, 0.5, kPol).route == DeltaConstant::Scheme::closed_form_even);
}

TEST_CASE("delta parity: alternating signs, decreasing magnitude") {
    const double sigma = 0.55;
    double prev_mag = 1e300;
    for (int k = 1; k <= 4; ++k) {
        const DeltaConstant d = delta_constant(2 * k, sigma, kPol);
        const double expected_sign = (k % 2 == 1) ? 1.0 : -1.0;
        CHECK(d.value * expected_sign > 0.0);
        CHECK(std::abs(d.value) < prev_mag);
        prev_mag = std::abs(d.value);
    }
}

TEST_CASE("delta odd: independent quadrature schemes agree") {
    for (double sigma : {0.5, 0.6}) {
        for (int n : {1, 3}) {
            double est_a = 0.0, est_b = 0.0;
            const double a = delta_odd_scheme_gl(n, sigma, kPol, &est_a);
            const double b = delta_odd_scheme_tanh_sinh(n, sigma, kPol, &est_b);
            CHECK(std::abs(a - b) < 1e-8);
            const DeltaConstant d = delta_constant(n, sigma, kPol);
            CHECK(d.route == DeltaConstant::Scheme::quadrature_odd);
            CHECK(d.est_error <= 1e-8);
        }
    }
}

TEST_CASE("S at sigma = 2 obeys the Dirichlet tail bound") {
    // |S(2,t)| <= (1/pi) sum Lambda(m)/(m^2 log m) = (1/pi) log zeta(2)
    const double bound = std::log(kPi * kPi / 6.0) / kPi;
    for (double t : {0.1, 0.7, 2.3, 9.0}) {
        CHECK(std::abs(S_value(CriticalStripPoint(2.0, t), kPol)) <= bound);
    }
}

TEST_CASE("Sn_value at t = 0 returns the delta constant") {
    for (int n : {1, 2, 3}) {
        const IterateValue v = Sn_value(n, CriticalStripPoint(0.6, 0.0), Route::recursive, kPol);
        CHECK(v.value == doctest::Approx(delta_constant(n, 0.6, kPol).value).epsilon(1e-12));
    }
    CHECK_THROWS_AS(Sn_value(1, CriticalStripPoint(0.6, 0.0), Route::representation, kPol),
                    InvalidConfig);
    CHECK_THROWS_AS(Sn_value(0, CriticalStripPoint(0.6, 5.0), Route::representation, kPol),
                    InvalidConfig);
}

TEST_CASE("S_n(sigma, 0+) tends to delta_n") {
    SnEvaluator model(0.6, 1.0, 3, kPol);
    for (int n : {1, 2, 3})
        CHECK(std::abs(model.Sn(n, 1e-4) - model.delta_n(n)) < 2e-4);
}

TEST_CASE("cross-route agreement at sample lattice points") {
    SnEvaluator m06(0.6, 31.0, 3, kPol);
    SnEvaluator m05(0.5, 51.0, 3, kPol);
    for (int n : {1, 2, 3}) {
        double est_rep = 0.0;
        const double rep = representation_Sn(n, CriticalStripPoint(0.6, 30.0), kPol, &est_rep);
        const double rec = m06.Sn(n, 30.0);
        CHECK(std::abs(rep - rec) < 1e-6);
        CHECK(std::abs(rep - rec) <= est_rep + m06.est_error(n, 30.0));

        const double rep5 = representation_Sn(n, CriticalStripPoint(0.5, 50.0), kPol, &est_rep);
        const double rec5 = m05.Sn(n, 50.0);
        CHECK(std::abs(rep5 - rec5) < 1e-6);
        CHECK(std::abs(rep5 - rec5) <= est_rep + m05.est_error(n, 50.0));
    }
}

TEST_CASE("representation at sigma = 1/2, n = 1 reduces to the log-modulus integral") {
    // Im{i z} = Re z: the integrand contributes only through log|zeta|.
    const double t = 23.0;
    const double rep = representation_Sn(1, CriticalStripPoint(0.5, t), kPol);
    HorizontalBranchLine line(0.5, t, kPol);
    auto f = [&](double v) { return line.log_zeta_at(v).real(); };
    std::vector<double> bp{0.5, 1.25, 2.0};
    const double low = integrate_adaptive(f, bp, 1e-9).value;
    auto g = [&](double v) {
        return std::log(std::abs(zeta_eval(Complex(v, t), kPol)));
    };
    std::vector<double> bp2{2.0, 4.0, 8.0, 16.0, 32.0, 48.0};
    const double high = integrate_adaptive(g, bp2, 1e-9).value;
    CHECK(rep == doctest::Approx((low + high) / kPi).epsilon(1e-6));
}

TEST_CASE("line and path backends agree at sigma = 1/2") {
    SnEvaluator line(0.5, 26.0, 2, kPol, SnEvaluator::Backend::line_formula);
    SnEvaluator path(0.5, 26.0, 2, kPol, SnEvaluator::Backend::path_tracked);
    for (double t : {3.0, 14.5, 21.2, 25.0}) {
        CHECK(std::abs(line.Sn(1, t) - path.Sn(1, t)) < 1e-8);
        CHECK(std::abs(line.Sn(2, t) - path.Sn(2, t)) < 1e-7);
    }
}

TEST_CASE("delta_h_Sn: trivial and quadrature cross-checks") {
    CHECK(delta_h_Sn(1, CriticalStripPoint(0.5, 20.0), 0.0, kPol) == 0.0);

    // n = 1, sigma = 1/2: Delta_h S_1 = int over [t-h, t+h] of S
    const double t = 20.0, h = 0.25;
    const double direct = delta_h_Sn(1, CriticalStripPoint(0.5, t), h, kPol);
    SnEvaluator model(0.5, 21.0, 1, kPol);
    auto S = [&](double tau) { return model.Sn(0, tau); };
    std::vector<double> bp{t - h, t + h};
    for (double g : model.zeros().ordinates)
        if (g > t - h && g < t + h) bp.push_back(g);
    const double quad = integrate_adaptive(S, bp, 1e-10).value;
    CHECK(direct == doctest::Approx(quad).epsilon(1e-8));
}

TEST_CASE("delta_h_Sn: finite-strip route residual is O(h)") {
    const CriticalStripPoint p(0.6, 30.0);
    std::vector<double> hs{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> resid;
    for (double h : hs) {
        const double direct = delta_h_Sn(1, p, h, kPol, DeltaRoute::direct);
        const double strip = delta_h_Sn(1, p, h, kPol, DeltaRoute::finite_strip);
        resid.push_back(std::abs(direct - strip));
    }
    // least-squares fit of resid = C * h through the origin
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        num += resid[i] * hs[i];
        den += hs[i] * hs[i];
    }
    const double C = num / den;
    CHECK(C > 0.0);
    for (std::size_t i = 0; i < hs.size(); ++i)
        CHECK(resid[i] <= 2.0 * C * hs[i] + 1e-9);
}

TEST_CASE("rvm_residual rounds to zero and honours the half-weight convention") {
    CHECK(std::abs(rvm_residual(30.0, kPol)) < 0.01);
    CHECK(std::lround(rvm_residual(30.0, kPol)) == 0);
    CHECK(std::lround(rvm_residual(50.0, kPol)) == 0);
    // exactly at an ordinate: N counts it with weight 1/2, S averages
    const ZeroOrdinateList zl = count_zeros(35.0, kPol);
    const double g = zl.ordinates[3];
    CHECK(std::lround(rvm_residual(g, kPol)) == 0);
}
