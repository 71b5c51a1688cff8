#include "cnoidal/kdv_waves.hpp"

#include "cnoidal/elliptic.hpp"

#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>
#include <random>
#include <vector>

using namespace cnoidal;

namespace {

const KdvCoefficients kUnit{1.0, 1.0};

// test oracle: solve the cubic Phi^3 - (V2 c/(4 V3)) Phi^2 - (V2 B_phi/(2 V3))
// numerically from the (c_kdv, B_phi) pair and compare against the closed-form
// roots (root-ordering check)
std::array<double, 3> cubic_roots_oracle(double c1, double c0) {
    // x^3 + p x^2 + q x + r with q = 0: x^3 - c1 x^2 - c0 = 0 solved by Newton
    // off three starts bracketing the closed-form layout
    auto f = [&](double x) { return x * x * x - c1 * x * x - c0; };
    auto fp = [&](double x) { return 3.0 * x * x - 2.0 * c1 * x; };
    std::array<double, 3> roots{};
    // coarse scan for sign changes
    std::vector<double> brackets;
    double prev_x = -10.0 * (std::abs(c1) + 1.0), prev_f = f(prev_x);
    for (double x = prev_x; x < 10.0 * (std::abs(c1) + 1.0); x += 1e-3 * (std::abs(c1) + 1.0)) {
        const double fx = f(x);
        if (prev_f * fx <= 0.0 && fx != prev_f) {
            double r = 0.5 * (prev_x + x);
            for (int it = 0; it < 100; ++it) {
                const double d = f(r) / fp(r);
                r -= d;
                if (std::abs(d) < 1e-15 * (1.0 + std::abs(r)))
                    break;
            }
            brackets.push_back(r);
        }
        prev_x = x;
        prev_f = fx;
    }
    REQUIRE(brackets.size() >= 3);
    roots = {brackets[0], brackets[1], brackets[2]};
    return roots;
}

} // namespace

TEST_CASE("make_cnoidal: validation") {
    CHECK_THROWS_AS(make_cnoidal(0.0, 1.0, kUnit), std::domain_error);
    CHECK_THROWS_AS(make_cnoidal(1.0, 1.0, kUnit), std::domain_error);
    CHECK_THROWS_AS(make_cnoidal(0.5, -1.0, kUnit), std::domain_error);
    CHECK_THROWS_AS(make_cnoidal(0.5, 1.0, KdvCoefficients{1.0, -1.0}), std::domain_error);
}

TEST_CASE("speed-one periods match the tabulated values") {
    // 2L = 4 K(k) (1 - k^2 + k^4)^(1/4)
    CHECK(2.0 * speed_one_half_period(0.3) == doctest::Approx(6.4632293775045180).epsilon(1e-13));
    CHECK(2.0 * speed_one_half_period(0.6) == doctest::Approx(7.2811792278046925).epsilon(1e-13));
    CHECK(2.0 * speed_one_half_period(0.999) ==
          doctest::Approx(19.359692137920973).epsilon(1e-12));
    for (double m : {0.3, 0.6, 0.999})
        CHECK(c_kdv_of(m, speed_one_half_period(m)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("root system identities over random parameters") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> mm(0.01, 0.99), ll(0.5, 8.0), vv(0.25, 4.0);
    for (int i = 0; i < 100; ++i) {
        const KdvCoefficients co{vv(rng), vv(rng)};
        const auto w = make_cnoidal(mm(rng), ll(rng), co);
        CHECK(w.E1 < w.E2);
        CHECK(w.E2 < w.E3);
        const double scale =
            std::max({std::abs(w.E1 * w.E2), std::abs(w.E2 * w.E3), std::abs(w.E1 * w.E3)});
        CHECK(std::abs(w.E1 * w.E2 + w.E2 * w.E3 + w.E1 * w.E3) < 1e-12 * scale);
        const double sum_target = co.V2 / (4.0 * co.V3) * w.c_kdv;
        CHECK(std::abs(w.E1 + w.E2 + w.E3 - sum_target) < 1e-12 * std::abs(sum_target));
        CHECK(std::abs(w.m - (w.E3 - w.E2) / (w.E3 - w.E1)) < 1e-12);
        // B_phi gauge from the product of roots
        CHECK(w.b_phi() ==
              doctest::Approx(2.0 * (co.V3 / co.V2) * w.E1 * w.E2 * w.E3).epsilon(1e-14));
        // amplitude/scale bookkeeping
        CHECK(w.B == doctest::Approx((co.V2 / co.V3) * w.K * w.K * w.m / (w.L * w.L)));
        CHECK(w.D == doctest::Approx(w.K / w.L));
        CHECK(w.c_kdv > M_PI * M_PI / (w.L * w.L));
    }
}

TEST_CASE("closed-form roots agree with a numeric cubic solve") {
    for (double m : {0.25, 0.6, 0.9}) {
        const auto w = make_cnoidal(m, 2.0, kUnit);
        // (Phi')^2 = 4 nu (-Phi^3 + (V2 c/(4 V3)) Phi^2 + (V2/(2 V3)) B_phi)
        const double c1 = w.coeffs.V2 * w.c_kdv / (4.0 * w.coeffs.V3);
        const double c0 = w.coeffs.V2 * w.b_phi() / (2.0 * w.coeffs.V3);
        const auto roots = cubic_roots_oracle(c1, c0);
        CHECK(roots[0] == doctest::Approx(w.E1).epsilon(1e-9));
        CHECK(roots[1] == doctest::Approx(w.E2).epsilon(1e-9));
        CHECK(roots[2] == doctest::Approx(w.E3).epsilon(1e-9));
    }
}

TEST_CASE("coefficient comparison identities of the cn^2 ansatz") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mm(0.05, 0.95), ll(0.8, 5.0);
    for (int i = 0; i < 50; ++i) {
        const auto w = make_cnoidal(mm(rng), ll(rng), kUnit);
        const double nu = w.coeffs.V3 / w.coeffs.V2;
        const double e1 = 6.0 * nu * w.A * w.A - w.c_kdv * w.A +
                          2.0 * (1.0 - w.m) * w.B * w.D * w.D;
        const double e2 = w.c_kdv - 12.0 * nu * w.A + 4.0 * (1.0 - 2.0 * w.m) * w.D * w.D;
        const double e3 = w.B - (w.coeffs.V2 / w.coeffs.V3) * w.m * w.D * w.D;
        CHECK(std::abs(e1) < 1e-12 * (std::abs(w.c_kdv * w.A) + w.B * w.D * w.D));
        CHECK(std::abs(e2) < 1e-12 * (w.c_kdv + 4.0 * w.D * w.D));
        CHECK(std::abs(e3) < 1e-14 * w.B);
    }
}

TEST_CASE("profile endpoints and bracket") {
    const auto w = make_cnoidal(0.6, speed_one_half_period(0.6), kUnit);
    CHECK(eval_profile(w, 0.0) == doctest::Approx(w.A + w.B).epsilon(1e-14));
    CHECK(eval_profile(w, 0.0) == doctest::Approx(w.E3).epsilon(1e-13));
    CHECK(eval_profile(w, w.L) == doctest::Approx(w.A).epsilon(1e-12));
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> xx(-3.0 * w.L, 3.0 * w.L);
    for (int i = 0; i < 500; ++i) {
        const double xi = xx(rng);
        const double v = eval_profile(w, xi);
        CHECK(v >= w.A - 1e-12);
        CHECK(v <= w.A + w.B + 1e-12);
        // evenness and periodicity
        CHECK(eval_profile(w, -xi) == doctest::Approx(v).epsilon(1e-13));
        CHECK(eval_profile(w, xi + 2.0 * w.L) == doctest::Approx(v).epsilon(1e-11));
    }
}

TEST_CASE("kdv residual: exactness and grid refinement") {
    for (double m : {0.3, 0.6, 0.9}) {
        const auto w = make_cnoidal(m, speed_one_half_period(m), kUnit);
        CHECK(kdv_residual(w, 512) < 1e-9);
    }
    // zero profile satisfies the equation identically: the residual formula
    // on a constant-zero profile is exactly zero
    {
        const auto w = make_cnoidal(0.5, 2.0, kUnit);
        const double nu = 1.0;
        const double r = -w.c_kdv * 0.0 + 6.0 * nu * 0.0 * 0.0 + 0.0;
        CHECK(r == 0.0);
    }
    // genuine spectral refinement on an under-resolved steep profile
    const auto w_steep = make_cnoidal(0.99999, speed_one_half_period(0.99999), kUnit);
    const double s64 = kdv_residual(w_steep, 64);
    const double s128 = kdv_residual(w_steep, 128);
    CHECK(s128 < s64);
    CHECK(s128 < 0.1 * s64);
    // smoother profiles sit at the roundoff floor already; the floor itself
    // scales with n s_max^2 through the spectral second derivative
    const auto w9 = make_cnoidal(0.9, speed_one_half_period(0.9), kUnit);
    double prev = kdv_residual(w9, 64);
    for (int n = 128; n <= 1024; n *= 2) {
        const double cur = kdv_residual(w9, n);
        const double smax = (n / 2) * M_PI / w9.L;
        // roundoff floor of the spectral second derivative
        const double floor = 8e-16 * std::abs(w9.E3) * smax * smax + 1e-12;
        CHECK(cur <= std::max(prev, floor));
        CHECK(cur < 1e-9);
        prev = cur;
    }
    CHECK_THROWS_AS(kdv_residual(w9, 100), std::invalid_argument);
}

TEST_CASE("second integral residual") {
    const auto w = make_cnoidal(0.6, 2.5, kUnit);
    const double scale = std::pow(w.E3 - w.E1, 3);
    // turning points are exact zeros up to roundoff
    CHECK(std::abs(second_integral_residual(w, 0.0)) < 1e-13 * scale);
    CHECK(std::abs(second_integral_residual(w, w.L)) < 1e-13 * scale);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> xx(-w.L, w.L);
    for (int i = 0; i < 200; ++i)
        CHECK(std::abs(second_integral_residual(w, xx(rng))) < 1e-10 * scale);
}

TEST_CASE("shifted ansatz: Galilean equivalence") {
    const auto w = make_cnoidal(0.5, speed_one_half_period(0.5), kUnit);
    // zero shift reduces to the plain integrated-KdV residual
    const auto none = shifted_ansatz_check(w, 0.0, 512);
    CHECK(none.residual == doctest::Approx(kdv_residual(w, 512)).epsilon(1e-6));
    CHECK(none.a_phi == 0.0);
    // shifting by E2 zeroes the offset root; residual stays at solver floor
    const auto sh = shifted_ansatz_check(w, w.E2, 512);
    CHECK(sh.residual < 1e-9);
    CHECK(sh.speed_shift == doctest::Approx(12.0 * w.E2).epsilon(1e-14));
    CHECK(sh.shifted_speed == doctest::Approx(w.c_kdv - 12.0 * w.E2).epsilon(1e-14));
    // shifted roots e_i = E_i - E2 leave e2 = 0 with nonzero A_phi
    CHECK(std::abs(sh.a_phi) > 1e-6);
    CHECK(sh.a_phi == doctest::Approx(w.E2 * (6.0 * w.E2 - w.c_kdv)).epsilon(1e-12));
}

TEST_CASE("soliton limit near m = 1") {
    const auto w = make_cnoidal(0.9999, speed_one_half_period(0.9999), kUnit);
    const auto sech = soliton_limit(w);
    CHECK(sech.peak() == doctest::Approx((w.coeffs.V2 / w.coeffs.V3) * sech.beta / 4.0));
    CHECK(sech(50.0) < 1e-10 * sech.peak());
    CHECK(sech(-50.0) < 1e-10 * sech.peak());
    // cnoidal minus baseline vs (E3 - E2) sech^2(sqrt(nu (E3 - E1)) xi)
    const double amp = w.E3 - w.E2;
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double xi = -0.5 * w.L + w.L * i / 400.0;
        const double cno = eval_profile(w, xi) - w.E2;
        const double arg = std::sqrt((w.coeffs.V3 / w.coeffs.V2) * (w.E3 - w.E1)) * xi;
        const double sh = 1.0 / std::cosh(arg);
        worst = std::max(worst, std::abs(cno - amp * sh * sh) / amp);
    }
    CHECK(worst < 1e-2);
}

TEST_CASE("linear limit near m = 0") {
    const auto w = make_cnoidal(1e-4, speed_one_half_period(1e-4), kUnit);
    const auto lin = linear_limit(w);
    CHECK(lin.mean == doctest::Approx(0.5 * (w.E3 + w.E2)));
    // degenerate amplitude gives the constant E2
    {
        const LinearLimit flat{w.E2, 0.0, lin.wavenumber};
        CHECK(flat(0.3) == doctest::Approx(w.E2));
    }
    // mean over one period of the cosine is (E3 + E2)/2
    double mean = 0.0;
    const int n = 2048;
    const double period = 2.0 * M_PI / lin.wavenumber;
    for (int j = 0; j < n; ++j)
        mean += lin(period * j / n);
    mean /= n;
    CHECK(mean == doctest::Approx(0.5 * (w.E3 + w.E2)).epsilon(1e-12));
    // sup distance to the true cnoidal profile
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double xi = -w.L + 2.0 * w.L * i / 400.0;
        worst = std::max(worst, std::abs(eval_profile(w, xi) - lin(xi)));
    }
    CHECK(worst < 1e-3 * (w.E3 - w.E2));
}
