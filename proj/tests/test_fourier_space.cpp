#include "cnoidal/fourier_space.hpp"

#include <doctest.h>

#include <stdexcept>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace cnoidal;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(PeriodicGrid(1.0, 48), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicGrid(1.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicGrid(-1.0, 64), std::domain_error);
    CHECK_NOTHROW(PeriodicGrid(2.5, 128));
}

TEST_CASE("analyze: constant and cosine") {
    const PeriodicGrid g(3.0, 64);
    {
        const PeriodicProfile f(g, std::vector<double>(64, 1.0));
        CHECK(std::abs(f.coeffs()[0].real() - 1.0) < 1e-14);
        for (int k = 1; k < 64; ++k)
            CHECK(std::abs(f.coeffs()[k]) < 1e-14);
    }
    {
        std::vector<double> v(64);
        for (int j = 0; j < 64; ++j)
            v[j] = std::cos(M_PI * g.node(j) / g.L);
        const PeriodicProfile f(g, v);
        CHECK(std::abs(f.coeffs()[1].real() - 0.5) < 1e-14);
        CHECK(std::abs(f.coeffs()[63].real() - 0.5) < 1e-14);
        CHECK(std::abs(f.coeffs()[2]) < 1e-14);
    }
}

TEST_CASE("analyze/synthesize: inverse pair on random even data") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int n = 256;
    std::vector<double> v(n);
    v[0] = dist(rng);
    v[n / 2] = dist(rng);
    for (int j = 1; j < n / 2; ++j)
        v[j] = v[n - j] = dist(rng);
    const auto c = analyze(v);
    const auto back = synthesize(c);
    for (int j = 0; j < n; ++j)
        CHECK(std::abs(back[j] - v[j]) < 1e-13);
    // real input: conjugate symmetry; even input: real coefficients
    for (int k = 1; k < n; ++k) {
        CHECK(std::abs(c[k] - std::conj(c[n - k])) < 1e-13);
        CHECK(std::abs(c[k].imag()) < 1e-13);
    }
    CHECK_THROWS_AS(analyze(std::vector<double>(100, 0.0)), std::invalid_argument);
}

TEST_CASE("h1 norm: Parseval against quadrature for band-limited f") {
    const PeriodicGrid g(2.0, 128);
    std::vector<double> v(g.n), dv(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        v[j] = 0.3 + std::cos(M_PI * x / g.L) - 0.25 * std::cos(3.0 * M_PI * x / g.L);
        dv[j] = -(M_PI / g.L) * std::sin(M_PI * x / g.L) +
                0.25 * (3.0 * M_PI / g.L) * std::sin(3.0 * M_PI * x / g.L);
    }
    const PeriodicProfile f(g, v);
    double quad = 0.0;
    for (int j = 0; j < g.n; ++j)
        quad += (v[j] * v[j] + dv[j] * dv[j]) * g.dx();
    CHECK(f.h1_norm() == doctest::Approx(std::sqrt(quad)).epsilon(1e-10));
}

TEST_CASE("odd fraction separates parities") {
    const PeriodicGrid g(1.5, 64);
    std::vector<double> even(g.n), odd(g.n);
    for (int j = 0; j < g.n; ++j) {
        even[j] = std::cos(2.0 * M_PI * g.node(j) / g.L);
        odd[j] = std::sin(M_PI * g.node(j) / g.L);
    }
    CHECK(PeriodicProfile(g, even).odd_fraction() < 1e-13);
    CHECK(PeriodicProfile(g, odd).odd_fraction() > 1.0 - 1e-13);
}

TEST_CASE("symbols: trivial values") {
    const auto p0 = MultiplierSymbol::continuum(1.0, 1.0);
    CHECK(symbol_p0(0.0, p0) == doctest::Approx(12.0));
    CHECK(symbol_p0(1.0, p0) == doctest::Approx(6.0));
    CHECK(symbol_p0(100.0, p0) == doctest::Approx(12.0 / 10001.0));

    const double eps = 0.1;
    const auto pe = MultiplierSymbol::lattice(eps, 1.0, 1.0);
    // s = 0: eps^2/(c^2 - V2) = 12 exactly under the quadratic speed form
    CHECK(symbol_p_eps(0.0, pe) == doctest::Approx(12.0).epsilon(1e-12));
    // first zero of the numerator handled stably
    const double s_zero = 2.0 * M_PI / eps;
    CHECK(symbol_p_eps(s_zero, pe) == doctest::Approx(0.0));
    CHECK(std::isfinite(symbol_p_eps(s_zero, pe)));
    // evenness and positivity on a wide range
    for (double s = 0.0; s < 50.0; s += 0.37) {
        CHECK(symbol_p_eps(s, pe) >= 0.0);
        CHECK(symbol_p_eps(-s, pe) == doctest::Approx(symbol_p_eps(s, pe)));
    }
}

TEST_CASE("lattice symbol approaches the continuum symbol pointwise") {
    const double eps = 0.1;
    const auto pe = MultiplierSymbol::lattice(eps, 1.0, 1.0);
    const auto p0 = MultiplierSymbol::continuum(1.0, 1.0);
    CHECK(std::abs(pe(1.0) - p0(1.0)) < eps * eps); // O(eps^2), constant ~0.6
    CHECK(std::abs(pe(1.0) - p0(1.0)) > 1e-6);      // and genuinely eps-dependent
}

TEST_CASE("speed forms differ at fourth order") {
    const double eps = 0.2, V2 = 1.3, ck = 1.0;
    const double q = speed_squared(eps, V2, ck, SpeedForm::quadratic12);
    const double l = speed_squared(eps, V2, ck, SpeedForm::linear24);
    CHECK(std::abs(q - l) < 1e-3 * eps * eps);
    CHECK(std::abs(q - l) > 1e-8 * eps * eps); // not identical
    CHECK(q == doctest::Approx(V2 * (1 + eps * eps / 12)).epsilon(1e-15));
}

TEST_CASE("apply_multiplier: cosine eigenfunction and zero") {
    const double V2 = 1.0, ck = 1.0;
    const PeriodicGrid g(2.0, 128);
    const auto p0 = MultiplierSymbol::continuum(V2, ck);
    std::vector<double> v(g.n);
    for (int j = 0; j < g.n; ++j)
        v[j] = std::cos(M_PI * g.node(j) / g.L);
    const auto out = apply_multiplier(p0, PeriodicProfile(g, v));
    const double s1 = M_PI / g.L;
    const double expected = 12.0 / (V2 * (ck + s1 * s1));
    for (int j = 0; j < g.n; ++j)
        CHECK(out.values()[j] == doctest::Approx(expected * v[j]).epsilon(1e-12));

    const auto zero = apply_multiplier(p0, PeriodicProfile(g, std::vector<double>(g.n, 0.0)));
    for (double z : zero.values())
        CHECK(std::abs(z) < 1e-15);
}

TEST_CASE("(c_kdv - d^2) inverts p0 on band-limited input") {
    const double V2 = 2.0, ck = 1.0;
    const PeriodicGrid g(3.0, 128);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(g.n, 0.0);
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k <= 5; ++k)
            v[j] += dist(rng) * 0.0 + std::cos(k * M_PI * g.node(j) / g.L) / (1.0 + k * k);
    const PeriodicProfile f(g, v);
    const auto p0 = MultiplierSymbol::continuum(V2, ck);
    const auto g1 = apply_multiplier(p0, f);
    // (V2/12)(c_kdv - d^2) recovers f
    const auto g2 = g1.derivative(2);
    for (int j = 0; j < g.n; ++j) {
        const double rec = (V2 / 12.0) * (ck * g1.values()[j] - g2.values()[j]);
        CHECK(std::abs(rec - v[j]) < 1e-12);
    }
}

TEST_CASE("apply_multiplier commutes with the even projection") {
    const PeriodicGrid g(2.5, 128);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(g.n);
    for (auto& x : v)
        x = dist(rng);
    const PeriodicProfile f(g, v);
    const auto pe = MultiplierSymbol::lattice(0.15, 1.0, 1.0);

    // project-then-apply == apply-then-project (coefficients)
    std::vector<double> ev(g.n);
    for (int j = 0; j < g.n; ++j)
        ev[j] = 0.5 * (v[j] + v[(g.n - j) % g.n]);
    const auto a = apply_multiplier(pe, PeriodicProfile(g, ev));
    const auto b = apply_multiplier(pe, f);
    std::vector<double> bv(g.n);
    for (int j = 0; j < g.n; ++j)
        bv[j] = 0.5 * (b.values()[j] + b.values()[(g.n - j) % g.n]);
    for (int j = 0; j < g.n; ++j)
        CHECK(std::abs(a.values()[j] - bv[j]) < 1e-13);
}

TEST_CASE("multiplier gap: zero limit, quadratic slope, uniform ratio") {
    const double L0 = 3.6405896139023461; // speed-one half period at k2 = 0.6
    const PeriodicGrid g(L0, 256);
    CHECK(multiplier_gap(0.0, g, 1.0) == 0.0);

    const double eps_list[] = {0.2, 0.1, 0.05, 0.025};
    double lx[4], ly[4], ratio_min = 1e300, ratio_max = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double gap = multiplier_gap(eps_list[i], g, 1.0);
        lx[i] = std::log(eps_list[i]);
        ly[i] = std::log(gap);
        const double r = gap / (eps_list[i] * eps_list[i]);
        ratio_min = std::min(ratio_min, r);
        ratio_max = std::max(ratio_max, r);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 4; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    CHECK(std::abs(slope - 2.0) < 0.15);
    CHECK(ratio_max / ratio_min < 1.5);
}

TEST_CASE("operator norm of a diagonal multiplier equals max |symbol| on the grid") {
    const PeriodicGrid g(2.0, 64);
    const int n = g.n;
    const auto p0 = MultiplierSymbol::continuum(1.7, 1.0);

    // dense grid-space matrix of the multiplier
    Eigen::MatrixXd A(n, n);
    for (int col = 0; col < n; ++col) {
        std::vector<double> e(n, 0.0);
        e[col] = 1.0;
        const auto out = apply_multiplier(p0, PeriodicProfile(g, e));
        for (int row = 0; row < n; ++row)
            A(row, col) = out.values()[row];
    }
    // H^1 Gram matrix in grid coordinates
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = g.wavenumber(k);
        const double w = 2.0 * g.L * (1.0 + s * s) / (n * double(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                W(i, j) += w * std::cos(2.0 * M_PI * k * (i - j) / n);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ws(W);
    const Eigen::MatrixXd Wh = ws.operatorSqrt();
    const Eigen::MatrixXd M = Wh * A * Wh.inverse();
    const double opnorm = M.operatorNorm();

    double symmax = 0.0;
    for (int k = 0; k < n; ++k)
        symmax = std::max(symmax, std::abs(p0(g.wavenumber(k))));
    CHECK(opnorm == doctest::Approx(symmax).epsilon(1e-10));
}

TEST_CASE("even coefficient helpers round trip") {
    const PeriodicGrid g(1.8, 128);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> a(g.n / 2 + 1);
    for (auto& x : a)
        x = dist(rng);
    const auto f = profile_from_even(g, a);
    const auto a2 = even_coeffs(f);
    for (size_t k = 0; k < a.size(); ++k)
        CHECK(std::abs(a[k] - a2[k]) < 1e-13);
    CHECK(f.odd_fraction() < 1e-13);
    CHECK(h1_norm_even(g.L, a) == doctest::Approx(f.h1_norm()).epsilon(1e-12));
    // pointwise evaluation agrees with grid values
    for (int j = 0; j < g.n; j += 7)
        CHECK(eval_even(a, g.L, g.node(j)) == doctest::Approx(f.values()[j]).epsilon(1e-11));
}

TEST_CASE("padded product is alias-free for quadratics") {
    const PeriodicGrid g(2.0, 64);
    // f = cos(k_hi x), f^2 = 1/2 + cos(2 k_hi x)/2 with 2 k_hi beyond the grid
    std::vector<double> a(g.n / 2 + 1, 0.0);
    const int khi = 20;
    a[khi] = 0.5; // cos(k x)
    const auto padded = pad_synthesize_even(a, g.n);
    std::vector<double> sq(padded.size());
    for (size_t j = 0; j < padded.size(); ++j)
        sq[j] = padded[j] * padded[j];
    const auto c = truncate_analyze_even(sq, g.n);
    CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-13));
    // the 2*khi = 40 harmonic is beyond n/2 = 32: must be truncated, not aliased
    for (int k = 1; k <= g.n / 2; ++k)
        CHECK(std::abs(c[k]) < 1e-14);
}
