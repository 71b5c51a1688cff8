#include "cnoidal/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cnoidal {

double complete_K(double m) {
    if (!(m >= 0.0))
        throw std::domain_error("complete_K: m must be in [0, 1)");
    if (m >= 1.0)
        throw std::domain_error("complete_K: K(m) diverges as m -> 1; need m < 1");
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int it = 0; it < 64 && a - b > 2e-16 * a; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (a + b);
}

EllipticValues jacobi_sn_cn_dn(double u, double m) {
    if (!std::isfinite(u))
        throw std::domain_error("jacobi_sn_cn_dn: non-finite argument");
    if (m < 0.0 || m > 1.0)
        throw std::domain_error("jacobi_sn_cn_dn: m must be in [0, 1]");

    // Degenerate moduli have exact closed forms; the Landen recurrence would
    // only add cancellation there.
    if (m == 0.0)
        return {M_PI / 2, std::sin(u), std::cos(u), 1.0};
    if (m == 1.0) {
        const double s = 1.0 / std::cosh(u);
        return {std::numeric_limits<double>::infinity(), std::tanh(u), s, s};
    }

    // Descending Landen ladder: a_{i+1} = (a_i+b_i)/2 until c_i = (a_i-b_i)/2
    // is negligible.
    constexpr int kMax = 32;
    std::array<double, kMax> a{}, c{};
    double an = 1.0;
    double bn = std::sqrt(1.0 - m);
    a[0] = an;
    c[0] = std::sqrt(m);
    int N = 0;
    while (std::abs(c[N]) > 1e-17 * an && N + 1 < kMax) {
        ++N;
        const double at = 0.5 * (an + bn);
        c[N] = 0.5 * (an - bn);
        bn = std::sqrt(an * bn);
        an = at;
        a[N] = an;
    }
    const double K = M_PI / (2.0 * an);

    // Backward recurrence for the amplitude phi.
    double phi = std::ldexp(1.0, N) * an * u;
    for (int i = N; i >= 1; --i) {
        const double t = std::clamp(c[i] * std::sin(phi) / a[i], -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(t));
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    // dn >= sqrt(1 - m) > 0 for m < 1, so the defining relation
    // dn^2 = 1 - m sn^2 fixes dn without a branch choice
    const double dn = std::sqrt(1.0 - m * sn * sn);
    return {K, sn, cn, dn};
}

namespace {

// 15-point Gauss-Kronrod pair on [-1, 1].
constexpr std::array<double, 8> kKronrodX = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& f, double lo, double hi, double& result, double& err) {
    const double h = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);
    double resk = kKronrodW[7] * f(mid);
    double resg = kGaussW[3] * f(mid);
    for (int j = 0; j < 7; ++j) {
        const double v = f(mid - h * kKronrodX[j]) + f(mid + h * kKronrodX[j]);
        resk += kKronrodW[j] * v;
        if (j % 2 == 1)
            resg += kGaussW[j / 2] * v;
    }
    result = resk * h;
    err = std::abs((resk - resg) * h);
}

template <typename F>
double adaptive_gk(const F& f, double lo, double hi, double tol, int depth = 0) {
    double r, e;
    gk15(f, lo, hi, r, e);
    if (e <= tol || depth > 48)
        return r;
    const double mid = 0.5 * (lo + hi);
    return adaptive_gk(f, lo, mid, tol / 2, depth + 1) +
           adaptive_gk(f, mid, hi, tol / 2, depth + 1);
}

} // namespace

double invert_elliptic_integral(double psi, double m) {
    if (!(m > 0.0 && m < 1.0))
        throw std::domain_error("invert_elliptic_integral: m must be in (0, 1)");
    if (!std::isfinite(psi))
        throw std::domain_error("invert_elliptic_integral: non-finite psi");
    if (psi == 0.0)
        return 0.0;
    const auto f = [m](double s) {
        const double q = std::sin(s);
        return 1.0 / std::sqrt(1.0 - m * q * q);
    };
    const double tol = 1e-14 * std::max(1.0, std::abs(psi));
    return adaptive_gk(f, 0.0, psi, tol);
}

} // namespace cnoidal
