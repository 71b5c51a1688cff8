#include "cnoidal/kdv_waves.hpp"

#include "cnoidal/elliptic.hpp"
#include "cnoidal/fourier_space.hpp"

#include <cmath>
#include <stdexcept>

namespace cnoidal {

double c_kdv_of(double m, double L) {
    const double K = complete_K(m);
    return 4.0 * K * K * std::sqrt(1.0 - m + m * m) / (L * L);
}

double speed_one_half_period(double m) {
    return 2.0 * complete_K(m) * std::pow(1.0 - m + m * m, 0.25);
}

double CnoidalWave::b_phi() const {
    return 2.0 * (coeffs.V3 / coeffs.V2) * E1 * E2 * E3;
}

CnoidalWave make_cnoidal(double m, double L, KdvCoefficients coeffs) {
    if (!(m > 0.0 && m < 1.0))
        throw std::domain_error("make_cnoidal: modulus m = k^2 must lie strictly in (0, 1)");
    if (!(L > 0.0))
        throw std::domain_error("make_cnoidal: half period must be positive");
    if (!(coeffs.V2 > 0.0 && coeffs.V3 > 0.0))
        throw std::domain_error("make_cnoidal: need V''(0) > 0 and V'''(0) > 0");

    CnoidalWave w;
    w.m = m;
    w.L = L;
    w.K = complete_K(m);
    w.coeffs = coeffs;
    const double S = std::sqrt(1.0 - m + m * m);
    const double ratio = coeffs.V2 / coeffs.V3;
    const double kap = ratio * w.K * w.K / (3.0 * L * L);
    w.E1 = kap * (-2.0 + m + S);
    w.E2 = kap * (1.0 - 2.0 * m + S);
    w.E3 = kap * (1.0 + m + S);
    w.A = w.E2;
    w.B = ratio * w.K * w.K * m / (L * L);
    w.D = w.K / L;
    w.c_kdv = 4.0 * w.K * w.K * S / (L * L);
    return w;
}

double eval_profile(const CnoidalWave& w, double xi) {
    const auto j = jacobi_sn_cn_dn(w.D * xi, w.m);
    return w.A + w.B * j.cn * j.cn;
}

double eval_profile_derivative(const CnoidalWave& w, double xi) {
    const auto j = jacobi_sn_cn_dn(w.D * xi, w.m);
    return -2.0 * w.B * w.D * j.cn * j.sn * j.dn;
}

double kdv_residual(const CnoidalWave& w, int grid_size) {
    const PeriodicGrid grid(w.L, grid_size);
    std::vector<double> phi(grid.n);
    for (int j = 0; j < grid.n; ++j)
        phi[j] = eval_profile(w, grid.node(j));
    const PeriodicProfile f(grid, phi);
    const auto fpp = f.derivative(2);
    const double nu = w.coeffs.V3 / w.coeffs.V2;
    double sup = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const double r = -w.c_kdv * phi[j] + 6.0 * nu * phi[j] * phi[j] + fpp.values()[j];
        sup = std::max(sup, std::abs(r));
    }
    return sup;
}

double second_integral_residual(const CnoidalWave& w, double xi) {
    const double nu = w.coeffs.V3 / w.coeffs.V2;
    const double phi = eval_profile(w, xi);
    const double dphi = eval_profile_derivative(w, xi);
    const double F = -(phi - w.E1) * (phi - w.E2) * (phi - w.E3);
    return dphi * dphi - 4.0 * nu * F;
}

ShiftedAnsatz shifted_ansatz_check(const CnoidalWave& w, double shift, int grid_size) {
    const double nu = w.coeffs.V3 / w.coeffs.V2;
    const double c_shifted = w.c_kdv - 12.0 * nu * shift;
    const double a_phi = shift * (6.0 * nu * shift - w.c_kdv);

    const PeriodicGrid grid(w.L, grid_size);
    std::vector<double> phi(grid.n);
    for (int j = 0; j < grid.n; ++j)
        phi[j] = eval_profile(w, grid.node(j)) - shift;
    const PeriodicProfile f(grid, phi);
    const auto fpp = f.derivative(2);
    double sup = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const double r =
            -c_shifted * phi[j] + 6.0 * nu * phi[j] * phi[j] + fpp.values()[j] + a_phi;
        sup = std::max(sup, std::abs(r));
    }
    return {sup, c_shifted, 12.0 * nu * shift, a_phi};
}

double SolitonLimit::operator()(double xi) const {
    const double s = 1.0 / std::cosh(0.5 * std::sqrt(beta) * xi);
    const double amp = 0.5 * std::sqrt(beta) * s;
    return v2_over_v3 * amp * amp;
}

double SolitonLimit::peak() const { return v2_over_v3 * beta / 4.0; }

SolitonLimit soliton_limit(const CnoidalWave& w) {
    const double beta = 4.0 * (w.coeffs.V3 / w.coeffs.V2) * (w.E3 - w.E1);
    return {beta, w.coeffs.V2 / w.coeffs.V3};
}

double LinearLimit::operator()(double xi) const {
    return mean + amplitude * std::cos(wavenumber * xi);
}

LinearLimit linear_limit(const CnoidalWave& w) {
    const double nu = w.coeffs.V3 / w.coeffs.V2;
    return {0.5 * (w.E3 + w.E2), 0.5 * (w.E3 - w.E2), std::sqrt(4.0 * nu * (w.E3 - w.E1))};
}

} // namespace cnoidal
