#include "cnoidal/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace cnoidal {

namespace {

void require_hypothesis(double V2, double V3, const std::string& kind) {
    if (!(V2 > 0.0))
        throw std::domain_error(kind + ": requires V''(0) > 0");
    if (!(V3 > 0.0))
        throw std::domain_error(kind + ": requires V'''(0) > 0");
}

} // namespace

Potential Potential::fpu_alpha(double a, double b) {
    require_hypothesis(a, b, "fpu_alpha");
    Potential p;
    p.V2 = a;
    p.V3 = b;
    p.V = [a, b](double r) { return 0.5 * a * r * r + b * r * r * r / 6.0; };
    p.vprime = [a, b](double r) { return a * r + 0.5 * b * r * r; };
    p.eta = [](double) { return 0.0; };
    p.eta_prime = [](double) { return 0.0; };
    p.kind = "fpu_alpha";
    p.params = {{"a", a}, {"b", b}};
    return p;
}

Potential Potential::toda(double alpha, double beta) {
    const double V2 = alpha * beta * beta;
    const double V3 = -alpha * beta * beta * beta;
    require_hypothesis(V2, V3, "toda (needs alpha > 0, beta < 0)");
    Potential p;
    p.V2 = V2;
    p.V3 = V3;
    p.V = [alpha, beta](double r) { return alpha * (std::expm1(-beta * r) + beta * r); };
    p.vprime = [alpha, beta](double r) { return alpha * beta * (-std::expm1(-beta * r)); };
    // eta(x) = 2 (expm1(-x) + x)/x^2 - 1 with x = beta r.  The closed form
    // loses ~eps_mach/|x| absolutely, so small |x| takes the series; the
    // switch point balances series truncation against that cancellation.
    p.eta = [beta](double r) {
        const double x = beta * r;
        if (std::abs(x) < 0.05)
            return x * (-1.0 / 3.0 +
                        x * (1.0 / 12.0 +
                             x * (-1.0 / 60.0 +
                                  x * (1.0 / 360.0 +
                                       x * (-1.0 / 2520.0 + x / 20160.0)))));
        return 2.0 * (std::expm1(-x) + x) / (x * x) - 1.0;
    };
    p.eta_prime = [beta](double r) {
        const double x = beta * r;
        double d;
        if (std::abs(x) < 0.05)
            d = -1.0 / 3.0 +
                x * (1.0 / 6.0 +
                     x * (-1.0 / 20.0 + x * (1.0 / 90.0 + x * (-1.0 / 504.0 + x / 3360.0))));
        else
            d = 2.0 * ((-std::expm1(-x)) * x - 2.0 * (std::expm1(-x) + x)) / (x * x * x);
        return beta * d;
    };
    p.kind = "toda";
    p.params = {{"alpha", alpha}, {"beta", beta}};
    return p;
}

Potential Potential::lennard_jones(double A, double B) {
    if (!(A > 0.0 && B > 0.0))
        throw std::domain_error("lennard_jones: A and B must be positive");
    const double d = std::pow(2.0 * A / B, 1.0 / 6.0);
    const double d8 = std::pow(d, -8.0);
    const double V2 = 36.0 * B * d8;
    const double V3 = 756.0 * B * d8 / d;
    const double V4 = 13356.0 * B * d8 / (d * d);
    const double V5 = 231840.0 * B * d8 / (d * d * d);
    const double V6 = 4122720.0 * B * d8 / (d * d * d * d);
    require_hypothesis(V2, V3, "lennard_jones");
    const auto U = [A, B](double rho) {
        const double r6 = std::pow(rho, -6.0);
        return A * r6 * r6 - B * r6;
    };
    const double U_min = U(d);
    Potential p;
    p.V2 = V2;
    p.V3 = V3;
    p.r_max = d;
    p.V = [U, U_min, d](double r) { return U(d - r) - U_min; };
    p.vprime = [A, B, d](double r) {
        const double rho = d - r;
        return 12.0 * A * std::pow(rho, -13.0) - 6.0 * B * std::pow(rho, -7.0);
    };
    const auto vp = p.vprime;
    const double small = 1e-4 * d;
    p.eta = [vp, V2, V3, V4, V5, V6, small](double r) {
        if (std::abs(r) < small)
            return r * (V4 / (3.0 * V3) + r * (V5 / (12.0 * V3) + r * V6 / (60.0 * V3)));
        return 2.0 * (vp(r) - V2 * r) / (V3 * r * r) - 1.0;
    };
    const auto vpp = [A, B, d](double r) {
        const double rho = d - r;
        return 156.0 * A * std::pow(rho, -14.0) - 42.0 * B * std::pow(rho, -8.0);
    };
    p.eta_prime = [vp, vpp, V2, V3, V4, V5, V6, small](double r) {
        if (std::abs(r) < small)
            return V4 / (3.0 * V3) + r * (V5 / (6.0 * V3) + r * V6 / (20.0 * V3));
        return 2.0 * ((vpp(r) - V2) * r - 2.0 * (vp(r) - V2 * r)) / (V3 * r * r * r);
    };
    p.kind = "lennard_jones";
    p.params = {{"A", A}, {"B", B}, {"d", d}};
    return p;
}

Potential Potential::custom(double V2, double V3, std::function<double(double)> vprime,
                            std::function<double(double)> V) {
    require_hypothesis(V2, V3, "custom potential");
    if (!vprime)
        throw std::invalid_argument("custom potential: vprime is required");
    Potential p;
    p.V2 = V2;
    p.V3 = V3;
    p.vprime = vprime;
    p.V = std::move(V);
    const double floor = 1e-7;
    p.eta = [vprime, V2, V3, floor](double r) {
        if (std::abs(r) < floor) {
            // linear interpolation through eta(0) = 0
            const double edge = 2.0 * (vprime(floor) - V2 * floor) / (V3 * floor * floor) - 1.0;
            return edge * (r / floor);
        }
        return 2.0 * (vprime(r) - V2 * r) / (V3 * r * r) - 1.0;
    };
    const auto eta = p.eta;
    p.eta_prime = [eta](double r) {
        const double h = 1e-6 * std::max(1.0, std::abs(r));
        return (eta(r + h) - eta(r - h)) / (2.0 * h);
    };
    p.kind = "custom";
    return p;
}

} // namespace cnoidal
