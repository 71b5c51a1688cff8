#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

// Nearest-neighbour interaction potentials with V(0) = V'(0) = 0,
// V''(0) > 0, V'''(0) > 0, split as
//   V'(r) = V''(0) r + N(r),  N(r) = (1/2) V'''(0) r^2 (1 + eta(r)),
// with eta in C^1 and eta(0) = 0.

namespace cnoidal {

struct Potential {
    double V2 = 0.0; // V''(0)
    double V3 = 0.0; // V'''(0)
    std::function<double(double)> V;         // potential energy
    std::function<double(double)> vprime;    // restoring force V'
    std::function<double(double)> eta;       // nonlinear remainder shape
    std::function<double(double)> eta_prime; // d eta / dr
    // open validity interval for r (pole guard)
    double r_min = -std::numeric_limits<double>::infinity();
    double r_max = std::numeric_limits<double>::infinity();
    std::string kind = "custom";
    std::vector<std::pair<std::string, double>> params;

    // cubic chain V(r) = a r^2/2 + b r^3/6; the force remainder is exactly
    // quadratic, so eta == 0
    static Potential fpu_alpha(double a, double b);

    // (12,6) potential A rho^-12 - B rho^-6, centered at the equilibrium
    // spacing d = (2A/B)^(1/6) and oriented so that r measures compression
    // (rho = d - r).  With r as extension the third derivative at the
    // minimum is negative, which breaks the V'''(0) > 0 hypothesis; the
    // compression orientation satisfies it.  Pole at r -> d.
    static Potential lennard_jones(double A, double B);

    // V(r) = alpha (e^{-beta r} + beta r - 1); V''(0) = alpha beta^2,
    // V'''(0) = -alpha beta^3, so the hypothesis requires alpha > 0 and
    // beta < 0
    static Potential toda(double alpha, double beta);

    static Potential custom(double V2, double V3, std::function<double(double)> vprime,
                            std::function<double(double)> V = {});
};

} // namespace cnoidal
