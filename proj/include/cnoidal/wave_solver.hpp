#pragma once

#include "cnoidal/fourier_space.hpp"
#include "cnoidal/kdv_waves.hpp"
#include "cnoidal/potential.hpp"

#include <stdexcept>
#include <string>
#include <vector>

// Newton solver for the renormalized fixed-point equation
//   Phi = P^(eps) N^(eps)(Phi),   N^(eps)(Phi) = (1/2) V3 Phi^2 (1 + eta(eps^2 Phi)),
// on the even subspace, seeded with the cnoidal profile.  Solutions map to
// lattice waves r_c(x) = eps^2 Phi(eps x) of speed c^2 = V2 (1 + eps^2/12).

namespace cnoidal {

struct SolverOptions {
    int grid_n = 0; // 0: choose by modulus (steep profiles need more modes)
    double tol = 1e-12;
    int max_iters = 25;
    double eps0 = 0.5;        // regime boundary; reported, never silently clamped
    double delta_ball = 0.75; // uniqueness-ball guard in H^1
};

int default_grid_n(double m);

struct NewtonDivergence : std::runtime_error {
    NewtonDivergence(std::string msg, std::vector<double> history)
        : std::runtime_error(std::move(msg)), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

struct OutOfRegime : std::runtime_error {
    OutOfRegime(std::string msg, double eps_, double limit_)
        : std::runtime_error(std::move(msg)), eps(eps_), limit(limit_) {}
    double eps;
    double limit;
};

struct ContinuationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WaveSolution {
    double eps;
    double c;  // lattice wave speed
    double c2; // c^2 = V2 (1 + eps^2/12)
    double m;  // k0^2
    double L;  // normalized half period, c_kdv(m, L) = 1
    PeriodicProfile phi;
    CnoidalWave seed;
    Potential potential;
    int newton_iters = 0;
    double fixed_point_residual = 0.0;
    double h1_distance_to_cnoidal = 0.0;
    std::vector<double> residual_history;
    double tol = 0.0;

    double lattice_period() const { return eps > 0.0 ? 2.0 * L / eps : 0.0; }
    // lattice profile r_c(x) = eps^2 Phi(eps x)
    double r_c(double x) const;
};

// pointwise (1/2) V3 Phi^2 (1 + eta(eps^2 Phi)) on a dealiased (zero-padded)
// grid; domain failures of eta are reported with the offending sample
PeriodicProfile nonlinearity_N_eps(const PeriodicProfile& phi, double eps, const Potential& pot);

// Solve at normalization c_kdv(m0, L0) = 1 with L0 = speed_one_half_period(m0).
WaveSolution newton_solve(double eps, double m0, const Potential& pot, SolverOptions opt = {});

// Same, but seeded from explicit even cosine coefficients (perturbed starts,
// continuation predictors).  L0 must satisfy c_kdv(m0, L0) = 1 to 1e-12.
WaveSolution newton_solve_seeded(double eps, double m0, double L0, const Potential& pot,
                                 const std::vector<double>& seed_even, SolverOptions opt = {});

// Direct residual of the advance-delay equation
//   c^2 r_c''(x) = V'(r_c(x+1)) - 2 V'(r_c(x)) + V'(r_c(x-1))
// for r_c built from an even profile: r_c sampled on a fine grid over one
// lattice period, derivatives and unit shifts by exact Fourier phase factors.
// Independent of the renormalized fixed-point formulation.
double advance_delay_residual(const std::vector<double>& phi_even, double L, double eps,
                              double c2, const Potential& pot, int fine_factor = 4);
double lattice_residual(const WaveSolution& sol, int fine_factor = 4);

// Continuation to nearby (m, L), interpreted in the solution's current
// normalized frame: solves at eps' = sqrt(c_kdv(m, L)) * eps on the
// re-normalized domain L * sqrt(c_kdv(m, L)), predictor rescaled from the
// previous solution.  Newton failures trigger step bisection.
WaveSolution continue_in_speed(const WaveSolution& sol, double m_new, double L_new,
                               SolverOptions opt = {});

// Numerical contraction certificate for the fixed-point argument:
//   C0 >= ||(I - L)^-1|| on the even subspace,
//   C1 >= local Lipschitz bound of DF over the delta-ball (sampled),
//   C2 >= ||D F~|| over the ball, F~ = P^(eps) N^(eps) - P^(0) N^(0).
// The hypothesis holds when theta = C0 (C1 + C2) < 1 and
// ||F~(Phi1)|| < delta (1 - theta) / C0.
struct IftCertificate {
    double C0, C1, C2, theta, delta;
    double f_tilde_norm;
    double error_bound; // (1 - theta)^-1 C0 ||F~(Phi1)||; NaN if theta >= 1
    bool holds;
    std::string violated; // empty when the certificate holds
};
IftCertificate ift_certificate(const WaveSolution& sol, double delta = 0.1, int samples = 4);

} // namespace cnoidal
