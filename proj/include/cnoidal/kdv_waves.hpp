#pragma once

#include <functional>

// Explicit cnoidal travelling-wave solutions of the integrated KdV equation
//   -c_kdv Phi + 6 (V3/V2) Phi^2 + Phi'' = 0
// in the form Phi(xi) = A + B cn^2(D xi; m), together with their root
// parameterization E1 < E2 < E3 and the soliton / linear limiting profiles.

namespace cnoidal {

struct KdvCoefficients {
    double V2; // V''(0) > 0
    double V3; // V'''(0) > 0
};

struct CnoidalWave {
    double m;  // squared elliptic modulus k^2 in (0, 1)
    double L;  // half period
    double K;  // complete elliptic integral at m
    double A;  // offset (equals E2)
    double B;  // amplitude (equals E3 - E2)
    double D;  // argument scale K/L
    double E1, E2, E3;
    double c_kdv;
    KdvCoefficients coeffs;

    // second integration constant, determined by the roots (read-only gauge)
    double b_phi() const;
};

// half period giving wave speed c_kdv(m, L) = 1
double speed_one_half_period(double m);
double c_kdv_of(double m, double L);

CnoidalWave make_cnoidal(double m, double L, KdvCoefficients coeffs);

double eval_profile(const CnoidalWave& w, double xi);
// analytic derivative via cn' = -sn dn
double eval_profile_derivative(const CnoidalWave& w, double xi);

// sup-norm of -c_kdv Phi + 6 (V3/V2) Phi^2 + Phi'' on a uniform grid, with
// Phi'' by discrete Fourier differentiation.  grid_size: power of two >= 64.
double kdv_residual(const CnoidalWave& w, int grid_size);

// (Phi')^2 - 4 (V3/V2) [-(Phi-E1)(Phi-E2)(Phi-E3)] at a point, with the
// derivative evaluated analytically
double second_integral_residual(const CnoidalWave& w, double xi);

// Galilean shift check: phi = Phi - a solves the shifted integrated KdV
//   -(c_kdv - 12 (V3/V2) a) phi + 6 (V3/V2) phi^2 + phi'' + A_phi = 0
// with A_phi = a (6 (V3/V2) a - c_kdv).  Returns the sup-norm residual of
// that equation plus the shift bookkeeping.
struct ShiftedAnsatz {
    double residual;
    double shifted_speed; // c_kdv - 12 (V3/V2) a
    double speed_shift;   // 12 (V3/V2) a
    double a_phi;
};
ShiftedAnsatz shifted_ansatz_check(const CnoidalWave& w, double shift, int grid_size = 256);

// m -> 1 comparison target: xi |-> (V2/V3) (sqrt(beta)/2 sech(sqrt(beta) xi/2))^2
// with beta = 4 (V3/V2) (E3 - E1)
struct SolitonLimit {
    double beta;
    double v2_over_v3;
    double operator()(double xi) const;
    double peak() const;
};
SolitonLimit soliton_limit(const CnoidalWave& w);

// m -> 0 comparison target:
// (E3+E2)/2 + ((E3-E2)/2) cos( sqrt(4 (V3/V2) (E3-E1)) xi )
struct LinearLimit {
    double mean;
    double amplitude;
    double wavenumber;
    double operator()(double xi) const;
};
LinearLimit linear_limit(const CnoidalWave& w);

} // namespace cnoidal
