#pragma once

#include <complex>
#include <vector>

// Periodic function representation on [0, 2L), discrete Fourier
// analysis/synthesis, the weighted-coefficient H^1 norm
//   ||phi||^2 = 2L sum_m (1 + (m pi / L)^2) |phi_hat(m)|^2,
// and the lattice/continuum Fourier multipliers.
//
// Coefficient convention: phi_hat(m) = (1/2L) int_0^{2L} phi e^{-i m pi x/L},
// stored in FFT index order (index k holds m = k for k < n/2 and m = k - n
// otherwise).

namespace cnoidal {

using cdouble = std::complex<double>;

struct PeriodicGrid {
    double L;  // half period
    int n;     // number of nodes, power of two, >= 64

    PeriodicGrid(double half_period, int size);
    double dx() const { return 2.0 * L / n; }
    double node(int j) const { return dx() * j; }
    std::vector<double> nodes() const;
    // signed wavenumber m*pi/L for FFT index k
    double wavenumber(int k) const;
};

std::vector<cdouble> analyze(const std::vector<double>& values);
std::vector<double> synthesize(const std::vector<cdouble>& coeffs);

class PeriodicProfile {
  public:
    PeriodicProfile(PeriodicGrid grid, std::vector<double> values);
    static PeriodicProfile from_coeffs(PeriodicGrid grid, std::vector<cdouble> coeffs);

    const PeriodicGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<cdouble>& coeffs() const { return coeffs_; }

    double h1_norm() const;
    // fraction of the H^1 norm carried by odd (sine) content; 0 for even profiles
    double odd_fraction() const;
    PeriodicProfile derivative(int order = 1) const;
    // trigonometric interpolation at an arbitrary point
    double eval(double x) const;

  private:
    PeriodicProfile(PeriodicGrid grid, std::vector<double> values, std::vector<cdouble> coeffs)
        : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}
    PeriodicGrid grid_;
    std::vector<double> values_;
    std::vector<cdouble> coeffs_;
};

double h1_distance(const PeriodicProfile& a, const PeriodicProfile& b);

// Wave-speed bookkeeping.  The quadratic form c^2 = V2 (1 + eps^2 c_kdv / 12)
// is the default everywhere; the linear-in-eps form
// c = sqrt(V2) (1 + eps^2 c_kdv / 24) differs from it at O(eps^4) and is kept
// available for comparison.
enum class SpeedForm { quadratic12, linear24 };
double speed_squared(double eps, double V2, double c_kdv, SpeedForm form = SpeedForm::quadratic12);

struct MultiplierSymbol {
    enum class Kind { eps, zero };
    Kind kind;
    double eps;    // only meaningful for kind == eps (must be > 0 there)
    double c2;     // squared wave speed; requires c2 > V2 for kind == eps
    double V2;
    double c_kdv;

    // lattice symbol p^(eps) with c^2 fixed by the chosen speed form
    static MultiplierSymbol lattice(double eps, double V2, double c_kdv,
                                    SpeedForm form = SpeedForm::quadratic12);
    // continuum symbol p^(0)(s) = (12/V2) / (c_kdv + s^2)
    static MultiplierSymbol continuum(double V2, double c_kdv);

    double operator()(double s) const;
};

double sinc(double x); // sin(x)/x with a series branch near 0
double symbol_p_eps(double s, const MultiplierSymbol& sym);
double symbol_p0(double s, const MultiplierSymbol& sym);

PeriodicProfile apply_multiplier(const MultiplierSymbol& sym, const PeriodicProfile& f);

// max over the grid's discrete wavenumbers s = m pi / L of
// |p~^(eps)(s) - p~^(0)(s)|; on the discretized H^1 this equals the operator
// norm distance between the two multipliers.  Hypothesis: c_kdv(k0, L0) = 1
// and c^2 = V2 (1 + eps^2/12).
double multiplier_gap(double eps, const PeriodicGrid& grid, double V2, double c_kdv = 1.0);

// --- even (cosine) coefficient utilities -----------------------------------
//
// Even real profiles are handled as vectors a_k = phi_hat(k), k = 0..n/2,
// all real.  These are the solver's unknowns.

// full-spectrum padding (Nyquist split) and truncation (aliasing fold),
// for dealiased pointwise products of general profiles
std::vector<double> pad_synthesize(const std::vector<cdouble>& coeffs, int factor = 2);
std::vector<cdouble> truncate_analyze(const std::vector<double>& padded, int n);

std::vector<double> even_coeffs(const PeriodicProfile& f);
PeriodicProfile profile_from_even(const PeriodicGrid& grid, const std::vector<double>& a);
double h1_norm_even(double L, const std::vector<double>& a);
// synthesize on a grid padded by `factor` (zero-fill; Nyquist split in half)
std::vector<double> pad_synthesize_even(const std::vector<double>& a, int n, int factor = 2);
// analyze padded values and truncate back to n modes (aliasing fold at Nyquist)
std::vector<double> truncate_analyze_even(const std::vector<double>& padded, int n);
double eval_even(const std::vector<double>& a, double L, double x);

} // namespace cnoidal
