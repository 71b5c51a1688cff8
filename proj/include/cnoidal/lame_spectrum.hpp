#pragma once

#include "cnoidal/fourier_space.hpp"
#include "cnoidal/kdv_waves.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

// Spectral analysis of the linearization
//   L psi = 12 (V3/V2) (c_kdv - d^2)^{-1} (Phi1 psi)
// at a cnoidal profile, plus the closed-form band edges of the n = 2, 3
// finite-band Hill (Lame) operators -d_y^2 + n(n+1) k^2 sn^2(y; k^2).

namespace cnoidal {

// Dense representation of L in the weighted-coefficient orthonormal basis
// (constant, cos_k, sin_k with the Nyquist mode dropped).  For c_kdv = 1 the
// weight is exactly the H^1 inner product, in which the matrix is symmetric
// (self-adjointness of L); for general c_kdv the weight carries
// (c_kdv + s^2) in place of (1 + s^2).
struct LinearizedOperator {
    CnoidalWave wave;
    PeriodicGrid grid;
    Eigen::MatrixXd matrix;          // (n-1) x (n-1)
    std::vector<int> even_indices;   // columns spanning the even subspace
    std::vector<int> odd_indices;
    double symmetry_defect;          // ||M - M^T||_inf before symmetrization
};

LinearizedOperator build_linearization(const CnoidalWave& wave, const PeriodicGrid& grid);

struct Eigenpair {
    double lambda;
    PeriodicProfile psi;
    std::string parity;   // "even" / "odd"
    double parity_purity; // fraction of the norm in the dominant parity
};

// `count` largest-|lambda| eigenpairs
std::vector<Eigenpair> eigenpairs(const LinearizedOperator& op, int count);

// min |1 - lambda| over the even-subspace spectrum (I - L invertibility margin)
double even_subspace_gap(const LinearizedOperator& op);

// sup-norm residual of the second-order form of the eigenproblem,
//   -c_kdv psi + (12/lambda) (V3/V2) Phi1 psi + psi'' = 0,
// evaluated spectrally.  Equivalent to the multiplier eigenproblem for
// lambda != 0.
double second_order_form_residual(double lambda, const PeriodicProfile& psi,
                                  const CnoidalWave& wave);

struct BandStructure {
    int n_lame;
    double m;
    std::vector<double> periodic_eigs;     // E_i^+ ascending
    std::vector<double> semiperiodic_eigs; // E_i^- ascending
    std::vector<std::string> edge_names;   // interlacing chain order
    std::vector<double> edges;             // values in chain order
    std::vector<std::pair<double, double>> bands;
};

// Closed forms for the 2n+1 band edges, n_lame in {2, 3}
BandStructure lame_band_edges_closed_form(int n_lame, double m);

enum class HillBoundary { periodic, semiperiodic };

struct HillSpectrum {
    std::vector<double> eigenvalues; // ascending
    Eigen::MatrixXd eigenvectors;    // columns, on the [0, 2K) grid
    std::vector<std::string> parities;
    std::vector<std::pair<int, int>> near_degenerate_pairs;
    bool accuracy_warning;
    double grid_spacing;
};

// Fourier discretization of -d_y^2 + n(n+1) m sn^2(y; m) on [0, 2K) with
// Floquet multiplier +1 (periodic) or -1 (semiperiodic; realized as the
// doubled-cell problem restricted to 2K-antiperiodic modes).
HillSpectrum hill_spectrum_numeric(int n_lame, double m, int grid, HillBoundary boundary);

// Eigenvalue chain for lambda in {1, 2}:
//   h_cn = (1/lambda)(4 - 8 k^2) + 4 (1/lambda - 1) sqrt(1 - k^2 + k^4),
//   h_sn = h_cn + 12 k^2 / lambda.
// Returns (h_cn, h_sn); h_sn reproduces the n = 3 edge E1+ (lambda = 1) and
// the n = 2 edge E0+ (lambda = 2).
std::pair<double, double> eigenvalue_transform_chain(double lambda, double m);

// Alternative closed form parameterized by the Lame index,
//   h = (1/3) ( n(n+1)(1+k^2) + 4 (n(n+1) - 3) sqrt(1 - k^2 + k^4) ).
// Disagrees with the transform chain and with the tabulated band edges at
// n = 2, 3; kept only so the discrepancy can be logged next to the
// authoritative values.
double lame_hsn_index_form(int n_lame, double m);

struct BandSweepRow {
    double m;
    std::string edge;
    double value;
};
std::vector<BandSweepRow> band_structure_sweep(int n_lame, const std::vector<double>& m_list);

} // namespace cnoidal
