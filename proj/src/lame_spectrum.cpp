#include "cnoidal/lame_spectrum.hpp"

#include "cnoidal/elliptic.hpp"
#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cnoidal {

namespace {

struct OnbBasis {
    // index 0: constant; then cos_k at 2k-1, sin_k at 2k, k = 1..n/2-1
    int n;
    double L;
    double c; // spectral weight 2L (c + s^2); c = c_kdv
    int dof() const { return n - 1; }
    double norm_const() const { return std::sqrt(2.0 * L * c); }
    double norm_trig(int k) const {
        const double s = k * M_PI / L;
        return std::sqrt(L * (c + s * s));
    }
};

// grid values of basis function i
std::vector<double> basis_values(const OnbBasis& b, int i) {
    std::vector<double> v(b.n);
    if (i == 0) {
        std::fill(v.begin(), v.end(), 1.0 / b.norm_const());
        return v;
    }
    const int k = (i + 1) / 2;
    const bool is_cos = (i % 2 == 1);
    const double s = k * M_PI / b.L;
    const double nrm = b.norm_trig(k);
    for (int j = 0; j < b.n; ++j) {
        const double x = 2.0 * b.L * j / b.n;
        v[j] = (is_cos ? std::cos(s * x) : std::sin(s * x)) / nrm;
    }
    return v;
}

// weighted-basis coordinates of a real grid function
Eigen::VectorXd onb_project(const OnbBasis& b, const std::vector<double>& values) {
    const auto c = detail::coeffs_of(values);
    Eigen::VectorXd y(b.dof());
    y(0) = 2.0 * b.L * b.c * c[0].real() / b.norm_const();
    for (int k = 1; k < b.n / 2; ++k) {
        const double s = k * M_PI / b.L;
        const double w = 2.0 * b.L * (b.c + s * s);
        y(2 * k - 1) = w * c[k].real() / b.norm_trig(k);
        y(2 * k) = -w * c[k].imag() / b.norm_trig(k);
    }
    return y;
}

std::vector<double> onb_synthesize(const OnbBasis& b, const Eigen::VectorXd& y) {
    std::vector<cdouble> c(b.n, 0.0);
    c[0] = y(0) / b.norm_const();
    for (int k = 1; k < b.n / 2; ++k) {
        const double inv = 1.0 / b.norm_trig(k);
        const cdouble z(0.5 * y(2 * k - 1) * inv, -0.5 * y(2 * k) * inv);
        c[k] = z;
        c[b.n - k] = std::conj(z);
    }
    return detail::values_of(c);
}

} // namespace

LinearizedOperator build_linearization(const CnoidalWave& wave, const PeriodicGrid& grid) {
    const int n = grid.n;
    const OnbBasis b{n, grid.L, wave.c_kdv};

    std::vector<double> phi1(n);
    for (int j = 0; j < n; ++j)
        phi1[j] = eval_profile(wave, grid.node(j));

    const auto p0 = MultiplierSymbol::continuum(wave.coeffs.V2, wave.c_kdv);
    std::vector<double> psym(n);
    for (int k = 0; k < n; ++k)
        psym[k] = p0(grid.wavenumber(k));

    Eigen::MatrixXd M(b.dof(), b.dof());
    for (int j = 0; j < b.dof(); ++j) {
        auto v = basis_values(b, j);
        for (int i = 0; i < n; ++i)
            v[i] *= wave.coeffs.V3 * phi1[i];
        auto c = detail::coeffs_of(v);
        for (int k = 0; k < n; ++k)
            c[k] *= psym[k];
        M.col(j) = onb_project(b, detail::values_of(c));
    }

    LinearizedOperator op{wave, grid, M, {}, {}, (M - M.transpose()).cwiseAbs().maxCoeff()};
    op.even_indices.push_back(0);
    for (int k = 1; k < n / 2; ++k) {
        op.even_indices.push_back(2 * k - 1);
        op.odd_indices.push_back(2 * k);
    }
    return op;
}

std::vector<Eigenpair> eigenpairs(const LinearizedOperator& op, int count) {
    const int dof = static_cast<int>(op.matrix.rows());
    if (count > dof)
        throw std::invalid_argument("eigenpairs: count exceeds the discretized dimension");
    const Eigen::MatrixXd S = 0.5 * (op.matrix + op.matrix.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenpairs: symmetric eigensolver failed");

    std::vector<int> order(dof);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int bb) {
        return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(bb));
    });

    const OnbBasis b{op.grid.n, op.grid.L, op.wave.c_kdv};
    std::vector<Eigenpair> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const Eigen::VectorXd y = es.eigenvectors().col(order[i]);
        double even2 = 0.0, odd2 = 0.0;
        for (int idx : op.even_indices)
            even2 += y(idx) * y(idx);
        for (int idx : op.odd_indices)
            odd2 += y(idx) * y(idx);
        const double tot = even2 + odd2;
        const bool is_even = even2 >= odd2;
        Eigenpair ep{es.eigenvalues()(order[i]),
                     PeriodicProfile(op.grid, onb_synthesize(b, y)),
                     is_even ? "even" : "odd",
                     tot > 0 ? std::max(even2, odd2) / tot : 1.0};
        out.push_back(std::move(ep));
    }
    return out;
}

double even_subspace_gap(const LinearizedOperator& op) {
    const int ne = static_cast<int>(op.even_indices.size());
    Eigen::MatrixXd Me(ne, ne);
    for (int i = 0; i < ne; ++i)
        for (int j = 0; j < ne; ++j)
            Me(i, j) = op.matrix(op.even_indices[i], op.even_indices[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Me + Me.transpose()));
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ne; ++i)
        gap = std::min(gap, std::abs(1.0 - es.eigenvalues()(i)));
    return gap;
}

double second_order_form_residual(double lambda, const PeriodicProfile& psi,
                                  const CnoidalWave& wave) {
    if (lambda == 0.0)
        throw std::invalid_argument("second_order_form_residual: lambda must be nonzero");
    const int n = psi.grid().n;
    const int N = 2 * n;
    const double L = psi.grid().L;
    const double nu = wave.coeffs.V3 / wave.coeffs.V2;

    // evaluate pointwise on a doubled grid: psi and psi'' synthesized from
    // their exact coefficients, Phi1 sampled exactly
    std::vector<cdouble> c(N, 0.0), cpp(N, 0.0);
    for (int k = 0; k <= n / 2; ++k) {
        const double s = k * M_PI / L;
        const cdouble ck = psi.coeffs()[k] * (k == n / 2 ? 0.5 : 1.0);
        c[k] = ck;
        cpp[k] = -s * s * ck;
        if (k > 0) {
            const cdouble cmk = psi.coeffs()[(n - k) % n] * (k == n / 2 ? 0.5 : 1.0);
            c[N - k] = cmk;
            cpp[N - k] = -s * s * cmk;
        }
    }
    const auto v = detail::values_of(c);
    const auto vpp = detail::values_of(cpp);
    double sup = 0.0;
    for (int j = 0; j < N; ++j) {
        const double x = 2.0 * L * j / N;
        const double p1 = eval_profile(wave, x);
        const double r = -wave.c_kdv * v[j] + (12.0 / lambda) * nu * p1 * v[j] + vpp[j];
        sup = std::max(sup, std::abs(r));
    }
    return sup;
}

BandStructure lame_band_edges_closed_form(int n_lame, double m) {
    if (!(m > 0.0 && m < 1.0))
        throw std::domain_error("lame_band_edges_closed_form: need 0 < m < 1");
    BandStructure bs;
    bs.n_lame = n_lame;
    bs.m = m;
    const double inf = std::numeric_limits<double>::infinity();
    if (n_lame == 3) {
        const double s1 = std::sqrt(1.0 - m + 4.0 * m * m);
        const double s2 = std::sqrt(4.0 - m + m * m);
        const double s3 = std::sqrt(4.0 - 7.0 * m + 4.0 * m * m);
        const double E0p = 2.0 + 5.0 * m - 2.0 * s1;
        const double E0m = 5.0 + 2.0 * m - 2.0 * s2;
        const double E1m = 5.0 + 5.0 * m - 2.0 * s3;
        const double E1p = 4.0 + 4.0 * m;
        const double E2p = 2.0 + 5.0 * m + 2.0 * s1;
        const double E2m = 5.0 + 2.0 * m + 2.0 * s2;
        const double E3m = 5.0 + 5.0 * m + 2.0 * s3;
        bs.periodic_eigs = {E0p, E1p, E2p};
        bs.semiperiodic_eigs = {E0m, E1m, E2m, E3m};
        bs.edge_names = {"E0+", "E0-", "E1-", "E1+", "E2+", "E2-", "E3-"};
        bs.edges = {E0p, E0m, E1m, E1p, E2p, E2m, E3m};
        bs.bands = {{E0p, E0m}, {E1m, E1p}, {E2p, E2m}, {E3m, inf}};
    } else if (n_lame == 2) {
        const double s = std::sqrt(1.0 - m + m * m);
        const double E0p = 2.0 + 2.0 * m - 2.0 * s;
        const double E0m = 1.0 + m;
        const double E1m = 1.0 + 4.0 * m;
        const double E1p = 4.0 + m;
        const double E2p = 2.0 + 2.0 * m + 2.0 * s;
        bs.periodic_eigs = {E0p, E1p, E2p};
        bs.semiperiodic_eigs = {E0m, E1m};
        bs.edge_names = {"E0+", "E0-", "E1-", "E1+", "E2+"};
        bs.edges = {E0p, E0m, E1m, E1p, E2p};
        bs.bands = {{E0p, E0m}, {E1m, E1p}, {E2p, inf}};
    } else {
        throw std::invalid_argument("lame_band_edges_closed_form: n_lame must be 2 or 3");
    }
    return bs;
}

HillSpectrum hill_spectrum_numeric(int n_lame, double m, int grid, HillBoundary boundary) {
    if (n_lame != 2 && n_lame != 3)
        throw std::invalid_argument("hill_spectrum_numeric: n_lame must be 2 or 3");
    if (!(m > 0.0 && m < 1.0))
        throw std::domain_error("hill_spectrum_numeric: need 0 < m < 1");
    if (grid < 16 || grid % 2 != 0)
        throw std::invalid_argument("hill_spectrum_numeric: grid must be even and >= 16");
    const int N = grid;
    const double K = complete_K(m);
    const double coupling = n_lame * (n_lame + 1) * m;

    std::vector<double> pot(N);
    for (int j = 0; j < N; ++j) {
        const double sn = jacobi_sn_cn_dn(2.0 * K * j / N, m).sn;
        pot[j] = coupling * sn * sn;
    }

    // circulant second-derivative stencil for period P on Np points
    auto d2_row = [](int Np, double P) {
        std::vector<double> row(Np, 0.0);
        for (int k = 0; k < Np; ++k) {
            const int mk = k < Np / 2 ? k : k - Np;
            const double kap = 2.0 * M_PI * mk / P;
            for (int d = 0; d < Np; ++d)
                row[d] += -(kap * kap) * std::cos(2.0 * M_PI * k * d / Np) / Np;
        }
        return row;
    };

    Eigen::MatrixXd H(N, N);
    if (boundary == HillBoundary::periodic) {
        const auto row = d2_row(N, 2.0 * K);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                H(i, j) = -row[(i - j + N) % N] + (i == j ? pot[i] : 0.0);
    } else {
        // doubled cell [0, 4K) restricted to 2K-antiperiodic grid functions
        // v_{j+N} = -v_j:  H_semi = Hd[0:N,0:N] - Hd[0:N,N:2N]
        const int N2 = 2 * N;
        const auto row = d2_row(N2, 4.0 * K);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const double a = -row[(i - j + N2) % N2] + (i == j ? pot[i] : 0.0);
                const double bshift = -row[(i - j - N + N2) % N2];
                H(i, j) = a - bshift;
            }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (H + H.transpose()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hill_spectrum_numeric: eigensolver failed");

    HillSpectrum hs;
    hs.grid_spacing = 2.0 * K / N;
    hs.accuracy_warning = (N < 64);
    hs.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
    hs.eigenvectors = es.eigenvectors();
    hs.parities.resize(N);
    for (int q = 0; q < N; ++q) {
        const auto v = es.eigenvectors().col(q);
        double mis_even = 0.0, mis_odd = 0.0, nrm = v.squaredNorm();
        for (int j = 1; j < N; ++j) {
            const double ve = v(N - j), vj = v(j);
            if (boundary == HillBoundary::periodic) {
                mis_even += (ve - vj) * (ve - vj);
                mis_odd += (ve + vj) * (ve + vj);
            } else {
                mis_even += (ve + vj) * (ve + vj);
                mis_odd += (ve - vj) * (ve - vj);
            }
        }
        mis_odd += v(0) * v(0); // odd eigenfunctions vanish at y = 0
        const double te = mis_even / nrm, to = mis_odd / nrm;
        hs.parities[q] = (te < 1e-8) ? "even" : (to < 1e-8 ? "odd" : "mixed");
    }
    const double scale = std::max(1.0, std::abs(hs.eigenvalues.back()));
    for (int q = 0; q + 1 < N; ++q)
        if (std::abs(hs.eigenvalues[q + 1] - hs.eigenvalues[q]) < 1e-6 * scale)
            hs.near_degenerate_pairs.emplace_back(q, q + 1);
    return hs;
}

std::pair<double, double> eigenvalue_transform_chain(double lambda, double m) {
    if (lambda != 1.0 && lambda != 2.0)
        throw std::invalid_argument("eigenvalue_transform_chain: lambda must be 1 or 2");
    const double S = std::sqrt(1.0 - m + m * m);
    const double h_cn = (4.0 - 8.0 * m) / lambda + 4.0 * (1.0 / lambda - 1.0) * S;
    const double h_sn = h_cn + 12.0 * m / lambda;
    return {h_cn, h_sn};
}

double lame_hsn_index_form(int n_lame, double m) {
    if (n_lame != 2 && n_lame != 3)
        throw std::invalid_argument("lame_hsn_index_form: n_lame must be 2 or 3");
    const double nn = n_lame * (n_lame + 1);
    return (nn * (1.0 + m) + 4.0 * (nn - 3.0) * std::sqrt(1.0 - m + m * m)) / 3.0;
}

std::vector<BandSweepRow> band_structure_sweep(int n_lame, const std::vector<double>& m_list) {
    std::vector<BandSweepRow> rows;
    for (double m : m_list) {
        const auto bs = lame_band_edges_closed_form(n_lame, m);
        for (size_t i = 0; i < bs.edges.size(); ++i)
            rows.push_back({m, bs.edge_names[i], bs.edges[i]});
    }
    return rows;
}

} // namespace cnoidal
