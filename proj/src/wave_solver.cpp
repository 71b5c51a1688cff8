#include "cnoidal/wave_solver.hpp"

#include "fft.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace cnoidal {

namespace {

// symbol values on the cosine half-spectrum k = 0..n/2
std::vector<double> half_symbol(const MultiplierSymbol& sym, double L, int n) {
    std::vector<double> p(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k)
        p[k] = sym(k * M_PI / L);
    return p;
}

MultiplierSymbol solver_symbol(double eps, double V2, double c_kdv) {
    return eps > 0.0 ? MultiplierSymbol::lattice(eps, V2, c_kdv)
                     : MultiplierSymbol::continuum(V2, c_kdv);
}

void check_eta_domain(const std::vector<double>& r_samples, const Potential& pot) {
    for (size_t j = 0; j < r_samples.size(); ++j) {
        if (!(r_samples[j] > pot.r_min && r_samples[j] < pot.r_max)) {
            std::ostringstream msg;
            msg << pot.kind << ": nonlinearity evaluated outside the potential's domain ("
                << pot.r_min << ", " << pot.r_max << ") at sample " << j
                << ", r = " << r_samples[j];
            throw std::domain_error(msg.str());
        }
    }
}

// N^(eps) on padded values (grid values in, grid values out, both padded)
std::vector<double> n_eps_padded(const std::vector<double>& v, double eps, const Potential& pot) {
    std::vector<double> r(v.size());
    const double e2 = eps * eps;
    for (size_t j = 0; j < v.size(); ++j)
        r[j] = e2 * v[j];
    check_eta_domain(r, pot);
    std::vector<double> out(v.size());
    for (size_t j = 0; j < v.size(); ++j)
        out[j] = 0.5 * pot.V3 * v[j] * v[j] * (1.0 + pot.eta(r[j]));
    return out;
}

// d N^(eps) / d Phi pointwise, on padded values
std::vector<double> n_eps_weight_padded(const std::vector<double>& v, double eps,
                                        const Potential& pot) {
    std::vector<double> r(v.size());
    const double e2 = eps * eps;
    for (size_t j = 0; j < v.size(); ++j)
        r[j] = e2 * v[j];
    check_eta_domain(r, pot);
    std::vector<double> w(v.size());
    for (size_t j = 0; j < v.size(); ++j)
        w[j] = pot.V3 * v[j] * (1.0 + pot.eta(r[j])) +
               0.5 * pot.V3 * v[j] * v[j] * pot.eta_prime(r[j]) * e2;
    return w;
}

std::vector<double> seed_coeffs_from_cnoidal(const CnoidalWave& w, const PeriodicGrid& grid) {
    std::vector<double> vals(grid.n);
    for (int j = 0; j < grid.n; ++j)
        vals[j] = eval_profile(w, grid.node(j));
    return even_coeffs(PeriodicProfile(grid, vals));
}

} // namespace

int default_grid_n(double m) {
    if (m <= 0.9)
        return 256;
    if (m < 0.99)
        return 512;
    return 1024;
}

double WaveSolution::r_c(double x) const {
    return eps * eps * phi.eval(eps * x);
}

PeriodicProfile nonlinearity_N_eps(const PeriodicProfile& phi, double eps, const Potential& pot) {
    const int n = phi.grid().n;
    const auto padded = pad_synthesize(phi.coeffs());
    const auto w = n_eps_padded(padded, eps, pot);
    return PeriodicProfile::from_coeffs(phi.grid(), truncate_analyze(w, n));
}

WaveSolution newton_solve_seeded(double eps, double m0, double L0, const Potential& pot,
                                 const std::vector<double>& seed_even, SolverOptions opt) {
    if (!(eps >= 0.0))
        throw std::domain_error("newton_solve: eps must be nonnegative");
    if (eps > opt.eps0)
        throw OutOfRegime("newton_solve: eps exceeds the configured regime boundary eps0", eps,
                          opt.eps0);
    if (opt.tol < 1e-12)
        throw std::invalid_argument("newton_solve: tolerance must be >= 1e-12");
    const double ck = c_kdv_of(m0, L0);
    if (std::abs(ck - 1.0) > 1e-12)
        throw std::invalid_argument("newton_solve: (m0, L0) must satisfy c_kdv(m0, L0) = 1");

    const int n = opt.grid_n > 0 ? opt.grid_n : default_grid_n(m0);
    const PeriodicGrid grid(L0, n);
    const CnoidalWave seed_wave = make_cnoidal(m0, L0, {pot.V2, pot.V3});
    const auto a_cnoidal = seed_coeffs_from_cnoidal(seed_wave, grid);
    if (static_cast<int>(seed_even.size()) != n / 2 + 1)
        throw std::invalid_argument("newton_solve: seed coefficient count does not match grid");

    const auto sym = solver_symbol(eps, pot.V2, 1.0);
    const auto psym = half_symbol(sym, L0, n);
    const int dof = n / 2 + 1;

    std::vector<double> a(seed_even);
    std::vector<double> residual_history;
    auto residual_of = [&](const std::vector<double>& ac, std::vector<double>& G) {
        const auto w = n_eps_padded(pad_synthesize_even(ac, n), eps, pot);
        auto Na = truncate_analyze_even(w, n);
        G.resize(dof);
        for (int k = 0; k < dof; ++k)
            G[k] = ac[k] - psym[k] * Na[k];
        return h1_norm_even(L0, G);
    };

    // padded cosine basis values, fixed for the whole solve
    const int N = 2 * n;
    Eigen::MatrixXd basis(N, dof);
    for (int k = 0; k < dof; ++k) {
        const double mu = (k == 0 || k == n / 2) ? 1.0 : 2.0;
        for (int j = 0; j < N; ++j)
            basis(j, k) = mu * std::cos(k * M_PI * (2.0 * L0 * j / N) / L0);
    }

    std::vector<double> G;
    double res = residual_of(a, G);
    residual_history.push_back(res);
    int iters = 0;
    while (res >= opt.tol) {
        if (iters >= opt.max_iters) {
            std::ostringstream msg;
            msg << "newton_solve: no convergence after " << iters
                << " iterations (residual " << res << ", tol " << opt.tol << ")";
            throw NewtonDivergence(msg.str(), residual_history);
        }
        const auto wgt = n_eps_weight_padded(pad_synthesize_even(a, n), eps, pot);
        Eigen::MatrixXd J = Eigen::MatrixXd::Identity(dof, dof);
        std::vector<double> prod(N);
        for (int col = 0; col < dof; ++col) {
            for (int j = 0; j < N; ++j)
                prod[j] = wgt[j] * basis(j, col);
            const auto column = truncate_analyze_even(prod, n);
            for (int row = 0; row < dof; ++row)
                J(row, col) -= psym[row] * column[row];
        }
        Eigen::VectorXd rhs(dof);
        for (int k = 0; k < dof; ++k)
            rhs(k) = -G[k];
        const Eigen::VectorXd delta = J.partialPivLu().solve(rhs);
        for (int k = 0; k < dof; ++k)
            a[k] += delta(k);
        ++iters;
        res = residual_of(a, G);
        residual_history.push_back(res);
    }

    std::vector<double> diff(dof);
    for (int k = 0; k < dof; ++k)
        diff[k] = a[k] - a_cnoidal[k];
    const double dist = h1_norm_even(L0, diff);
    if (dist > opt.delta_ball)
        throw OutOfRegime("newton_solve: converged iterate left the uniqueness ball", eps, dist);

    WaveSolution sol{eps,
                     std::sqrt(speed_squared(eps, pot.V2, 1.0)),
                     speed_squared(eps, pot.V2, 1.0),
                     m0,
                     L0,
                     profile_from_even(grid, a),
                     seed_wave,
                     pot,
                     iters,
                     res,
                     dist,
                     residual_history,
                     opt.tol};
    return sol;
}

WaveSolution newton_solve(double eps, double m0, const Potential& pot, SolverOptions opt) {
    const double L0 = speed_one_half_period(m0);
    const int n = opt.grid_n > 0 ? opt.grid_n : default_grid_n(m0);
    opt.grid_n = n;
    const PeriodicGrid grid(L0, n);
    const auto seed = seed_coeffs_from_cnoidal(make_cnoidal(m0, L0, {pot.V2, pot.V3}), grid);
    return newton_solve_seeded(eps, m0, L0, pot, seed, opt);
}

double advance_delay_residual(const std::vector<double>& phi_even, double L, double eps,
                              double c2, const Potential& pot, int fine_factor) {
    if (!(eps > 0.0))
        return 0.0; // eps = 0 carries no lattice wave
    const int n = 2 * (static_cast<int>(phi_even.size()) - 1);
    const int Nf = fine_factor * n;
    const double Lx = L / eps; // half period of r_c in lattice units

    // coefficients of r_c on the fine grid
    std::vector<cdouble> rhat(Nf, 0.0);
    const double e2 = eps * eps;
    rhat[0] = e2 * phi_even[0];
    for (int k = 1; k < n / 2; ++k) {
        rhat[k] = e2 * phi_even[k];
        rhat[Nf - k] = e2 * phi_even[k];
    }
    rhat[n / 2] = 0.5 * e2 * phi_even[n / 2];
    rhat[Nf - n / 2] = 0.5 * e2 * phi_even[n / 2];

    auto signed_mode = [Nf](int k) { return k < Nf / 2 ? k : k - Nf; };
    std::vector<cdouble> lin_hat(Nf), plus_hat(Nf), minus_hat(Nf);
    for (int k = 0; k < Nf; ++k) {
        const double sx = signed_mode(k) * M_PI / Lx;
        const double half = std::sin(0.5 * sx);
        // linear part c^2 r'' - V2 (S+ - 2 + S-) r grouped in coefficient
        // space: no cancellation between the two near-equal sides
        lin_hat[k] = (-c2 * sx * sx + 4.0 * pot.V2 * half * half) * rhat[k];
        const cdouble shift = std::polar(1.0, sx);
        plus_hat[k] = rhat[k] * shift;
        minus_hat[k] = rhat[k] * std::conj(shift);
    }
    const auto lin = detail::values_of(lin_hat);
    const auto r = detail::values_of(rhat);
    const auto rp = detail::values_of(plus_hat);
    const auto rm = detail::values_of(minus_hat);
    check_eta_domain(r, pot);
    check_eta_domain(rp, pot);
    check_eta_domain(rm, pot);
    auto Nl = [&](double rv) { return pot.vprime(rv) - pot.V2 * rv; };
    double sup = 0.0;
    for (int j = 0; j < Nf; ++j) {
        const double nl = Nl(rp[j]) - 2.0 * Nl(r[j]) + Nl(rm[j]);
        sup = std::max(sup, std::abs(lin[j] - nl));
    }
    return sup;
}

double lattice_residual(const WaveSolution& sol, int fine_factor) {
    return advance_delay_residual(even_coeffs(sol.phi), sol.L, sol.eps, sol.c2, sol.potential,
                                  fine_factor);
}

WaveSolution continue_in_speed(const WaveSolution& sol, double m_new, double L_new,
                               SolverOptions opt) {
    struct Stepper {
        SolverOptions opt;
        int depth = 0;
        WaveSolution step(const WaveSolution& from, double m_t, double L_t) {
            const double c_rel = c_kdv_of(m_t, L_t);
            const double eps1 = from.eps * std::sqrt(c_rel);
            const double L_til = L_t * std::sqrt(c_rel);
            SolverOptions o = opt;
            const int n = o.grid_n > 0 ? o.grid_n : default_grid_n(m_t);
            o.grid_n = n;
            // predictor: Phi |-> c_rel^-1 Phi(c_rel^-1/2 .) sampled on the new grid
            const auto a_old = even_coeffs(from.phi);
            std::vector<double> pred_vals(n);
            for (int j = 0; j < n; ++j)
                pred_vals[j] = eval_even(a_old, from.L, 2.0 * L_t * j / n) / c_rel;
            const auto a_pred = even_coeffs(PeriodicProfile(PeriodicGrid(L_til, n), pred_vals));
            return newton_solve_seeded(eps1, m_t, L_til, from.potential, a_pred, o);
        }
        WaveSolution go(const WaveSolution& from, double m_from, double L_from, double m_t,
                        double L_t) {
            try {
                return step(from, m_t, L_t);
            } catch (const NewtonDivergence&) {
                if (++depth > 12)
                    throw ContinuationFailure(
                        "continue_in_speed: minimum continuation step reached");
                const double m_mid = 0.5 * (m_from + m_t);
                const double L_mid = 0.5 * (L_from + L_t);
                const double c_mid = c_kdv_of(m_mid, L_mid);
                WaveSolution half = go(from, m_from, L_from, m_mid, L_mid);
                // remaining target re-expressed in the renormalized frame
                return go(half, half.m, half.L, m_t, L_t * std::sqrt(c_mid));
            }
        }
    };
    Stepper st{opt};
    return st.go(sol, sol.m, sol.L, m_new, L_new);
}

namespace {

// H^1-orthonormal even basis (constant + cosines, Nyquist dropped):
// q_0 = 1/sqrt(2L), q_k = cos(k pi x / L)/sqrt(L (1 + s_k^2)).
// ONB coordinates of an even profile with cosine coefficients a.
Eigen::VectorXd onb_coords(const std::vector<double>& a, double L) {
    const int half = static_cast<int>(a.size()) - 1;
    Eigen::VectorXd y(half);
    y(0) = std::sqrt(2.0 * L) * a[0];
    for (int k = 1; k < half; ++k) {
        const double s = k * M_PI / L;
        y(k) = 2.0 * std::sqrt(L * (1.0 + s * s)) * a[k];
    }
    return y;
}

std::vector<double> coeffs_from_onb(const Eigen::VectorXd& y, double L, int n) {
    std::vector<double> a(n / 2 + 1, 0.0);
    a[0] = y(0) / std::sqrt(2.0 * L);
    for (int k = 1; k < n / 2; ++k) {
        const double s = k * M_PI / L;
        a[k] = y(k) / (2.0 * std::sqrt(L * (1.0 + s * s)));
    }
    return a;
}

// ONB matrix of psi |-> P_sym (mult . psi) on the even subspace
Eigen::MatrixXd even_onb_matrix(const std::vector<double>& mult, const MultiplierSymbol& sym,
                                const PeriodicGrid& grid) {
    const int n = grid.n;
    const int dof = n / 2; // Nyquist dropped
    std::vector<double> psym(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k)
        psym[k] = sym(k * M_PI / grid.L);
    Eigen::MatrixXd M(dof, dof);
    std::vector<double> col_vals(n);
    for (int j = 0; j < dof; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dof);
        e(j) = 1.0;
        const auto aj = coeffs_from_onb(e, grid.L, n);
        const auto qj = profile_from_even(grid, aj);
        for (int i = 0; i < n; ++i)
            col_vals[i] = mult[i] * qj.values()[i];
        auto ac = even_coeffs(PeriodicProfile(grid, col_vals));
        for (int k = 0; k <= n / 2; ++k)
            ac[k] *= psym[k];
        M.col(j) = onb_coords(ac, grid.L).head(dof);
    }
    return M;
}

} // namespace

IftCertificate ift_certificate(const WaveSolution& sol, double delta, int samples) {
    const PeriodicGrid grid = sol.phi.grid();
    const int n = grid.n;
    const double L = grid.L;
    const Potential& pot = sol.potential;

    std::vector<double> phi1(n);
    for (int j = 0; j < n; ++j)
        phi1[j] = eval_profile(sol.seed, grid.node(j));

    const auto p0 = MultiplierSymbol::continuum(pot.V2, 1.0);

    // C0: ||(I - L)^-1|| on the even subspace from the spectrum of L
    std::vector<double> mult(n);
    for (int j = 0; j < n; ++j)
        mult[j] = pot.V3 * phi1[j];
    const Eigen::MatrixXd Lmat = even_onb_matrix(mult, p0, grid);
    const Eigen::MatrixXd Lsym = 0.5 * (Lmat + Lmat.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Lsym);
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        gap = std::min(gap, std::abs(1.0 - es.eigenvalues()(i)));
    const double C0 = 1.0 / gap;

    // deterministic unit directions in the ball: constant, fundamental
    // cosine, seed-shaped, and fixed mixtures
    std::vector<std::vector<double>> dirs;
    auto push_normalized = [&](std::vector<double> a) {
        const double nn = h1_norm_even(L, a);
        for (auto& v : a)
            v /= nn;
        dirs.push_back(std::move(a));
    };
    {
        std::vector<double> a(n / 2 + 1, 0.0);
        a[0] = 1.0;
        push_normalized(a);
    }
    {
        std::vector<double> a(n / 2 + 1, 0.0);
        a[1] = 1.0;
        push_normalized(a);
    }
    push_normalized(even_coeffs(sol.phi));
    for (int s = 3; s < samples; ++s) {
        std::vector<double> a(n / 2 + 1, 0.0);
        for (int k = 0; k <= n / 2; ++k)
            a[k] = std::sin(0.7 * (s + 1) * (k + 1)) / (1.0 + 0.5 * k * k);
        push_normalized(a);
    }

    // C1: DF(Phi1 + h) - DF(Phi1) = P0 (V3 h .), linear in h
    double C1 = 0.0;
    for (const auto& dir : dirs) {
        const auto hv = profile_from_even(grid, dir).values();
        std::vector<double> dm(n);
        for (int j = 0; j < n; ++j)
            dm[j] = pot.V3 * delta * hv[j];
        C1 = std::max(C1, even_onb_matrix(dm, p0, grid).operatorNorm());
    }

    // C2 and F~(Phi1)
    double C2 = 0.0;
    double f_tilde_norm = 0.0;
    if (sol.eps > 0.0) {
        const auto peps = MultiplierSymbol::lattice(sol.eps, pot.V2, 1.0);
        const double e2 = sol.eps * sol.eps;
        auto dftilde_norm = [&](const std::vector<double>& vals) {
            std::vector<double> w_eps(n), w_zero(n);
            for (int j = 0; j < n; ++j) {
                const double r = e2 * vals[j];
                w_eps[j] = pot.V3 * vals[j] * (1.0 + pot.eta(r)) +
                           0.5 * pot.V3 * vals[j] * vals[j] * pot.eta_prime(r) * e2;
                w_zero[j] = pot.V3 * vals[j];
            }
            const Eigen::MatrixXd Meps = even_onb_matrix(w_eps, peps, grid);
            const Eigen::MatrixXd M0 = even_onb_matrix(w_zero, p0, grid);
            return (Meps - M0).operatorNorm();
        };
        C2 = dftilde_norm(phi1);
        for (const auto& dir : dirs) {
            std::vector<double> vals(n);
            const auto hv = profile_from_even(grid, dir).values();
            for (int j = 0; j < n; ++j)
                vals[j] = phi1[j] + delta * hv[j];
            C2 = std::max(C2, dftilde_norm(vals));
        }
        // F~(Phi1) = P^(eps) N^(eps)(Phi1) - P^(0) N^(0)(Phi1)
        const PeriodicProfile seed_prof(grid, phi1);
        const auto n_eps = nonlinearity_N_eps(seed_prof, sol.eps, pot);
        const auto n_zero = nonlinearity_N_eps(seed_prof, 0.0, pot);
        f_tilde_norm =
            h1_distance(apply_multiplier(peps, n_eps), apply_multiplier(p0, n_zero));
    }

    IftCertificate cert;
    cert.C0 = C0;
    cert.C1 = C1;
    cert.C2 = C2;
    cert.delta = delta;
    cert.theta = C0 * (C1 + C2);
    cert.f_tilde_norm = f_tilde_norm;
    cert.holds = true;
    if (!(cert.theta < 1.0)) {
        cert.holds = false;
        cert.violated = "C0 (C1 + C2) < 1";
    } else if (!(f_tilde_norm < delta * (1.0 - cert.theta) / C0)) {
        cert.holds = false;
        cert.violated = "||F~(Phi1)|| < delta (1 - theta) / C0";
    }
    cert.error_bound = cert.theta < 1.0
                           ? C0 * f_tilde_norm / (1.0 - cert.theta)
                           : std::numeric_limits<double>::quiet_NaN();
    return cert;
}

} // namespace cnoidal
