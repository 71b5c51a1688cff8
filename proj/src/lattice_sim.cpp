#include "cnoidal/lattice_sim.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cnoidal {

namespace {

// forward DFT / n for an arbitrary cell size
std::vector<cdouble> cell_coeffs(const std::vector<double>& v) {
    return detail::coeffs_of(v);
}

double cell_h1_norm(const std::vector<cdouble>& c, int n) {
    const double Lc = 0.5 * n;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const int mk = k < (n + 1) / 2 ? k : k - n;
        const double s = mk * M_PI / Lc;
        acc += (1.0 + s * s) * std::norm(c[k]);
    }
    return std::sqrt(2.0 * Lc * acc);
}

} // namespace

SeededWave seed_from_wave(const WaveSolution& sol, int q_periods, int max_sites) {
    if (q_periods < 1)
        throw std::invalid_argument("seed_from_wave: q_periods must be >= 1");
    if (!(sol.eps > 0.0)) {
        // zero wave: empty-cell convention (a single period of nothing)
        SeededWave sw{LatticeState{64, std::vector<double>(64, 0.0), std::vector<double>(64, 0.0), 0.0},
                      sol, q_periods, 0.0};
        return sw;
    }
    const double cell = q_periods * 2.0 * sol.L / sol.eps;
    const int n_sites = static_cast<int>(std::lround(cell));
    if (n_sites > max_sites) {
        std::ostringstream msg;
        msg << "seed_from_wave: " << n_sites << " sites exceed the configured maximum "
            << max_sites;
        throw std::length_error(msg.str());
    }
    // commensuration adjusts eps, never truncates the profile
    const double eps_adj = q_periods * 2.0 * sol.L / n_sites;
    SolverOptions opt;
    opt.grid_n = sol.phi.grid().n;
    opt.tol = sol.tol > 0 ? sol.tol : 1e-12;
    WaveSolution adjusted =
        newton_solve_seeded(eps_adj, sol.m, sol.L, sol.potential, even_coeffs(sol.phi), opt);

    LatticeState st;
    st.n_sites = n_sites;
    st.r.resize(n_sites);
    st.t = 0.0;
    const auto a = even_coeffs(adjusted.phi);
    for (int j = 0; j < n_sites; ++j)
        st.r[j] = eps_adj * eps_adj * eval_even(a, adjusted.L, eps_adj * j);

    // momenta from the travelling ansatz: (S+ - 1) p = dr/dt = -c r_c'
    std::vector<double> g(n_sites);
    const int half = static_cast<int>(a.size()) - 1;
    for (int j = 0; j < n_sites; ++j) {
        double dphi = 0.0;
        const double x = eps_adj * j;
        for (int k = 1; k < half; ++k) {
            const double s = k * M_PI / adjusted.L;
            dphi += -2.0 * a[k] * s * std::sin(s * x);
        }
        // Nyquist mode carries no odd derivative content
        g[j] = -adjusted.c * eps_adj * eps_adj * eps_adj * dphi;
    }
    auto G = cell_coeffs(g);
    std::vector<cdouble> P(n_sites, 0.0);
    for (int k = 1; k < n_sites; ++k) {
        const cdouble shift = std::polar(1.0, 2.0 * M_PI * k / n_sites);
        P[k] = G[k] / (shift - 1.0);
    }
    // P[0] = 0 is the zero-mean momentum gauge
    st.p = detail::values_of(P);

    return SeededWave{std::move(st), std::move(adjusted), q_periods, 0.0};
}

void step_verlet(LatticeState& state, double dt, const Potential& pot) {
    const int n = state.n_sites;
    auto force_p = [&](std::vector<double>& out) {
        // (1 - S-) V'(r)
        static thread_local std::vector<double> vp;
        vp.resize(n);
        for (int j = 0; j < n; ++j) {
            const double f = pot.vprime(state.r[j]);
            if (!std::isfinite(f)) {
                std::ostringstream msg;
                msg << "step_verlet: non-finite force at site " << j << " (r = " << state.r[j]
                    << ")";
                throw std::domain_error(msg.str());
            }
            vp[j] = f;
        }
        for (int j = 0; j < n; ++j)
            out[j] = vp[j] - vp[(j - 1 + n) % n];
    };
    static thread_local std::vector<double> kick;
    kick.resize(n);
    force_p(kick);
    for (int j = 0; j < n; ++j)
        state.p[j] += 0.5 * dt * kick[j];
    for (int j = 0; j < n; ++j)
        state.r[j] += dt * (state.p[(j + 1) % n] - state.p[j]);
    force_p(kick);
    for (int j = 0; j < n; ++j)
        state.p[j] += 0.5 * dt * kick[j];
    state.t += dt;
}

double total_energy(const LatticeState& state, const Potential& pot) {
    if (!pot.V)
        throw std::invalid_argument("total_energy: potential has no energy function");
    double H = 0.0;
    for (int j = 0; j < state.n_sites; ++j)
        H += 0.5 * state.p[j] * state.p[j] + pot.V(state.r[j]);
    return H;
}

double bond_sum(const LatticeState& state) {
    double s = 0.0;
    for (double v : state.r)
        s += v;
    return s;
}

SimulationReport propagate_and_compare(const SeededWave& seeded, double T, double dt,
                                       int n_samples) {
    if (!(dt > 0.0) || !(T >= 0.0))
        throw std::invalid_argument("propagate_and_compare: need dt > 0 and T >= 0");
    LatticeState state = seeded.state;
    const Potential& pot = seeded.sol.potential;
    const int n = state.n_sites;
    const double c = seeded.sol.c;

    SimulationReport rep;
    rep.speed_target = c;
    rep.momentum_gauge = seeded.momentum_gauge;

    const auto ref0 = cell_coeffs(state.r);
    const double ref_norm = cell_h1_norm(ref0, n);
    double r0_max = 1e-300;
    for (double v : state.r)
        r0_max = std::max(r0_max, std::abs(v));
    const double H0 = total_energy(state, pot);

    const long total_steps = std::lround(T / dt);
    const long stride = std::max<long>(1, total_steps / std::max(1, n_samples));

    std::vector<double> shifts, shift_times;
    double prev_shift = 0.0, prev_time = 0.0;

    auto correlation = [&](const std::vector<cdouble>& cur, double tau) {
        // X(tau) = sum_j cur(j) ref0(j - tau) = n sum_m cur_m conj(ref0_m) e^{2 pi i m tau/n}
        double val = 0.0;
        for (int k = 0; k < n; ++k) {
            const int mk = k < (n + 1) / 2 ? k : k - n;
            val += (cur[k] * std::conj(ref0[k]) * std::polar(1.0, 2.0 * M_PI * mk * tau / n))
                       .real();
        }
        return val;
    };

    auto sample = [&](double t) {
        // reference translate by Fourier phase shift
        std::vector<cdouble> refc(n), diffc(n);
        const auto cur = cell_coeffs(state.r);
        for (int k = 0; k < n; ++k) {
            const int mk = k < (n + 1) / 2 ? k : k - n;
            const cdouble ph = std::polar(1.0, -2.0 * M_PI * mk * c * t / n);
            refc[k] = ref0[k] * ph;
            diffc[k] = cur[k] - refc[k];
        }
        rep.times.push_back(t);
        rep.shape_error_h1.push_back(cell_h1_norm(diffc, n) / ref_norm);
        rep.energy_drift.push_back(std::abs(total_energy(state, pot) - H0) / std::abs(H0));

        // cross-correlation peak tracked incrementally: coarse search within
        // half a site of the unwrapped prediction, then a parabolic refine
        const double predicted = prev_shift + c * (t - prev_time);
        const int coarse = 32;
        const double win = 0.5;
        double best_tau = predicted, best_val = -1e300;
        for (int i = -coarse; i <= coarse; ++i) {
            const double tau = predicted + i * win / coarse;
            const double val = correlation(cur, tau);
            if (val > best_val) {
                best_val = val;
                best_tau = tau;
            }
        }
        const double h = win / coarse;
        const double vm = correlation(cur, best_tau - h);
        const double vp = correlation(cur, best_tau + h);
        const double denom = vm - 2.0 * best_val + vp;
        if (denom < 0.0)
            best_tau += 0.5 * h * (vm - vp) / denom;
        prev_shift = best_tau;
        prev_time = t;
        shifts.push_back(best_tau);
        shift_times.push_back(t);
    };

    sample(0.0);
    for (long step = 1; step <= total_steps; ++step) {
        bool aborted = false;
        try {
            step_verlet(state, dt, pot);
        } catch (const std::domain_error&) {
            aborted = true; // non-finite force: report as instability
        }
        double rmax = 0.0;
        for (double v : state.r)
            rmax = std::max(rmax, std::abs(v));
        if (aborted || !(rmax <= 1e3 * r0_max) || !std::isfinite(rmax)) {
            rep.blew_up = true;
            if (!aborted)
                sample(state.t);
            break;
        }
        if (step % stride == 0 || step == total_steps)
            sample(state.t);
    }

    // least-squares speed fit through the origin-free line shift = a + v t
    if (shifts.size() >= 2) {
        double st = 0, ss = 0, stt = 0, sts = 0;
        const double nn = static_cast<double>(shifts.size());
        for (size_t i = 0; i < shifts.size(); ++i) {
            st += shift_times[i];
            ss += shifts[i];
            stt += shift_times[i] * shift_times[i];
            sts += shift_times[i] * shifts[i];
        }
        rep.measured_speed = (nn * sts - st * ss) / (nn * stt - st * st);
    }
    for (double e : rep.energy_drift)
        rep.max_energy_drift = std::max(rep.max_energy_drift, e);
    for (double e : rep.shape_error_h1)
        rep.max_shape_error = std::max(rep.max_shape_error, e);
    return rep;
}

} // namespace cnoidal
