#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cnoidal/cli_io.hpp"
#include "cnoidal/elliptic.hpp"
#include "cnoidal/fourier_space.hpp"
#include "cnoidal/kdv_waves.hpp"
#include "cnoidal/lame_spectrum.hpp"
#include "cnoidal/lattice_sim.hpp"
#include "cnoidal/version.hpp"
#include "cnoidal/wave_solver.hpp"

namespace py = pybind11;
using namespace cnoidal;

PYBIND11_MODULE(_cnoidal, m) {
    m.doc() = "Periodic travelling waves of nonlinear chains: cnoidal profiles, "
              "renormalized fixed-point solver, Lame band structure, chain simulation";
    m.attr("__version__") = kVersion;

    py::register_exception<OutOfRegime>(m, "OutOfRegimeError");
    py::register_exception<NewtonDivergence>(m, "NewtonDivergenceError");

    // elliptic
    py::class_<EllipticValues>(m, "EllipticValues")
        .def_readonly("K", &EllipticValues::K)
        .def_readonly("sn", &EllipticValues::sn)
        .def_readonly("cn", &EllipticValues::cn)
        .def_readonly("dn", &EllipticValues::dn);
    m.def("complete_K", &complete_K, py::arg("m"));
    m.def("jacobi_sn_cn_dn", &jacobi_sn_cn_dn, py::arg("u"), py::arg("m"));
    m.def("invert_elliptic_integral", &invert_elliptic_integral, py::arg("psi"), py::arg("m"));

    // kdv waves
    py::class_<KdvCoefficients>(m, "KdvCoefficients")
        .def(py::init<double, double>(), py::arg("V2"), py::arg("V3"))
        .def_readonly("V2", &KdvCoefficients::V2)
        .def_readonly("V3", &KdvCoefficients::V3);
    py::class_<CnoidalWave>(m, "CnoidalWave")
        .def_readonly("m", &CnoidalWave::m)
        .def_readonly("L", &CnoidalWave::L)
        .def_readonly("K", &CnoidalWave::K)
        .def_readonly("A", &CnoidalWave::A)
        .def_readonly("B", &CnoidalWave::B)
        .def_readonly("D", &CnoidalWave::D)
        .def_readonly("E1", &CnoidalWave::E1)
        .def_readonly("E2", &CnoidalWave::E2)
        .def_readonly("E3", &CnoidalWave::E3)
        .def_readonly("c_kdv", &CnoidalWave::c_kdv)
        .def("b_phi", &CnoidalWave::b_phi);
    m.def("speed_one_half_period", &speed_one_half_period, py::arg("m"));
    m.def("c_kdv_of", &c_kdv_of, py::arg("m"), py::arg("L"));
    m.def("make_cnoidal", &make_cnoidal, py::arg("m"), py::arg("L"), py::arg("coeffs"));
    m.def("eval_profile", &eval_profile, py::arg("wave"), py::arg("xi"));
    m.def("eval_profile_derivative", &eval_profile_derivative, py::arg("wave"), py::arg("xi"));
    m.def("kdv_residual", &kdv_residual, py::arg("wave"), py::arg("grid_size"));
    m.def("second_integral_residual", &second_integral_residual, py::arg("wave"),
          py::arg("xi"));
    py::class_<ShiftedAnsatz>(m, "ShiftedAnsatz")
        .def_readonly("residual", &ShiftedAnsatz::residual)
        .def_readonly("shifted_speed", &ShiftedAnsatz::shifted_speed)
        .def_readonly("speed_shift", &ShiftedAnsatz::speed_shift)
        .def_readonly("a_phi", &ShiftedAnsatz::a_phi);
    m.def("shifted_ansatz_check", &shifted_ansatz_check, py::arg("wave"), py::arg("shift"),
          py::arg("grid_size") = 256);
    py::class_<SolitonLimit>(m, "SolitonLimit")
        .def_readonly("beta", &SolitonLimit::beta)
        .def("peak", &SolitonLimit::peak)
        .def("__call__", &SolitonLimit::operator());
    m.def("soliton_limit", &soliton_limit, py::arg("wave"));
    py::class_<LinearLimit>(m, "LinearLimit")
        .def_readonly("mean", &LinearLimit::mean)
        .def_readonly("amplitude", &LinearLimit::amplitude)
        .def_readonly("wavenumber", &LinearLimit::wavenumber)
        .def("__call__", &LinearLimit::operator());
    m.def("linear_limit", &linear_limit, py::arg("wave"));

    // fourier space
    py::class_<PeriodicGrid>(m, "PeriodicGrid")
        .def(py::init<double, int>(), py::arg("L"), py::arg("n"))
        .def_readonly("L", &PeriodicGrid::L)
        .def_readonly("n", &PeriodicGrid::n)
        .def("nodes", &PeriodicGrid::nodes);
    py::class_<PeriodicProfile>(m, "PeriodicProfile")
        .def(py::init<PeriodicGrid, std::vector<double>>(), py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", &PeriodicProfile::grid)
        .def_property_readonly("values", &PeriodicProfile::values)
        .def("h1_norm", &PeriodicProfile::h1_norm)
        .def("odd_fraction", &PeriodicProfile::odd_fraction)
        .def("derivative", &PeriodicProfile::derivative, py::arg("order") = 1)
        .def("eval", &PeriodicProfile::eval, py::arg("x"));
    m.def("h1_distance", &h1_distance);
    py::enum_<SpeedForm>(m, "SpeedForm")
        .value("quadratic12", SpeedForm::quadratic12)
        .value("linear24", SpeedForm::linear24);
    py::class_<MultiplierSymbol>(m, "MultiplierSymbol")
        .def_static("lattice", &MultiplierSymbol::lattice, py::arg("eps"), py::arg("V2"),
                    py::arg("c_kdv"), py::arg("form") = SpeedForm::quadratic12)
        .def_static("continuum", &MultiplierSymbol::continuum, py::arg("V2"), py::arg("c_kdv"))
        .def_readonly("c2", &MultiplierSymbol::c2)
        .def("__call__", &MultiplierSymbol::operator());
    m.def("speed_squared", &speed_squared, py::arg("eps"), py::arg("V2"), py::arg("c_kdv"),
          py::arg("form") = SpeedForm::quadratic12);
    m.def("apply_multiplier", &apply_multiplier);
    m.def("multiplier_gap", &multiplier_gap, py::arg("eps"), py::arg("grid"), py::arg("V2"),
          py::arg("c_kdv") = 1.0);

    // potentials
    py::class_<Potential>(m, "Potential")
        .def_readonly("V2", &Potential::V2)
        .def_readonly("V3", &Potential::V3)
        .def_readonly("kind", &Potential::kind)
        .def("V", [](const Potential& p, double r) { return p.V(r); })
        .def("vprime", [](const Potential& p, double r) { return p.vprime(r); })
        .def("eta", [](const Potential& p, double r) { return p.eta(r); })
        .def_static("fpu_alpha", &Potential::fpu_alpha, py::arg("a"), py::arg("b"))
        .def_static("lennard_jones", &Potential::lennard_jones, py::arg("A"), py::arg("B"))
        .def_static("toda", &Potential::toda, py::arg("alpha"), py::arg("beta"));

    // solver
    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("grid_n", &SolverOptions::grid_n)
        .def_readwrite("tol", &SolverOptions::tol)
        .def_readwrite("max_iters", &SolverOptions::max_iters)
        .def_readwrite("eps0", &SolverOptions::eps0)
        .def_readwrite("delta_ball", &SolverOptions::delta_ball);
    py::class_<WaveSolution>(m, "WaveSolution")
        .def_readonly("eps", &WaveSolution::eps)
        .def_readonly("c", &WaveSolution::c)
        .def_readonly("c2", &WaveSolution::c2)
        .def_readonly("m", &WaveSolution::m)
        .def_readonly("L", &WaveSolution::L)
        .def_readonly("phi", &WaveSolution::phi)
        .def_readonly("newton_iters", &WaveSolution::newton_iters)
        .def_readonly("fixed_point_residual", &WaveSolution::fixed_point_residual)
        .def_readonly("h1_distance_to_cnoidal", &WaveSolution::h1_distance_to_cnoidal)
        .def("lattice_period", &WaveSolution::lattice_period)
        .def("r_c", &WaveSolution::r_c, py::arg("x"));
    m.def("nonlinearity_N_eps", &nonlinearity_N_eps, py::arg("phi"), py::arg("eps"),
          py::arg("potential"));
    m.def("newton_solve", &newton_solve, py::arg("eps"), py::arg("m0"), py::arg("potential"),
          py::arg("options") = SolverOptions{});
    m.def("lattice_residual", &lattice_residual, py::arg("solution"),
          py::arg("fine_factor") = 4);
    m.def("continue_in_speed", &continue_in_speed, py::arg("solution"), py::arg("m_new"),
          py::arg("L_new"), py::arg("options") = SolverOptions{});
    py::class_<IftCertificate>(m, "IftCertificate")
        .def_readonly("C0", &IftCertificate::C0)
        .def_readonly("C1", &IftCertificate::C1)
        .def_readonly("C2", &IftCertificate::C2)
        .def_readonly("theta", &IftCertificate::theta)
        .def_readonly("delta", &IftCertificate::delta)
        .def_readonly("f_tilde_norm", &IftCertificate::f_tilde_norm)
        .def_readonly("error_bound", &IftCertificate::error_bound)
        .def_readonly("holds", &IftCertificate::holds)
        .def_readonly("violated", &IftCertificate::violated);
    m.def("ift_certificate", &ift_certificate, py::arg("solution"), py::arg("delta") = 0.1,
          py::arg("samples") = 4);

    // spectrum
    py::class_<LinearizedOperator>(m, "LinearizedOperator")
        .def_readonly("symmetry_defect", &LinearizedOperator::symmetry_defect);
    m.def("build_linearization", &build_linearization, py::arg("wave"), py::arg("grid"));
    py::class_<Eigenpair>(m, "Eigenpair")
        .def_readonly("lam", &Eigenpair::lambda)
        .def_readonly("psi", &Eigenpair::psi)
        .def_readonly("parity", &Eigenpair::parity)
        .def_readonly("parity_purity", &Eigenpair::parity_purity);
    m.def("eigenpairs", &eigenpairs, py::arg("op"), py::arg("count"));
    m.def("even_subspace_gap", &even_subspace_gap, py::arg("op"));
    m.def("second_order_form_residual", &second_order_form_residual, py::arg("lam"),
          py::arg("psi"), py::arg("wave"));
    py::class_<BandStructure>(m, "BandStructure")
        .def_readonly("n_lame", &BandStructure::n_lame)
        .def_readonly("m", &BandStructure::m)
        .def_readonly("periodic_eigs", &BandStructure::periodic_eigs)
        .def_readonly("semiperiodic_eigs", &BandStructure::semiperiodic_eigs)
        .def_readonly("edge_names", &BandStructure::edge_names)
        .def_readonly("edges", &BandStructure::edges)
        .def_readonly("bands", &BandStructure::bands);
    m.def("lame_band_edges_closed_form", &lame_band_edges_closed_form, py::arg("n_lame"),
          py::arg("m"));
    py::enum_<HillBoundary>(m, "HillBoundary")
        .value("periodic", HillBoundary::periodic)
        .value("semiperiodic", HillBoundary::semiperiodic);
    py::class_<HillSpectrum>(m, "HillSpectrum")
        .def_readonly("eigenvalues", &HillSpectrum::eigenvalues)
        .def_readonly("parities", &HillSpectrum::parities)
        .def_readonly("near_degenerate_pairs", &HillSpectrum::near_degenerate_pairs)
        .def_readonly("accuracy_warning", &HillSpectrum::accuracy_warning);
    m.def("hill_spectrum_numeric", &hill_spectrum_numeric, py::arg("n_lame"), py::arg("m"),
          py::arg("grid"), py::arg("boundary"));
    m.def("eigenvalue_transform_chain", &eigenvalue_transform_chain, py::arg("lam"),
          py::arg("m"));
    m.def("lame_hsn_index_form", &lame_hsn_index_form, py::arg("n_lame"), py::arg("m"));

    // lattice simulation
    py::class_<LatticeState>(m, "LatticeState")
        .def_readonly("n_sites", &LatticeState::n_sites)
        .def_readonly("r", &LatticeState::r)
        .def_readonly("p", &LatticeState::p)
        .def_readonly("t", &LatticeState::t);
    py::class_<SeededWave>(m, "SeededWave")
        .def_readonly("state", &SeededWave::state)
        .def_readonly("sol", &SeededWave::sol)
        .def_readonly("q_periods", &SeededWave::q_periods);
    m.def("seed_from_wave", &seed_from_wave, py::arg("solution"), py::arg("q_periods"),
          py::arg("max_sites") = (1 << 22));
    m.def("step_verlet", &step_verlet, py::arg("state"), py::arg("dt"), py::arg("potential"));
    m.def("total_energy", &total_energy, py::arg("state"), py::arg("potential"));
    m.def("bond_sum", &bond_sum, py::arg("state"));
    py::class_<SimulationReport>(m, "SimulationReport")
        .def_readonly("times", &SimulationReport::times)
        .def_readonly("energy_drift", &SimulationReport::energy_drift)
        .def_readonly("shape_error_h1", &SimulationReport::shape_error_h1)
        .def_readonly("measured_speed", &SimulationReport::measured_speed)
        .def_readonly("speed_target", &SimulationReport::speed_target)
        .def_readonly("max_energy_drift", &SimulationReport::max_energy_drift)
        .def_readonly("max_shape_error", &SimulationReport::max_shape_error)
        .def_readonly("blew_up", &SimulationReport::blew_up);
    m.def("propagate_and_compare", &propagate_and_compare, py::arg("seeded"), py::arg("T"),
          py::arg("dt"), py::arg("n_samples") = 200);

    // io
    m.def("parse_config_text", &parse_config_text, py::arg("text"), py::arg("command"));
    m.def("run_command",
          [](const std::string& text, const std::string& command, const std::string& out) {
              const auto cfg = parse_config_text(text, command);
              return run_command(cfg, out);
          },
          py::arg("config_text"), py::arg("command"), py::arg("out_dir"));
}
