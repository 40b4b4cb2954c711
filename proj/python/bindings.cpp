#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kzldt/cli.hpp"
#include "kzldt/errors.hpp"
#include "kzldt/ldt.hpp"
#include "kzldt/oracle.hpp"
#include "kzldt/special.hpp"
#include "kzldt/version.hpp"

namespace py = pybind11;
using namespace kzldt;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Finite-time quenches of the transverse-field Ising chain: kink "
      "counting statistics and large-deviations rate functions.";
  m.attr("__version__") = kVersion;

  py::register_exception<unsupported_regime_error>(m, "UnsupportedRegimeError",
                                                   PyExc_ValueError);
  py::register_exception<degenerate_point_error>(m, "DegeneratePointError",
                                                 PyExc_ValueError);
  py::register_exception<integration_error>(m, "IntegrationError",
                                            PyExc_RuntimeError);
  py::register_exception<resource_error>(m, "ResourceError",
                                         PyExc_RuntimeError);

  // --- model ---------------------------------------------------------
  py::class_<QuenchProtocol>(m, "QuenchProtocol")
      .def(py::init<>())
      .def_static("linear_ramp", &QuenchProtocol::linear_ramp, py::arg("tau_q"))
      .def_readwrite("g_c", &QuenchProtocol::g_c)
      .def_readwrite("tau_q", &QuenchProtocol::tau_q)
      .def_readwrite("t_start", &QuenchProtocol::t_start)
      .def_readwrite("t_end", &QuenchProtocol::t_end)
      .def_readwrite("coupling_j", &QuenchProtocol::coupling_j)
      .def_readwrite("hbar", &QuenchProtocol::hbar)
      .def("scaled_tau", &QuenchProtocol::scaled_tau);

  m.def("field_at", &field_at, py::arg("protocol"), py::arg("t"));

  py::class_<MomentumGrid>(m, "MomentumGrid")
      .def_static("for_sites", &MomentumGrid::for_sites, py::arg("n_sites"))
      .def_readonly("n_sites", &MomentumGrid::n_sites)
      .def_readonly("positive_modes", &MomentumGrid::positive_modes);

  py::class_<LongRangeSpec>(m, "LongRangeSpec")
      .def_readonly("alpha", &LongRangeSpec::alpha)
      .def_readonly("n_sites", &LongRangeSpec::n_sites)
      .def_readonly("coupling_table", &LongRangeSpec::coupling_table)
      .def_readonly("small_k_slope", &LongRangeSpec::small_k_slope);

  py::class_<PairingSpec>(m, "PairingSpec")
      .def_static("short_range", &PairingSpec::short_range)
      .def_static("long_range", &PairingSpec::long_range, py::arg("alpha"),
                  py::arg("n_sites"))
      .def_property_readonly("is_long_range", &PairingSpec::is_long_range)
      .def_property_readonly("spec", &PairingSpec::spec)
      .def("slope", &PairingSpec::slope);

  m.def("pairing_function", &pairing_function, py::arg("pairing"), py::arg("k"));
  m.def("bogoliubov_angle", &bogoliubov_angle, py::arg("g"), py::arg("k"),
        py::arg("pairing"));
  m.def("spectrum", &spectrum, py::arg("g"), py::arg("k"), py::arg("pairing"),
        py::arg("coupling_j") = 1.0);
  m.def("mode_hamiltonian", &mode_hamiltonian, py::arg("g"), py::arg("k"),
        py::arg("pairing"), py::arg("coupling_j") = 1.0);

  // --- evolve --------------------------------------------------------
  py::class_<ModeAmplitudes>(m, "ModeAmplitudes")
      .def_readonly("u", &ModeAmplitudes::u)
      .def_readonly("v", &ModeAmplitudes::v)
      .def("norm_sq", &ModeAmplitudes::norm_sq);

  py::enum_<ProfileSource>(m, "ProfileSource")
      .value("numeric", ProfileSource::numeric)
      .value("landau_zener", ProfileSource::landau_zener);

  py::class_<ExcitationProfile>(m, "ExcitationProfile")
      .def(py::init<>())
      .def_readwrite("entries", &ExcitationProfile::entries)
      .def_readwrite("tau_q", &ExcitationProfile::tau_q)
      .def_readwrite("source", &ExcitationProfile::source)
      .def_readwrite("n_sites", &ExcitationProfile::n_sites);

  m.def("ground_state", &ground_state, py::arg("g"), py::arg("k"),
        py::arg("pairing"));
  m.def("excited_state", &excited_state, py::arg("g"), py::arg("k"),
        py::arg("pairing"));
  m.def("evolve_mode", &evolve_mode, py::arg("protocol"), py::arg("k"),
        py::arg("pairing"), py::arg("tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>());
  m.def("excitation_probability", &excitation_probability,
        py::arg("final_state"), py::arg("g_final"), py::arg("k"),
        py::arg("pairing"));
  m.def("landau_zener_profile", &landau_zener_profile, py::arg("protocol"),
        py::arg("grid"), py::arg("slope"));
  m.def("run_quench", &run_quench, py::arg("protocol"), py::arg("grid"),
        py::arg("pairing"), py::arg("tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>());

  // --- fcs -----------------------------------------------------------
  py::class_<KinkPairDistribution>(m, "KinkPairDistribution")
      .def_readonly("probs", &KinkPairDistribution::probs)
      .def_readonly("n_sites", &KinkPairDistribution::n_sites)
      .def_readonly("floored", &KinkPairDistribution::floored);

  py::class_<CumulantSet>(m, "CumulantSet")
      .def_readonly("kappa1", &CumulantSet::kappa1)
      .def_readonly("kappa2", &CumulantSet::kappa2)
      .def_readonly("kappa3", &CumulantSet::kappa3);

  py::enum_<CgfForm>(m, "CgfForm")
      .value("finite_n", CgfForm::finite_n)
      .value("integral", CgfForm::integral)
      .value("polylog", CgfForm::polylog);

  py::class_<CgfCurve>(m, "CgfCurve")
      .def_readonly("samples", &CgfCurve::samples)
      .def_readonly("form", &CgfCurve::form)
      .def_readonly("rho_kzm", &CgfCurve::rho_kzm)
      .def_readonly("n_sites", &CgfCurve::n_sites)
      .def("evaluate", [](const CgfCurve& c, double theta) {
        if (!c.evaluator) throw std::runtime_error("curve has no evaluator");
        return c.evaluator(theta);
      });

  m.def("rho_kzm_density", &rho_kzm_density, py::arg("tau_q"));
  m.def("default_theta_grid", &default_theta_grid);
  m.def("kink_distribution", &kink_distribution, py::arg("profile"));
  m.def("cumulants", &cumulants, py::arg("profile"));
  m.def("mean_density", &mean_density, py::arg("profile"));
  m.def(
      "cgf_finite_n",
      [](const ExcitationProfile& p, const std::vector<double>& thetas) {
        return cgf_finite_n(p, thetas);
      },
      py::arg("profile"), py::arg("thetas"));
  m.def(
      "cgf_integral",
      [](double tau_q, const std::vector<double>& thetas, double k_max) {
        return cgf_integral(tau_q, thetas, k_max);
      },
      py::arg("tau_q"), py::arg("thetas"),
      py::arg("k_max") = 3.14159265358979323846);
  m.def(
      "cgf_polylog",
      [](double tau_q, const std::vector<double>& thetas) {
        return cgf_polylog(tau_q, thetas);
      },
      py::arg("tau_q"), py::arg("thetas"));

  // --- ldt -----------------------------------------------------------
  py::enum_<RateForm>(m, "RateForm")
      .value("analytic_polylog", RateForm::analytic_polylog)
      .value("finite_n_numeric", RateForm::finite_n_numeric)
      .value("clt_reference", RateForm::clt_reference)
      .value("classical_kl", RateForm::classical_kl);

  py::class_<RatePoint>(m, "RatePoint")
      .def_readonly("rho_bar", &RatePoint::rho_bar)
      .def_readonly("i_bar", &RatePoint::i_bar)
      .def_readonly("boundary", &RatePoint::boundary);

  py::class_<RateFunctionCurve>(m, "RateFunctionCurve")
      .def_readonly("samples", &RateFunctionCurve::samples)
      .def_readonly("form", &RateFunctionCurve::form)
      .def_readonly("rho_kzm", &RateFunctionCurve::rho_kzm);

  py::enum_<TailSide>(m, "TailSide")
      .value("upper", TailSide::upper)
      .value("lower", TailSide::lower);

  m.def(
      "legendre_fenchel",
      [](const CgfCurve& c, const std::vector<double>& grid) {
        return legendre_fenchel(c, grid);
      },
      py::arg("curve"), py::arg("rho_bar_grid"));
  m.def("theta_star", &theta_star, py::arg("rho_bar"));
  m.def(
      "analytic_rate_function",
      [](const std::vector<double>& grid) { return analytic_rate_function(grid); },
      py::arg("rho_bar_grid"));
  m.def("chernoff_tail_bound", &chernoff_tail_bound, py::arg("curve"),
        py::arg("rho"), py::arg("side"));

  py::class_<KzmScalingParams>(m, "KzmScalingParams")
      .def(py::init<>())
      .def_readwrite("nu", &KzmScalingParams::nu)
      .def_readwrite("z", &KzmScalingParams::z)
      .def_readwrite("dim", &KzmScalingParams::dim)
      .def_readwrite("xi0", &KzmScalingParams::xi0)
      .def_readwrite("tau0", &KzmScalingParams::tau0)
      .def_readwrite("f_factor", &KzmScalingParams::f_factor)
      .def_readwrite("p_success", &KzmScalingParams::p_success)
      .def_readwrite("volume", &KzmScalingParams::volume);

  py::class_<DefectScaling>(m, "DefectScaling")
      .def_readonly("xi_hat", &DefectScaling::xi_hat)
      .def_readonly("n_events", &DefectScaling::n_events)
      .def_readonly("rho_kzm", &DefectScaling::rho_kzm);

  m.def("kzm_defect_scaling", &kzm_defect_scaling, py::arg("params"),
        py::arg("tau_q"));
  m.def("kl_divergence_bernoulli", &kl_divergence_bernoulli, py::arg("r"),
        py::arg("p"));
  m.def("binomial_log_pmf", &binomial_log_pmf, py::arg("n"), py::arg("k"),
        py::arg("p"));
  m.def("binomial_log_tail", &binomial_log_tail, py::arg("n"), py::arg("k"),
        py::arg("p"), py::arg("side"));

  py::class_<BinomialLdp>(m, "BinomialLdp")
      .def_readonly("estimate_log_pmf", &BinomialLdp::estimate_log_pmf)
      .def_readonly("exact_log_pmf", &BinomialLdp::exact_log_pmf);

  m.def("binomial_ldp_estimate", &binomial_ldp_estimate, py::arg("n_trials"),
        py::arg("r"), py::arg("p"));
  m.def(
      "classical_rate_function",
      [](const KzmScalingParams& params, double tau_q,
         const std::vector<double>& grid) {
        return classical_rate_function(params, tau_q, grid);
      },
      py::arg("params"), py::arg("tau_q"), py::arg("rho_bar_grid"));
  m.def(
      "clt_rate_function",
      [](const ExcitationProfile& profile, const std::vector<double>& grid,
         double scale) { return clt_rate_function(profile, grid, scale); },
      py::arg("profile"), py::arg("rho_bar_grid"), py::arg("rho_kzm_scale"));

  // --- special -------------------------------------------------------
  py::enum_<PolylogOrder>(m, "PolylogOrder")
      .value("half", PolylogOrder::half)
      .value("three_halves", PolylogOrder::three_halves);

  m.def("polylog", &polylog, py::arg("order"), py::arg("x"));
  m.def("zeta_three_halves", &zeta_three_halves);

  // --- oracle --------------------------------------------------------
  py::class_<SpinChainState>(m, "SpinChainState")
      .def_readonly("amplitudes", &SpinChainState::amplitudes)
      .def_readonly("n_sites", &SpinChainState::n_sites);

  m.def("build_hamiltonian", &build_hamiltonian, py::arg("g"),
        py::arg("n_sites"));
  m.def("spin_ground_state", &spin_ground_state, py::arg("g"),
        py::arg("n_sites"));
  m.def("evolve_exact", &evolve_exact, py::arg("protocol"), py::arg("n_sites"),
        py::arg("dt_initial") = 0.0, py::call_guard<py::gil_scoped_release>());
  m.def("kink_pair_distribution_exact", &kink_pair_distribution_exact,
        py::arg("state"));
}
