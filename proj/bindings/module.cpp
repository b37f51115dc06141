// Python surface for the simulator core. Thin lambdas only: conversions and
// small repackaging, no logic that is not already covered by the C++ tests.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>

#include "whsim/bell.hpp"
#include "whsim/circuit.hpp"
#include "whsim/clifford.hpp"
#include "whsim/distribution.hpp"
#include "whsim/experiment.hpp"
#include "whsim/mimic.hpp"
#include "whsim/oracles.hpp"
#include "whsim/protocols.hpp"
#include "whsim/transpile.hpp"
#include "whsim/weyl.hpp"
#include "whsim/wilson.hpp"

namespace py = pybind11;
using namespace whsim;

PYBIND11_MODULE(_whsim, m) {
  m.doc() = "Weyl-Heisenberg multi-copy learning simulator";
  m.attr("__version__") = "0.1.0";

  // ---- string algebra ------------------------------------------------------
  m.def(
      "weyl_matrix",
      [](std::int64_t code, const std::vector<int>& dims) {
        return weyl_matrix(string_from_code(code, dims));
      },
      py::arg("code"), py::arg("dims"),
      "Dense matrix of the string with the given code on the given register.");
  m.def(
      "trace_with",
      [](std::int64_t code, const std::vector<int>& dims, const Matrix& rho) {
        return trace_with(string_from_code(code, dims), rho);
      },
      py::arg("code"), py::arg("dims"), py::arg("rho"),
      "tr(W rho) for the string with the given code.");
  m.def(
      "string_count",
      [](const std::vector<int>& dims, bool reduced) {
        return static_cast<std::int64_t>(enumerate_strings(dims, reduced).size());
      },
      py::arg("dims"), py::arg("reduced") = false);

  // ---- gates and bases -----------------------------------------------------
  m.def("fourier_matrix", &fourier_matrix, py::arg("d"));
  m.def("phase_gate_matrix", &phase_gate_matrix, py::arg("d"));
  m.def("controlled_shift_matrix", &controlled_shift_matrix, py::arg("d"));
  m.def("mub_state", &mub_state, py::arg("d"), py::arg("a"), py::arg("j"));
  m.def("mub_basis_matrix", &mub_basis_matrix, py::arg("d"), py::arg("a"));
  m.def("bell_state", &bell_state, py::arg("d"), py::arg("I"), py::arg("q"));
  m.def("bell_basis_matrix", &bell_basis_matrix, py::arg("p"), py::arg("c"));
  m.def("coarse_projector", &coarse_projector, py::arg("p"), py::arg("c"),
        py::arg("s"), py::arg("q"));

  // ---- states and estimation -----------------------------------------------
  m.def(
      "spiked_state",
      [](std::int64_t code, const std::vector<int>& dims, double eps) {
        return spiked_state(string_from_code(code, dims), eps);
      },
      py::arg("code"), py::arg("dims"), py::arg("eps"));

  py::class_<AmplitudeTable>(m, "AmplitudeTable")
      .def_readonly("dims", &AmplitudeTable::dims)
      .def_readonly("copies", &AmplitudeTable::copies)
      .def_readonly("samples", &AmplitudeTable::samples)
      .def_readonly("u", &AmplitudeTable::u);

  m.def(
      "amplitude_table_dense",
      [](const Matrix& rho, const std::vector<int>& dims, std::int64_t samples,
         std::uint64_t seed) {
        return amplitude_estimation(replicated_dense_spec(dims, rho), samples, seed);
      },
      py::arg("rho"), py::arg("dims"), py::arg("samples"), py::arg("seed"),
      "Per-string amplitude estimates from the collective measurement on "
      "lcm(dims) copies of rho; samples=0 uses the exact distribution.");
  m.def(
      "amplitude_table_spiked",
      [](std::int64_t code, const std::vector<int>& dims, double eps,
         std::int64_t samples, std::uint64_t seed) {
        return amplitude_estimation(SpikedSpec{string_from_code(code, dims), eps},
                                    samples, seed);
      },
      py::arg("code"), py::arg("dims"), py::arg("eps"), py::arg("samples"),
      py::arg("seed"));
  m.def(
      "distinguish",
      [](const AmplitudeTable& table, double eps) {
        const auto r = distinguish(table, eps);
        return py::make_tuple(r.alternative, r.argmax_code, r.max_u);
      },
      py::arg("table"), py::arg("eps"),
      "(alternative, argmax_code, max_u) for the null-vs-planted decision.");

  // ---- baseline and sample-count formulas ----------------------------------
  m.def("hoeffding_sample_bound", &hoeffding_sample_bound, py::arg("d"),
        py::arg("n"), py::arg("eps"), py::arg("delta_conf"));
  m.def("single_copy_nmin", &single_copy_nmin, py::arg("n"), py::arg("p_star"));
  m.def("theoretical_hit_probability", &theoretical_hit_probability, py::arg("n"),
        py::arg("draws"));

  // ---- sequential statistics -----------------------------------------------
  m.def("wilson_interval", &wilson_interval, py::arg("s"), py::arg("t"),
        py::arg("z"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("z_for_alpha", &z_for_alpha, py::arg("alpha"));

  // ---- operator-norm oracles -----------------------------------------------
  m.def(
      "twirl_norm",
      [](int d, const std::vector<int>& tau, const std::string& method) {
        TwirlMethod tm;
        if (method == "brute")
          tm = TwirlMethod::Brute;
        else if (method == "explicit")
          tm = TwirlMethod::Explicit;
        else
          throw std::invalid_argument("method must be brute or explicit");
        return operator_norm(twirl_operator(d, tau, tm));
      },
      py::arg("d"), py::arg("tau"), py::arg("method") = "explicit");
  m.def("twirl_norm_formula", &twirl_norm_formula, py::arg("d"), py::arg("m"));
  m.def("twirl_norm_power", &twirl_norm_power, py::arg("d"), py::arg("tau"),
        py::arg("tol") = 1e-3);
  m.def("mixed_twirl_norm_normalized", &mixed_twirl_norm_normalized,
        py::arg("primes"), py::arg("m"));
  m.def(
      "delta_bound",
      [](int d, int c, double eps, int n) {
        const auto b = delta_bound(d, c, eps, n);
        return py::make_tuple(b.tight, b.relaxed);
      },
      py::arg("d"), py::arg("c"), py::arg("eps"), py::arg("n"));
  m.def("lower_bound_samples", &lower_bound_samples, py::arg("d"), py::arg("c"),
        py::arg("eps"), py::arg("n"));

  // ---- amplitude-matching loop ---------------------------------------------
  m.def("mimicking_iteration_cap", &mimicking_iteration_cap, py::arg("n"),
        py::arg("eps"));
  m.def("z_oracle_shots", &z_oracle_shots, py::arg("eps"), py::arg("T"));
  m.def(
      "mimic_state",
      [](const Matrix& rho, const std::vector<int>& dims, double eps,
         std::uint64_t seed) {
        const auto u = amplitude_estimation(replicated_dense_spec(dims, rho), 0, 0);
        const auto run =
            build_mimicking_state(u, exact_z_oracle(dims, rho), eps, seed);
        return py::make_tuple(run.sigma, run.terminated_early,
                              static_cast<std::int64_t>(run.trace.size()));
      },
      py::arg("rho"), py::arg("dims"), py::arg("eps"), py::arg("seed"),
      "(sigma, terminated_early, steps) from the exact-oracle loop.");
  m.def(
      "recover_expectations",
      [](const Matrix& rho, const std::vector<int>& dims, double eps,
         std::uint64_t seed) {
        const auto u = amplitude_estimation(replicated_dense_spec(dims, rho), 0, 0);
        const auto run =
            build_mimicking_state(u, exact_z_oracle(dims, rho), eps, seed);
        const auto table = recover_phases(run.sigma, rho, dims, eps, 0, 0);
        std::vector<bool> recovered;
        recovered.reserve(table.provenance.size());
        for (const auto p : table.provenance)
          recovered.push_back(p == Provenance::PhaseRecovered);
        return py::make_tuple(table.value, recovered);
      },
      py::arg("rho"), py::arg("dims"), py::arg("eps"), py::arg("seed"),
      "(values, phase_recovered_flags) indexed by string code.");

  // ---- circuits ------------------------------------------------------------
  m.def(
      "bell_circuit_text",
      [](int d, int n) { return circuit_to_text(bell_measurement_circuit(d, n)); },
      py::arg("d"), py::arg("n"));
  m.def(
      "transpile_circuit_text",
      [](const std::string& text) {
        return circuit_to_text(transpile_qutrit_to_qubit(circuit_from_text(text)));
      },
      py::arg("text"));
  m.def(
      "embedding_report",
      [](const std::string& qutrit_text, const std::string& qubit_text, double tol) {
        const auto rep = verify_embedding(circuit_from_text(qutrit_text),
                                          circuit_from_text(qubit_text), tol);
        return py::make_tuple(rep.matches, rep.subspace_preserved, rep.residual);
      },
      py::arg("qutrit_text"), py::arg("qubit_text"), py::arg("tol") = 1e-10,
      "(matches, subspace_preserved, residual) for a qutrit/qubit circuit pair.");

  // ---- verification suites -------------------------------------------------
  m.def(
      "run_verification",
      [](const std::string& suite) {
        std::ostringstream report;
        const int rc = run_verification(suite, report);
        return py::make_tuple(rc, report.str());
      },
      py::arg("suite"),
      "(exit_code, report_text) for suite norms|circuits|algebra|mimicking|all.");
}
