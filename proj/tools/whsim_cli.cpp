#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "whsim/circuit.hpp"
#include "whsim/experiment.hpp"
#include "whsim/transpile.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl-Heisenberg learning-task simulator"};
  app.require_subcommand(1);

  // ---- scaling --------------------------------------------------------------
  auto* scaling = app.add_subcommand(
      "scaling", "Sample-complexity scaling study, CSV output");
  std::string config_path;
  scaling->add_option("--config", config_path, "config file (key = value)");
  // Flag overrides share the config-file keys and win over the file.
  const std::vector<std::pair<std::string, std::string>> keys = {
      {"--d", "d"},           {"--n-min", "n_min"},   {"--n-max", "n_max"},
      {"--epsilon", "epsilon"}, {"--delta", "delta"}, {"--p-star", "p_star"},
      {"--alpha", "alpha"},   {"--growth", "growth"}, {"--t-max", "t_max"},
      {"--seed", "seed"},     {"--out", "out"},       {"--strategy", "strategy"}};
  std::vector<std::string> values(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    scaling->add_option(keys[i].first, values[i]);

  // ---- verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  std::string suite = "all";
  std::string verify_out;
  verify->add_option("suite", suite,
                     "norms | circuits | algebra | mimicking | all");
  verify->add_option("--out", verify_out, "also write the report here");

  // ---- circuit --------------------------------------------------------------
  auto* circuit = app.add_subcommand("circuit", "Circuit emission and checks");
  circuit->require_subcommand(1);
  auto* emit = circuit->add_subcommand(
      "emit", "Collective-measurement basis-change circuit");
  int emit_d = 3, emit_n = 1;
  std::string emit_out;
  emit->add_option("--d", emit_d, "site dimension");
  emit->add_option("--n", emit_n, "number of sites");
  emit->add_option("--out", emit_out, "output file (default stdout)");
  auto* transpile = circuit->add_subcommand(
      "transpile", "Rewrite a qutrit circuit over qubit pairs");
  std::string tr_in, tr_out;
  transpile->add_option("--in", tr_in, "qutrit circuit file")->required();
  transpile->add_option("--out", tr_out, "output file (default stdout)");
  auto* check = circuit->add_subcommand(
      "check", "Compare a qubit circuit against its qutrit source");
  std::string ck_in, ck_against;
  double ck_tol = 1e-10;
  check->add_option("--in", ck_in, "qutrit circuit file")->required();
  check->add_option("--against", ck_against, "qubit circuit file")->required();
  check->add_option("--tol", ck_tol, "match tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (scaling->parsed()) {
      whsim::ExperimentConfig cfg;
      try {
        if (!config_path.empty()) cfg = whsim::parse_config_file(config_path);
        for (std::size_t i = 0; i < keys.size(); ++i)
          if (scaling->count(keys[i].first) > 0)
            whsim::apply_config_entry(cfg, keys[i].second, values[i]);
        whsim::validate_config(cfg);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
      const auto rows = whsim::run_scaling(cfg);
      whsim::write_scaling_csv(cfg, rows);
      std::cout << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
      return 0;
    }
    if (verify->parsed()) {
      std::ostringstream report;
      int rc;
      try {
        rc = whsim::run_verification(suite, report);
      } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
      std::cout << report.str();
      if (!verify_out.empty()) write_output(verify_out, report.str());
      return rc;
    }
    if (emit->parsed()) {
      write_output(emit_out,
                   whsim::circuit_to_text(whsim::bell_measurement_circuit(
                       emit_d, emit_n)));
      return 0;
    }
    if (transpile->parsed()) {
      const whsim::Circuit in = whsim::circuit_from_text(read_file(tr_in));
      write_output(tr_out,
                   whsim::circuit_to_text(whsim::transpile_qutrit_to_qubit(in)));
      return 0;
    }
    if (check->parsed()) {
      const whsim::Circuit qutrit = whsim::circuit_from_text(read_file(ck_in));
      const whsim::Circuit qubit = whsim::circuit_from_text(read_file(ck_against));
      const whsim::EmbeddingReport rep =
          whsim::verify_embedding(qutrit, qubit, ck_tol);
      std::cout << "subspace_preserved " << (rep.subspace_preserved ? "yes" : "no")
                << "\nresidual " << rep.residual << "\nglobal_phase "
                << rep.global_phase.real() << (rep.global_phase.imag() < 0 ? "-" : "+")
                << std::abs(rep.global_phase.imag()) << "i\nmatch "
                << (rep.matches ? "yes" : "no") << "\n";
      return rep.matches ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
