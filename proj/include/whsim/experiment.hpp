#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace whsim {

struct ExperimentConfig {
  int d = 3;
  int n_min = 1;
  int n_max = 6;
  double epsilon = 0.3;  // planted-state strength
  double delta = 0.1;    // per-string reconstruction tolerance
  double p_star = 0.7;
  double alpha = 0.1;
  double growth = 1.5;
  std::int64_t t_max = 2000;
  bool seed_set = false;  // a seed must be given explicitly
  std::uint64_t seed = 0;
  std::string out = "scaling.csv";
  std::string strategy = "both";  // three-copy | single-copy | both
};

// key = value lines, optional [section] headers, '#' comments. Keys match
// the CLI flag names with '-' and '_' interchangeable.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);
void validate_config(const ExperimentConfig& cfg);

struct ScalingRow {
  int n = 0;
  std::string strategy;
  std::int64_t n_min = 0;
  std::int64_t trials = 0;
  double p_hat = 0.0;
  double w_minus = 0.0;
  std::uint64_t seed = 0;
};

// One seeded run: plant a hidden string, draw n_samples collective outcomes
// from its perturbed state, reconstruct every string moment, succeed when
// each estimate lands within delta of its exact target.
bool three_copy_trial(int n, double eps, double delta, std::int64_t n_samples,
                      std::uint64_t stream_seed);

std::vector<ScalingRow> run_scaling(const ExperimentConfig& cfg);
std::string scaling_csv(const ExperimentConfig& cfg,
                        const std::vector<ScalingRow>& rows);
void write_scaling_csv(const ExperimentConfig& cfg,
                       const std::vector<ScalingRow>& rows);

// Named invariant suites; returns 0 when every check passes, 1 otherwise.
// suite is one of norms | circuits | algebra | mimicking | all.
int run_verification(const std::string& suite, std::ostream& report);

}  // namespace whsim
