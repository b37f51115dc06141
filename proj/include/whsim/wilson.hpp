#pragma once
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace whsim {

// Score interval for s successes in t trials at normal quantile z, clipped
// to [0,1].
std::pair<double, double> wilson_interval(std::int64_t s, std::int64_t t, double z);

// Beasley-Springer-Moro style rational approximation of the standard normal
// quantile function.
double normal_quantile(double p);
// Two-sided quantile for a 1-alpha interval; alpha = 0.1 uses the constant
// 1.6449 so every documented default reproduces bit-identically.
double z_for_alpha(double alpha);

struct WilsonConfig {
  double p_star = 0.7;
  double alpha = 0.1;
  double z = 1.6449;
  std::int64_t t_max = 2000;
  double growth = 1.5;
  std::int64_t n0 = 1;
  std::int64_t n_cap = 1'000'000;
  // Trials run in batches of this size; the interval (and the stopping
  // decision) is recomputed between batches and at t_max. Per-trial
  // monitoring would stop far more often than the interval level implies.
  std::int64_t batch = 25;
};

struct WilsonDecision {
  enum class Verdict { Accept, EarlyReject, Undecided };
  Verdict verdict = Verdict::Undecided;
  std::int64_t s = 0;
  std::int64_t t = 0;
  double w_minus = 0.0;
  double w_plus = 0.0;
};

// One seeded experiment at sample size N; implementations must derive all
// randomness from (seed, n_samples, trial) so runs replay exactly.
using SuccessOracle =
    std::function<bool(std::int64_t n_samples, std::int64_t trial, std::uint64_t seed)>;

// Sequential certification that the oracle's success rate clears p_star:
// Accept once w_minus >= p_star, EarlyReject once w_plus < p_star,
// Undecided (callers treat as reject) when t_max trials run out.
WilsonDecision certify_at_N(const SuccessOracle& oracle, std::int64_t n_samples,
                            const WilsonConfig& cfg, std::uint64_t seed);

struct NminResult {
  std::int64_t n_min = 0;
  WilsonDecision evidence;
  std::vector<std::pair<std::int64_t, WilsonDecision::Verdict>> trajectory;
  std::int64_t total_trials = 0;
};

// Exponential growth N <- max(N+1, floor(g N)) from n0 until the first
// Accept, then bisection over (last reject, first accept]. If the very first
// probe accepts, it is returned as-is.
NminResult nmin_search(const SuccessOracle& oracle, const WilsonConfig& cfg,
                       std::uint64_t seed);

// First grid point whose plain success fraction over t trials reaches p_star.
std::int64_t empirical_nmin(const SuccessOracle& oracle,
                            const std::vector<std::int64_t>& grid, std::int64_t t,
                            double p_star, std::uint64_t seed);

}  // namespace whsim
