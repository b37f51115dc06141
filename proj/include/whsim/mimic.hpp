#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "whsim/linalg.hpp"
#include "whsim/protocols.hpp"
#include "whsim/weyl.hpp"

namespace whsim {

// One multiplicative-weights update record.
struct MimickingStep {
  int t = 0;
  WeylString w;
  int sign = 1;           // sign applied to the Hermitian quadrature
  bool real_part = true;  // which quadrature was updated
  cd z = 0.0;             // expectation estimate used at this step
};

struct MimickingRun {
  int T = 0;
  double beta = 0.0;
  std::vector<MimickingStep> trace;
  Matrix sigma;
  // True when the loop exited through the no-violation branch before the
  // iteration cap. False means the cap was hit; the run is then a failure
  // and trace/sigma document how it got there.
  bool terminated_early = false;
};

int mimicking_iteration_cap(int n, double eps);  // floor(75 n / eps^2) + 2
double mimicking_step_size(int n, int T);        // sqrt(n / T)

// First string in string_code order with u >= eps and ||tr(W sigma)| - u| >=
// 2 eps / 3, or nothing when no string qualifies.
std::optional<WeylString> violation_search(const AmplitudeTable& u,
                                           const Matrix& sigma, double eps);

// exp(-beta sum_i sign_i M_i) normalized to unit trace. dim fixes the
// register size (needed when terms is empty).
Matrix gibbs_state(const std::vector<std::pair<int, Matrix>>& terms,
                   double beta, std::int64_t dim);

// Estimate of tr(W rho); arguments are the string, the loop step, and the
// run seed (sampling oracles derive a stream from both).
using ZOracle = std::function<cd(const WeylString&, int, std::uint64_t)>;

// Deterministic oracle reading the expectation off a dense rho.
ZOracle exact_z_oracle(const std::vector<int>& dims, const Matrix& rho);
// Single-copy simulation: measures rho in the eigenbasis of W and averages
// the eigenvalues over n_shots outcomes.
ZOracle sampled_z_oracle(const std::vector<int>& dims, const Matrix& rho,
                         std::int64_t n_shots);
// Shots per step reaching accuracy eps/25 with confidence 1 - 0.01/T:
// ceil((2500 / eps^2) ln(400 T)).
std::int64_t z_oracle_shots(double eps, int T);

MimickingRun build_mimicking_state(const AmplitudeTable& u, const ZOracle& z,
                                   double eps, std::uint64_t seed);

enum class Provenance { AmplitudeOnly, PhaseRecovered };

struct ExpectationTable {
  std::vector<int> dims;
  std::vector<cd> value;  // indexed by string_code
  std::vector<Provenance> provenance;
};

// Joint estimation on sigma^(c-1) (x) rho with c = lcm(dims) copies. Strings
// with |tr(W sigma)| >= eps/3 get tr(W rho) = z_W / tr(W sigma)^(c-1); the
// rest keep the amplitude estimate from rho^(c) alone. samples = 0 uses the
// exact distributions.
ExpectationTable recover_phases(const Matrix& sigma, const Matrix& rho,
                                const std::vector<int>& dims, double eps,
                                std::int64_t samples, std::uint64_t seed);

}  // namespace whsim
