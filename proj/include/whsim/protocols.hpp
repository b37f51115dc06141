#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "whsim/distribution.hpp"
#include "whsim/linalg.hpp"
#include "whsim/weyl.hpp"

namespace whsim {

// rho = (1/D)(1 + 3 eps (W + W^dag)); PSD checked by eigenvalues.
Matrix spiked_state(const WeylString& w, double eps);

// Per-string amplitude estimates from one shared pool of coarse outcomes.
struct AmplitudeTable {
  std::vector<int> dims;
  int copies = 0;
  std::int64_t samples = 0;  // 0 marks exact-distribution mode
  std::uint64_t seed = 0;
  std::vector<double> u;  // indexed by string_code over the full set
};

// Smallest number of copies both paths agree on: lcm of the site dimensions.
int copies_for(const std::vector<int>& dims);
DenseStateSpec replicated_dense_spec(const std::vector<int>& dims, const Matrix& rho);
ProductStateSpec replicated_product_spec(const std::vector<int>& dims,
                                         const std::vector<Matrix>& site_factors);

// u_W = |mean character|^{1/c} for every string, one sample pool for all.
// samples = 0 computes expectations under the exact distribution instead.
AmplitudeTable amplitude_estimation(const StateSpec& spec, std::int64_t samples,
                                    std::uint64_t seed);

struct DistinguishResult {
  bool alternative = false;
  std::int64_t argmax_code = 0;  // non-identity string with the largest u
  double max_u = 0.0;
};
// Null iff every non-identity estimate stays at or below 3 eps / 2.
DistinguishResult distinguish(const AmplitudeTable& table, double eps);

// Single-copy baseline on qutrits: guesses drawn uniformly from the 4^n
// strings with per-site exponents in {1,2}; success means hitting the hidden
// string or its conjugate.
std::int64_t single_copy_set_size(int n);
std::int64_t single_copy_index(const WeylString& w);
WeylString single_copy_string(int n, std::int64_t index);
std::int64_t single_copy_conjugate_index(int n, std::int64_t index);
bool single_copy_trial(int n, std::int64_t hidden_index, std::int64_t draws,
                       std::mt19937_64& gen);
bool single_copy_trial(int n, const WeylString& hidden, std::int64_t draws,
                       std::uint64_t seed);

// 1 - (1 - 2/4^n)^N
double theoretical_hit_probability(int n, std::int64_t draws);
// Smallest N with the above >= p_star.
std::int64_t single_copy_nmin(int n, double p_star);

// Smallest N with 4 d^{2n} exp(-(eps^d)^2 N / 4) <= delta_conf.
std::int64_t hoeffding_sample_bound(int d, int n, double eps, double delta_conf);

}  // namespace whsim
