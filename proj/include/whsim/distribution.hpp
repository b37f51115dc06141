#pragma once
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "whsim/linalg.hpp"
#include "whsim/weyl.hpp"

namespace whsim {

// One coarse measurement record: an (s, q) pair per site cluster.
struct CoarseOutcome {
  std::vector<int> s;
  std::vector<int> q;
};

// Packing: big-endian over clusters, per-cluster digit s * p_i + q.
std::int64_t outcome_code(const CoarseOutcome& o, const std::vector<int>& dims);
CoarseOutcome outcome_from_code(std::int64_t code, const std::vector<int>& dims);

// c identical-or-not copies of a full register state, copy-major tensor order.
struct DenseStateSpec {
  std::vector<int> dims;        // per-site dimension
  std::vector<Matrix> copies;   // each (prod dims) x (prod dims)
};
// Copies of a product state, listed per site: site_ops[i][j] is the p_i x p_i
// factor of copy j at site i.
struct ProductStateSpec {
  std::vector<int> dims;
  std::vector<std::vector<Matrix>> site_ops;  // [site][copy]
};
// rho = (1/D)(1 + 3 eps (W + W*)), measured with c = d copies.
struct SpikedSpec {
  WeylString w;
  double eps = 0.0;
};
using StateSpec = std::variant<DenseStateSpec, ProductStateSpec, SpikedSpec>;

struct OutcomeDistribution {
  enum class Rep { Dense, ClusterProduct, Spiked };
  Rep rep = Rep::Dense;
  std::vector<int> dims;  // per-cluster site dimension
  int copies = 0;

  // Dense: joint table in outcome-code order.
  std::vector<double> probs;
  // ClusterProduct: independent per-cluster tables, digit order s*p + q.
  std::vector<std::vector<double>> cluster;
  // Spiked closed form (requires every site x-exponent nonzero):
  //   P(o) = (1/d^{2n}) (1 + 2 Re(spike * omega^{<b,s> - <a,q>})).
  std::vector<int> sa, sb;
  cd spike = 0.0;

  std::int64_t outcome_count() const;
  double probability(std::int64_t code) const;
  double probability(const CoarseOutcome& o) const;
};

OutcomeDistribution outcome_distribution_dense(const DenseStateSpec& spec);
OutcomeDistribution outcome_distribution_product(const ProductStateSpec& spec);
OutcomeDistribution outcome_distribution_spiked(const SpikedSpec& spec);
OutcomeDistribution outcome_distribution(const StateSpec& spec);

// Full joint table (guarded by the enumeration cap).
std::vector<double> materialize(const OutcomeDistribution& dist);

std::vector<std::int64_t> sample_outcome_codes(const OutcomeDistribution& dist,
                                               std::int64_t n,
                                               std::mt19937_64& gen);
std::vector<std::int64_t> sample_outcome_codes(const OutcomeDistribution& dist,
                                               std::int64_t n,
                                               std::uint64_t seed);
std::vector<CoarseOutcome> sample_outcomes(const OutcomeDistribution& dist,
                                           std::int64_t n, std::uint64_t seed);

}  // namespace whsim
