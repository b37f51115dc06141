#include "whsim/protocols.hpp"

#include <cmath>
#include <stdexcept>

#include "whsim/moments.hpp"
#include "whsim/numtheory.hpp"
#include "whsim/rng.hpp"

namespace whsim {

Matrix spiked_state(const WeylString& w, double eps) {
  if (w.exponents_zero()) throw std::invalid_argument("string must be non-identity");
  if (eps < 0.0) throw std::domain_error("epsilon must be nonnegative");
  const std::int64_t dim = register_dim(w.dims);
  Matrix m = weyl_matrix(w);
  Matrix rho = Matrix::Identity(dim, dim);
  rho += 3.0 * eps * (m + m.adjoint());
  rho /= static_cast<double>(dim);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw std::domain_error("epsilon outside the PSD range for this string");
  return rho;
}

int copies_for(const std::vector<int>& dims) {
  std::int64_t l = 1;
  for (int p : dims) {
    if (!is_prime(p)) throw std::invalid_argument("site dimensions must be prime");
    l = lcm64(l, p);
  }
  return static_cast<int>(l);
}

DenseStateSpec replicated_dense_spec(const std::vector<int>& dims, const Matrix& rho) {
  DenseStateSpec spec;
  spec.dims = dims;
  spec.copies.assign(static_cast<std::size_t>(copies_for(dims)), rho);
  return spec;
}

ProductStateSpec replicated_product_spec(const std::vector<int>& dims,
                                         const std::vector<Matrix>& site_factors) {
  if (site_factors.size() != dims.size())
    throw std::invalid_argument("one factor per site required");
  ProductStateSpec spec;
  spec.dims = dims;
  const int c = copies_for(dims);
  spec.site_ops.resize(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i)
    spec.site_ops[i].assign(static_cast<std::size_t>(c), site_factors[i]);
  return spec;
}

namespace {

bool uniform_dims(const std::vector<int>& dims) {
  for (int p : dims)
    if (p != dims[0]) return false;
  return true;
}

}  // namespace

AmplitudeTable amplitude_estimation(const StateSpec& spec, std::int64_t samples,
                                    std::uint64_t seed) {
  const OutcomeDistribution dist = outcome_distribution(spec);
  const int n = static_cast<int>(dist.dims.size());
  AmplitudeTable table;
  table.dims = dist.dims;
  table.copies = dist.copies;
  table.samples = samples;
  table.seed = seed;
  const double inv_c = 1.0 / static_cast<double>(dist.copies);
  const std::vector<WeylString> strings = enumerate_strings(dist.dims);
  table.u.resize(strings.size());

  if (samples == 0) {
    for (std::size_t i = 0; i < strings.size(); ++i)
      table.u[i] = std::pow(std::abs(reconstruct_moment_exact(dist, strings[i])), inv_c);
    return table;
  }

  auto gen = derive_stream(seed);
  const std::vector<std::int64_t> codes = sample_outcome_codes(dist, samples, gen);
  if (uniform_dims(dist.dims)) {
    std::vector<double> hist(static_cast<std::size_t>(dist.outcome_count()), 0.0);
    const double w = 1.0 / static_cast<double>(samples);
    for (std::int64_t code : codes) hist[static_cast<std::size_t>(code)] += w;
    const std::vector<cd> moments = all_string_moments(hist, dist.dims[0], n);
    for (std::size_t i = 0; i < strings.size(); ++i)
      table.u[i] = std::pow(std::abs(moments[i]), inv_c);
  } else {
    for (std::size_t i = 0; i < strings.size(); ++i)
      table.u[i] = std::pow(std::abs(reconstruct_moment(codes, strings[i])), inv_c);
  }
  return table;
}

DistinguishResult distinguish(const AmplitudeTable& table, double eps) {
  DistinguishResult result;
  for (std::size_t i = 1; i < table.u.size(); ++i) {  // skip the identity at 0
    if (table.u[i] > result.max_u) {
      result.max_u = table.u[i];
      result.argmax_code = static_cast<std::int64_t>(i);
    }
  }
  result.alternative = result.max_u > 1.5 * eps;
  return result;
}

std::int64_t single_copy_set_size(int n) {
  std::int64_t size = 1;
  while (n-- > 0) size *= 4;
  return size;
}

std::int64_t single_copy_index(const WeylString& w) {
  std::int64_t idx = 0;
  for (int i = 0; i < w.sites(); ++i) {
    if (w.dims[i] != 3 || w.xexp[i] < 1 || w.xexp[i] > 2 || w.zexp[i] < 1 ||
        w.zexp[i] > 2)
      throw std::invalid_argument("string outside the single-copy guess set");
    idx = idx * 4 + (w.xexp[i] - 1) * 2 + (w.zexp[i] - 1);
  }
  return idx;
}

WeylString single_copy_string(int n, std::int64_t index) {
  WeylString w = weyl_identity(std::vector<int>(static_cast<std::size_t>(n), 3));
  for (int i = n - 1; i >= 0; --i) {
    const int digit = static_cast<int>(index % 4);
    index /= 4;
    w.xexp[i] = digit / 2 + 1;
    w.zexp[i] = digit % 2 + 1;
  }
  if (index != 0) throw std::out_of_range("guess index out of range");
  return w;
}

std::int64_t single_copy_conjugate_index(int n, std::int64_t index) {
  // exponent e in {1,2} maps to 3 - e, i.e. digit bit-flips in both slots
  std::int64_t out = 0;
  for (int i = n - 1; i >= 0; --i) {
    const std::int64_t digit = index % 4;
    index /= 4;
    out += (3 - digit) << (2 * (n - 1 - i));
  }
  return out;
}

bool single_copy_trial(int n, std::int64_t hidden_index, std::int64_t draws,
                       std::mt19937_64& gen) {
  const std::int64_t size = single_copy_set_size(n);
  if (hidden_index < 0 || hidden_index >= size)
    throw std::out_of_range("hidden index out of range");
  const std::int64_t conj = single_copy_conjugate_index(n, hidden_index);
  for (std::int64_t i = 0; i < draws; ++i) {
    const std::int64_t guess =
        static_cast<std::int64_t>(uniform_index(gen, static_cast<std::uint64_t>(size)));
    if (guess == hidden_index || guess == conj) return true;
  }
  return false;
}

bool single_copy_trial(int n, const WeylString& hidden, std::int64_t draws,
                       std::uint64_t seed) {
  auto gen = derive_stream(seed);
  return single_copy_trial(n, single_copy_index(hidden), draws, gen);
}

double theoretical_hit_probability(int n, std::int64_t draws) {
  if (n < 1 || draws < 0) throw std::invalid_argument("bad arguments");
  const double miss = 1.0 - 2.0 / static_cast<double>(single_copy_set_size(n));
  return 1.0 - std::pow(miss, static_cast<double>(draws));
}

std::int64_t single_copy_nmin(int n, double p_star) {
  if (p_star <= 0.0 || p_star >= 1.0) throw std::domain_error("p_star in (0,1) required");
  const double miss = 1.0 - 2.0 / static_cast<double>(single_copy_set_size(n));
  return static_cast<std::int64_t>(std::ceil(std::log(1.0 - p_star) / std::log(miss)));
}

std::int64_t hoeffding_sample_bound(int d, int n, double eps, double delta_conf) {
  if (eps <= 0.0 || eps > 1.0) throw std::domain_error("eps in (0,1] required");
  if (delta_conf <= 0.0 || delta_conf >= 1.0)
    throw std::domain_error("confidence parameter in (0,1) required");
  const double prec = std::pow(eps, d);  // d-copy estimates carry eps^d accuracy
  const double count = 4.0 * std::pow(static_cast<double>(d), 2 * n);
  return static_cast<std::int64_t>(
      std::ceil(4.0 / (prec * prec) * std::log(count / delta_conf)));
}

}  // namespace whsim
