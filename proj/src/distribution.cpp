#include "whsim/distribution.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "whsim/bell.hpp"
#include "whsim/numtheory.hpp"
#include "whsim/rng.hpp"

namespace whsim {

namespace {

constexpr double kClampTol = 1e-12;
constexpr double kSumTol = 1e-9;
// The heterogeneous-copies path materializes the full joint state, so its
// dimension gets a much tighter budget than the structured paths.
constexpr std::int64_t kDenseJointCap = 2187;

void finalize_probs(std::vector<double>& p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < -kClampTol) throw std::domain_error("negative probability; state not PSD");
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) >= kSumTol)
    throw std::domain_error("outcome probabilities do not sum to one");
  for (double& v : p) v /= sum;
}

void check_density(const Matrix& m, double tol = 1e-8) {
  if (!is_hermitian(m, tol)) throw std::domain_error("state not Hermitian");
  if (std::abs(m.trace() - cd(1.0, 0.0)) > tol)
    throw std::domain_error("state trace not one");
  if (m.rows() <= 256) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
      throw std::domain_error("state not PSD");
  } else {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, i).real() < -tol) throw std::domain_error("state not PSD");
  }
}

int common_copies(const std::vector<int>& dims, std::size_t c) {
  if (dims.empty()) throw std::invalid_argument("empty dimension vector");
  if (c < 2) throw std::invalid_argument("need at least two copies");
  for (int p : dims) {
    if (!is_prime(p)) throw std::invalid_argument("site dimensions must be prime");
    if (c % p != 0)
      throw std::invalid_argument("copy count must be divisible by every site dimension");
  }
  return static_cast<int>(c);
}

}  // namespace

std::int64_t outcome_code(const CoarseOutcome& o, const std::vector<int>& dims) {
  if (o.s.size() != dims.size() || o.q.size() != dims.size())
    throw std::invalid_argument("outcome length mismatch");
  std::int64_t code = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const int p = dims[i];
    code = code * (static_cast<std::int64_t>(p) * p) +
           static_cast<std::int64_t>(mod_pos(o.s[i], p)) * p + mod_pos(o.q[i], p);
  }
  return code;
}

CoarseOutcome outcome_from_code(std::int64_t code, const std::vector<int>& dims) {
  CoarseOutcome o;
  o.s.resize(dims.size());
  o.q.resize(dims.size());
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    const int p = dims[i];
    const std::int64_t digit = code % (static_cast<std::int64_t>(p) * p);
    code /= static_cast<std::int64_t>(p) * p;
    o.s[i] = static_cast<int>(digit / p);
    o.q[i] = static_cast<int>(digit % p);
  }
  if (code != 0) throw std::out_of_range("outcome code out of range");
  return o;
}

std::int64_t OutcomeDistribution::outcome_count() const {
  std::int64_t count = 1;
  for (int p : dims) count *= static_cast<std::int64_t>(p) * p;
  return count;
}

double OutcomeDistribution::probability(std::int64_t code) const {
  if (code < 0 || code >= outcome_count()) throw std::out_of_range("outcome code");
  switch (rep) {
    case Rep::Dense:
      return probs[static_cast<std::size_t>(code)];
    case Rep::ClusterProduct: {
      double v = 1.0;
      for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        const std::int64_t radix = static_cast<std::int64_t>(dims[i]) * dims[i];
        v *= cluster[i][static_cast<std::size_t>(code % radix)];
        code /= radix;
      }
      return v;
    }
    case Rep::Spiked: {
      const int d = dims[0];
      const CoarseOutcome o = outcome_from_code(code, dims);
      std::int64_t r = 0;
      for (std::size_t i = 0; i < dims.size(); ++i)
        r += static_cast<std::int64_t>(sb[i]) * o.s[i] -
             static_cast<std::int64_t>(sa[i]) * o.q[i];
      const double v =
          (1.0 + 2.0 * (spike * Phase(mod_pos(r, d), d).value()).real()) /
          static_cast<double>(outcome_count());
      return v < 0.0 ? 0.0 : v;
    }
  }
  throw std::logic_error("bad representation");
}

double OutcomeDistribution::probability(const CoarseOutcome& o) const {
  return probability(outcome_code(o, dims));
}

OutcomeDistribution outcome_distribution_dense(const DenseStateSpec& spec) {
  const int c = common_copies(spec.dims, spec.copies.size());
  const int n = static_cast<int>(spec.dims.size());
  const std::int64_t d_reg = register_dim(spec.dims);
  std::int64_t full = 1;
  for (int j = 0; j < c; ++j) {
    full *= d_reg;
    if (full > kDenseJointCap)
      throw std::length_error("joint dimension too large for the dense path");
  }
  for (const auto& m : spec.copies) {
    if (m.rows() != d_reg || m.cols() != d_reg)
      throw std::invalid_argument("copy dimension mismatch");
    check_density(m);
  }

  Matrix rho = spec.copies[0];
  for (int j = 1; j < c; ++j) rho = kron(rho, spec.copies[j]);

  // Copy-major strides of slot (copy j, site i) in the full index.
  std::vector<std::vector<std::int64_t>> stride(c, std::vector<std::int64_t>(n));
  std::int64_t acc = 1;
  for (int j = c - 1; j >= 0; --j)
    for (int i = n - 1; i >= 0; --i) {
      stride[j][i] = acc;
      acc *= spec.dims[i];
    }

  // Per cluster: nonzero structure of each Bell label (p branches with
  // their contribution to the full copy-major index and their amplitude).
  struct Branch {
    std::int64_t contrib;
    cd amp;
  };
  std::vector<std::vector<std::vector<Branch>>> labels(n);  // [site][label][k]
  for (int i = 0; i < n; ++i) {
    const int p = spec.dims[i];
    std::int64_t label_count = 1;
    for (int j = 0; j < c; ++j) label_count *= p;
    labels[i].resize(static_cast<std::size_t>(label_count));
    std::vector<int> I(c - 1, 0);
    std::int64_t icode = 0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    while (true) {
      for (int q = 0; q < p; ++q) {
        auto& br = labels[i][static_cast<std::size_t>(icode * p + q)];
        br.resize(p);
        for (int k = 0; k < p; ++k) {
          std::int64_t contrib = 0;
          for (int j = 0; j < c; ++j) {
            const int digit = j == 0 ? k : (I[j - 1] + k) % p;
            contrib += digit * stride[j][i];
          }
          br[k] = {contrib, scale * Phase(static_cast<std::int64_t>(k) * q % p, p).value()};
        }
      }
      int j = c - 2;
      while (j >= 0 && I[j] == p - 1) I[j--] = 0;
      if (j < 0) break;
      ++I[j];
      ++icode;
    }
  }

  OutcomeDistribution dist;
  dist.rep = OutcomeDistribution::Rep::Dense;
  dist.dims = spec.dims;
  dist.copies = c;
  dist.probs.assign(static_cast<std::size_t>(dist.outcome_count()), 0.0);

  // Walk every joint Bell label; <b|rho|b> expands over the p^n x p^n pairs
  // of per-cluster branches.
  std::vector<std::int64_t> label(n, 0);
  std::vector<std::int64_t> label_count(n);
  for (int i = 0; i < n; ++i)
    label_count[i] = static_cast<std::int64_t>(labels[i].size());
  std::vector<int> kv(n, 0), kv2(n, 0);
  while (true) {
    // coarse outcome of this label
    std::int64_t code = 0;
    for (int i = 0; i < n; ++i) {
      const int p = spec.dims[i];
      const std::int64_t icode = label[i] / p;
      const int q = static_cast<int>(label[i] % p);
      int s = 0;
      std::int64_t rest = icode;
      for (int j = 0; j < c - 1; ++j) {
        s = (s + static_cast<int>(rest % p)) % p;
        rest /= p;
      }
      code = code * (static_cast<std::int64_t>(p) * p) + s * p + q;
    }

    cd val = 0.0;
    std::fill(kv.begin(), kv.end(), 0);
    while (true) {  // bra branches
      std::int64_t row = 0;
      cd bra = 1.0;
      for (int i = 0; i < n; ++i) {
        const Branch& b = labels[i][static_cast<std::size_t>(label[i])][kv[i]];
        row += b.contrib;
        bra *= b.amp;
      }
      std::fill(kv2.begin(), kv2.end(), 0);
      while (true) {  // ket branches
        std::int64_t col = 0;
        cd ket = 1.0;
        for (int i = 0; i < n; ++i) {
          const Branch& b = labels[i][static_cast<std::size_t>(label[i])][kv2[i]];
          col += b.contrib;
          ket *= b.amp;
        }
        val += std::conj(bra) * ket * rho(row, col);
        int i = n - 1;
        while (i >= 0 && kv2[i] == spec.dims[i] - 1) kv2[i--] = 0;
        if (i < 0) break;
        ++kv2[i];
      }
      int i = n - 1;
      while (i >= 0 && kv[i] == spec.dims[i] - 1) kv[i--] = 0;
      if (i < 0) break;
      ++kv[i];
    }
    dist.probs[static_cast<std::size_t>(code)] += val.real();

    int i = n - 1;
    while (i >= 0 && label[i] == label_count[i] - 1) label[i--] = 0;
    if (i < 0) break;
    ++label[i];
  }

  finalize_probs(dist.probs);
  return dist;
}

OutcomeDistribution outcome_distribution_product(const ProductStateSpec& spec) {
  if (spec.site_ops.size() != spec.dims.size())
    throw std::invalid_argument("one operator list per site required");
  if (spec.site_ops.empty() || spec.site_ops[0].empty())
    throw std::invalid_argument("empty state spec");
  const int c = common_copies(spec.dims, spec.site_ops[0].size());
  OutcomeDistribution dist;
  dist.rep = OutcomeDistribution::Rep::ClusterProduct;
  dist.dims = spec.dims;
  dist.copies = c;
  dist.cluster.resize(spec.dims.size());
  for (std::size_t i = 0; i < spec.dims.size(); ++i) {
    const int p = spec.dims[i];
    if (static_cast<int>(spec.site_ops[i].size()) != c)
      throw std::invalid_argument("copy count differs across sites");
    for (const auto& m : spec.site_ops[i]) {
      if (m.rows() != p || m.cols() != p)
        throw std::invalid_argument("site factor dimension mismatch");
      check_density(m);
    }
    auto& table = dist.cluster[i];
    table.resize(static_cast<std::size_t>(p) * p);
    for (int s = 0; s < p; ++s)
      for (int q = 0; q < p; ++q)
        table[static_cast<std::size_t>(s) * p + q] =
            coarse_bracket(p, c, spec.site_ops[i], s, q).real();
    finalize_probs(table);
  }
  return dist;
}

OutcomeDistribution outcome_distribution_spiked(const SpikedSpec& spec) {
  const WeylString& w = spec.w;
  const int n = w.sites();
  if (n == 0) throw std::invalid_argument("empty string");
  const int d = w.dims[0];
  for (int di : w.dims)
    if (di != d) throw std::invalid_argument("spiked path needs a uniform dimension");
  if (!is_prime(d)) throw std::invalid_argument("dimension must be prime");
  if (w.exponents_zero()) throw std::invalid_argument("spiked string must be non-identity");
  const double eps_max = d == 3 ? 1.0 / 3.0 : 1.0 / 6.0;
  if (spec.eps < 0.0 || spec.eps > eps_max + 1e-12)
    throw std::domain_error("epsilon outside the PSD range");

  OutcomeDistribution dist;
  dist.dims = w.dims;
  dist.copies = d;

  bool all_shift = true;
  for (int i = 0; i < n; ++i)
    if (w.xexp[i] == 0) all_shift = false;

  if (all_shift) {
    dist.rep = OutcomeDistribution::Rep::Spiked;
    dist.sa = w.xexp;
    dist.sb = w.zexp;
    dist.spike = std::pow(3.0 * spec.eps, d) * w.phase.pow(d).value();
    return dist;
  }

  // Some site is diagonal: expand (1 + 3eps(W + W*))^{(x) d} over per-copy
  // letters {identity, W, W*} and evaluate each term clusterwise.
  const std::int64_t count = dist.outcome_count();
  if (count > kEnumerationCap) throw std::length_error("outcome table too large");
  const int assignments = [] (int c) { int r = 1; while (c--) r *= 3; return r; }(d);

  std::vector<std::array<Matrix, 3>> letters(n);
  for (int i = 0; i < n; ++i) {
    WeylString site = weyl_site_op({d}, 0, w.xexp[i], w.zexp[i]);
    letters[i][0] = Matrix::Identity(d, d);
    letters[i][1] = weyl_matrix(site);
    letters[i][2] = letters[i][1].adjoint();
  }

  // tab[i][t][s*d+q] = tr(Pi_{s,q} (x)_j letter_i^{t_j}) / d^d
  std::vector<std::vector<std::vector<cd>>> tab(
      n, std::vector<std::vector<cd>>(assignments,
                                      std::vector<cd>(static_cast<std::size_t>(d) * d)));
  const double cluster_norm = std::pow(static_cast<double>(d), d);
  std::vector<Matrix> ops(d);
  for (int t = 0; t < assignments; ++t) {
    std::vector<int> letter(d);
    int rest = t;
    for (int j = d - 1; j >= 0; --j) {
      letter[j] = rest % 3;
      rest /= 3;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) ops[j] = letters[i][letter[j]];
      for (int s = 0; s < d; ++s)
        for (int q = 0; q < d; ++q)
          tab[i][t][static_cast<std::size_t>(s) * d + q] =
              coarse_bracket(d, d, ops, s, q) / cluster_norm;
    }
  }

  std::vector<cd> coef(assignments);
  const cd phi = w.phase.value();
  for (int t = 0; t < assignments; ++t) {
    int rest = t;
    cd cval = 1.0;
    for (int j = 0; j < d; ++j) {
      const int letter = rest % 3;
      rest /= 3;
      if (letter == 1) cval *= 3.0 * spec.eps * phi;
      if (letter == 2) cval *= 3.0 * spec.eps * std::conj(phi);
    }
    coef[t] = cval;
  }

  dist.rep = OutcomeDistribution::Rep::Dense;
  dist.probs.assign(static_cast<std::size_t>(count), 0.0);
  std::vector<int> sdig(n), qdig(n);
  for (std::int64_t code = 0; code < count; ++code) {
    std::int64_t rest = code;
    for (int i = n - 1; i >= 0; --i) {
      const std::int64_t digit = rest % (static_cast<std::int64_t>(d) * d);
      rest /= static_cast<std::int64_t>(d) * d;
      sdig[i] = static_cast<int>(digit / d);
      qdig[i] = static_cast<int>(digit % d);
    }
    cd val = 0.0;
    for (int t = 0; t < assignments; ++t) {
      cd term = coef[t];
      for (int i = 0; i < n && term != cd(0.0, 0.0); ++i)
        term *= tab[i][t][static_cast<std::size_t>(sdig[i]) * d + qdig[i]];
      val += term;
    }
    dist.probs[static_cast<std::size_t>(code)] = val.real();
  }
  finalize_probs(dist.probs);
  return dist;
}

OutcomeDistribution outcome_distribution(const StateSpec& spec) {
  return std::visit(
      [](const auto& s) -> OutcomeDistribution {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DenseStateSpec>)
          return outcome_distribution_dense(s);
        else if constexpr (std::is_same_v<T, ProductStateSpec>)
          return outcome_distribution_product(s);
        else
          return outcome_distribution_spiked(s);
      },
      spec);
}

std::vector<double> materialize(const OutcomeDistribution& dist) {
  const std::int64_t count = dist.outcome_count();
  if (count > kEnumerationCap) throw std::length_error("outcome table too large");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t code = 0; code < count; ++code)
    out[static_cast<std::size_t>(code)] = dist.probability(code);
  return out;
}

namespace {

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cum(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cum[i] = acc;
  }
  cum.back() = 1.0;  // guard against round-off at the top
  return cum;
}

std::size_t draw_from(const std::vector<double>& cum, std::mt19937_64& gen) {
  const double u = uniform_double(gen);
  return static_cast<std::size_t>(
      std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

}  // namespace

std::vector<std::int64_t> sample_outcome_codes(const OutcomeDistribution& dist,
                                               std::int64_t n,
                                               std::mt19937_64& gen) {
  if (n < 0) throw std::invalid_argument("negative sample count");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  const int sites = static_cast<int>(dist.dims.size());
  switch (dist.rep) {
    case OutcomeDistribution::Rep::Dense: {
      const auto cum = cumulative(dist.probs);
      for (std::int64_t i = 0; i < n; ++i)
        out.push_back(static_cast<std::int64_t>(draw_from(cum, gen)));
      break;
    }
    case OutcomeDistribution::Rep::ClusterProduct: {
      std::vector<std::vector<double>> cums;
      cums.reserve(dist.cluster.size());
      for (const auto& t : dist.cluster) cums.push_back(cumulative(t));
      for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t code = 0;
        for (int s = 0; s < sites; ++s) {
          const std::int64_t radix =
              static_cast<std::int64_t>(dist.dims[s]) * dist.dims[s];
          code = code * radix + static_cast<std::int64_t>(draw_from(cums[s], gen));
        }
        out.push_back(code);
      }
      break;
    }
    case OutcomeDistribution::Rep::Spiked: {
      const int d = dist.dims[0];
      std::vector<double> res(d);
      for (int r = 0; r < d; ++r) {
        double v = (1.0 + 2.0 * (dist.spike * Phase(r, d).value()).real()) /
                   static_cast<double>(d);
        if (v < -kClampTol) throw std::domain_error("negative residue probability");
        res[r] = v < 0.0 ? 0.0 : v;
      }
      const auto cum = cumulative(res);
      int pivot = 0;
      while (dist.sa[static_cast<std::size_t>(pivot)] == 0) ++pivot;
      const int ainv = mod_inverse(dist.sa[static_cast<std::size_t>(pivot)], d);
      std::vector<int> sdig(sites), qdig(sites);
      for (std::int64_t i = 0; i < n; ++i) {
        const int r = static_cast<int>(draw_from(cum, gen));
        std::int64_t acc = -r;
        for (int s = 0; s < sites; ++s) {
          sdig[s] = static_cast<int>(uniform_index(gen, static_cast<std::uint64_t>(d)));
          acc += static_cast<std::int64_t>(dist.sb[s]) * sdig[s];
        }
        for (int s = 0; s < sites; ++s) {
          if (s == pivot) continue;
          qdig[s] = static_cast<int>(uniform_index(gen, static_cast<std::uint64_t>(d)));
          acc -= static_cast<std::int64_t>(dist.sa[s]) * qdig[s];
        }
        qdig[pivot] = static_cast<int>(static_cast<std::int64_t>(ainv) * mod_pos(acc, d) % d);
        std::int64_t code = 0;
        for (int s = 0; s < sites; ++s)
          code = code * (static_cast<std::int64_t>(d) * d) + sdig[s] * d + qdig[s];
        out.push_back(code);
      }
      break;
    }
  }
  return out;
}

std::vector<std::int64_t> sample_outcome_codes(const OutcomeDistribution& dist,
                                               std::int64_t n,
                                               std::uint64_t seed) {
  auto gen = derive_stream(seed);
  return sample_outcome_codes(dist, n, gen);
}

std::vector<CoarseOutcome> sample_outcomes(const OutcomeDistribution& dist,
                                           std::int64_t n, std::uint64_t seed) {
  const auto codes = sample_outcome_codes(dist, n, seed);
  std::vector<CoarseOutcome> out;
  out.reserve(codes.size());
  for (std::int64_t code : codes) out.push_back(outcome_from_code(code, dist.dims));
  return out;
}

}  // namespace whsim
