#include "whsim/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whsim/rng.hpp"

namespace whsim {

Matrix to_dense(const SparseOperator& a) {
  if (a.dim > kDenseNormCap) throw std::length_error("operator too large to densify");
  Matrix m = Matrix::Zero(a.dim, a.dim);
  for (const auto& e : a.entries) m(e.row, e.col) += e.val;
  return m;
}

double operator_norm(const SparseOperator& a, double tol) {
  if (a.dim <= 0) throw std::invalid_argument("empty operator");
  if (a.dim <= kDenseNormCap) return spectral_norm_dense(to_dense(a));

  // Power iteration on A^dagger A over the triplet list.
  const std::int64_t dim = a.dim;
  std::vector<cd> x(static_cast<std::size_t>(dim)), y(static_cast<std::size_t>(dim)),
      z(static_cast<std::size_t>(dim));
  auto gen = derive_stream(0x5eed0fULL, a.dim, a.entries.size());
  for (int restart = 0; restart < 5; ++restart) {
    for (auto& v : x) v = cd(uniform_double(gen) - 0.5, uniform_double(gen) - 0.5);
    double norm = 0.0;
    for (const auto& v : x) norm += std::norm(v);
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
    double prev = -1.0;
    for (int it = 0; it < 10000; ++it) {
      std::fill(y.begin(), y.end(), cd(0.0, 0.0));
      for (const auto& e : a.entries)
        y[static_cast<std::size_t>(e.row)] += e.val * x[static_cast<std::size_t>(e.col)];
      std::fill(z.begin(), z.end(), cd(0.0, 0.0));
      for (const auto& e : a.entries)
        z[static_cast<std::size_t>(e.col)] +=
            std::conj(e.val) * y[static_cast<std::size_t>(e.row)];
      double lam = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
        lam += (std::conj(x[i]) * z[i]).real();
      double zn = 0.0;
      for (const auto& v : z) zn += std::norm(v);
      zn = std::sqrt(zn);
      if (zn == 0.0) break;  // landed in the kernel; restart with fresh noise
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = z[i] / zn;
      const double cur = std::sqrt(std::max(lam, 0.0));
      if (prev >= 0.0 && std::abs(cur - prev) <= tol * std::max(cur, 1.0)) return cur;
      prev = cur;
    }
  }
  throw std::runtime_error("power iteration did not converge");
}

}  // namespace whsim
