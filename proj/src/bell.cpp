#include "whsim/bell.hpp"

#include <stdexcept>

#include "whsim/numtheory.hpp"
#include "whsim/phase.hpp"

namespace whsim {

namespace {

void check_label(int p, int c, const std::vector<int>& I, int q) {
  if (p < 2 || c < 2 || c % p != 0)
    throw std::invalid_argument("copy count must be a positive multiple of p");
  if (static_cast<int>(I.size()) != c - 1)
    throw std::invalid_argument("index length must be c-1");
  for (int v : I)
    if (v < 0 || v >= p) throw std::invalid_argument("index digit out of range");
  if (q < 0 || q >= p) throw std::invalid_argument("q out of range");
}

std::int64_t pow_ll(int b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Computational index of (0,I) + k*(1,...,1), digits big-endian base p.
std::int64_t shifted_index(int p, int c, const std::vector<int>& I, int k) {
  std::int64_t idx = k % p;
  for (int j = 0; j < c - 1; ++j) idx = idx * p + (I[j] + k) % p;
  return idx;
}

}  // namespace

Vector bell_vector(int p, int c, const std::vector<int>& I, int q) {
  check_label(p, c, I, q);
  const std::int64_t dim = pow_ll(p, c);
  if (dim > kDenseDimCap) throw std::length_error("dense dimension cap exceeded");
  Vector v = Vector::Zero(dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  for (int k = 0; k < p; ++k)
    v(shifted_index(p, c, I, k)) =
        scale * Phase(static_cast<std::int64_t>(k) * q % p, p).value();
  return v;
}

Vector bell_state(int d, const std::vector<int>& I, int q) {
  return bell_vector(d, d, I, q);
}

Matrix bell_basis_matrix(int p, int c) {
  const std::int64_t dim = pow_ll(p, c);
  if (dim > kDenseDimCap) throw std::length_error("dense dimension cap exceeded");
  Matrix b(dim, dim);
  std::vector<int> I(c - 1, 0);
  std::int64_t icode = 0;
  while (true) {
    for (int q = 0; q < p; ++q) b.col(icode * p + q) = bell_vector(p, c, I, q);
    int j = c - 2;
    while (j >= 0 && I[j] == p - 1) I[j--] = 0;
    if (j < 0) break;
    ++I[j];
    ++icode;
  }
  return b;
}

Matrix coarse_projector(int p, int c, int s, int q) {
  const std::int64_t dim = pow_ll(p, c);
  if (dim > kDenseDimCap) throw std::length_error("dense dimension cap exceeded");
  Matrix out = Matrix::Zero(dim, dim);
  std::vector<int> I(c - 1, 0);
  while (true) {
    int sum = 0;
    for (int v : I) sum = (sum + v) % p;
    if (sum == mod_pos(s, p)) {
      Vector v = bell_vector(p, c, I, q);
      out.noalias() += v * v.adjoint();
    }
    int j = c - 2;
    while (j >= 0 && I[j] == p - 1) I[j--] = 0;
    if (j < 0) break;
    ++I[j];
  }
  return out;
}

std::int64_t coarse_rank(int p, int c) { return pow_ll(p, c - 2); }

cd bell_bracket(int p, const std::vector<Matrix>& ops,
                const std::vector<int>& I, int q) {
  const int c = static_cast<int>(ops.size());
  check_label(p, c, I, q);
  for (const auto& a : ops)
    if (a.rows() != p || a.cols() != p)
      throw std::invalid_argument("per-copy operator must be p x p");
  cd acc = 0.0;
  for (int kb = 0; kb < p; ++kb) {    // bra branch
    for (int kk = 0; kk < p; ++kk) {  // ket branch
      cd term = Phase(mod_pos((kk - kb) * q, p), p).value();
      for (int j = 0; j < c && term != cd(0.0, 0.0); ++j) {
        const int row = j == 0 ? kb : (I[j - 1] + kb) % p;
        const int col = j == 0 ? kk : (I[j - 1] + kk) % p;
        term *= ops[j](row, col);
      }
      acc += term;
    }
  }
  return acc / static_cast<double>(p);
}

cd coarse_bracket(int p, int c, const std::vector<Matrix>& ops, int s, int q) {
  cd acc = 0.0;
  std::vector<int> I(c - 1, 0);
  while (true) {
    int sum = 0;
    for (int v : I) sum = (sum + v) % p;
    if (sum == mod_pos(s, p)) acc += bell_bracket(p, ops, I, q);
    int j = c - 2;
    while (j >= 0 && I[j] == p - 1) I[j--] = 0;
    if (j < 0) break;
    ++I[j];
  }
  return acc;
}

}  // namespace whsim
