#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "whsim/phase.hpp"

namespace whsim {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense operators are only materialized below this dimension; larger objects
// must go through the sparse or structured paths.
inline constexpr long long kDenseDimCap = 1 << 20;
// Dense eigensolver work (norms, Gibbs states) is far more expensive than
// storage, so it gets a tighter cutoff; beyond it use power iteration.
inline constexpr long long kDenseNormCap = 1024;
inline constexpr long long kEnumerationCap = 10'000'000LL;
inline constexpr long long kSparseNnzCap = 100'000'000LL;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix kron_all(const std::vector<Matrix>& mats) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& m : mats) out = kron(out, m);
  return out;
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-10) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Matrix& m, double tol = 1e-10) {
  Matrix g = m.adjoint() * m;
  return (g - Matrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_density_matrix(const Matrix& m, double tol = 1e-10) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - cd(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

// Largest singular value via the Hermitian eigenproblem of A^dagger A.
inline double spectral_norm_dense(const Matrix& m) {
  if (m.rows() > kDenseNormCap || m.cols() > kDenseNormCap)
    throw std::invalid_argument("matrix exceeds dense eigensolver cap");
  Matrix g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  double lam = es.eigenvalues().maxCoeff();
  return lam <= 0 ? 0.0 : std::sqrt(lam);
}

inline std::vector<int> mixed_radix_decode(long long index, const std::vector<int>& radices) {
  std::vector<int> digits(radices.size());
  for (int i = static_cast<int>(radices.size()) - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(index % radices[i]);
    index /= radices[i];
  }
  return digits;
}

inline long long mixed_radix_encode(const std::vector<int>& digits, const std::vector<int>& radices) {
  long long index = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) index = index * radices[i] + digits[i];
  return index;
}

}  // namespace whsim
