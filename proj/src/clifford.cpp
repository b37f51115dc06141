#include "whsim/clifford.hpp"

#include <stdexcept>

#include "whsim/numtheory.hpp"
#include "whsim/weyl.hpp"

namespace whsim {

Matrix fourier_matrix(int d) {
  const std::int64_t L = phase_modulus({d});
  Matrix m(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j)
      m(k, j) = scale * Phase(static_cast<std::int64_t>(k) * j % d * (L / d), L).value();
  return m;
}

Matrix phase_gate_matrix(int d) {
  const std::int64_t L = phase_modulus({d});
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    // j(j-1)/2 is an integer; reduce mod d only after halving (d=2 needs the
    // fourth roots, which L already accommodates).
    const std::int64_t half = static_cast<std::int64_t>(j) * (j - 1) / 2;
    m(j, j) = Phase(half % d * (L / d), L).value();
  }
  return m;
}

Matrix controlled_shift_matrix(int d) {
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) m(k * d + (k + l) % d, k * d + l) = 1.0;
  return m;
}

Matrix clifford_gate(int d, CliffordGate which) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  switch (which) {
    case CliffordGate::H:
      return fourier_matrix(d);
    case CliffordGate::S:
      return phase_gate_matrix(d);
    case CliffordGate::CX:
      return controlled_shift_matrix(d);
  }
  throw std::invalid_argument("unknown gate");
}

Vector mub_state(int d, int a, int j) {
  if (!is_prime(d)) throw std::invalid_argument("dimension must be prime");
  if (j < 0 || j >= d) throw std::invalid_argument("eigenvalue label out of range");
  if (a == -1) {
    Vector v = Vector::Zero(d);
    v(j) = 1.0;
    return v;
  }
  if (a < 0 || a >= d || (d == 2 && a != 0))
    throw std::invalid_argument("invalid basis label");
  const std::int64_t L = phase_modulus({d});
  Vector v(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    const std::int64_t half = static_cast<std::int64_t>(k) * (k - 1) / 2;
    const int e = mod_pos(-static_cast<std::int64_t>(j) * k + a * half, d);
    v(k) = scale * Phase(static_cast<std::int64_t>(e) * (L / d), L).value();
  }
  return v;
}

Matrix mub_basis_matrix(int d, int a) {
  Matrix m(d, d);
  for (int j = 0; j < d; ++j) m.col(j) = mub_state(d, a, j);
  return m;
}

SiteEigenbasis site_eigenbasis(int d, int p, int q) {
  if (!is_prime(d)) throw std::invalid_argument("dimension must be prime");
  p = mod_pos(p, d);
  q = mod_pos(q, d);
  const std::int64_t L = phase_modulus({d});
  SiteEigenbasis out;
  out.eigenvalues.reserve(d);
  if (p == 0) {
    out.basis = Matrix::Identity(d, d);
    for (int j = 0; j < d; ++j)
      out.eigenvalues.push_back(Phase(static_cast<std::int64_t>(q) * j % d * (L / d), L));
    return out;
  }
  if (d == 2 && q == 1) {
    // X Z eigenvectors (1, +-i)/sqrt(2) with eigenvalues -+ i.
    out.basis = Matrix(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    out.basis(0, 0) = s;
    out.basis(1, 0) = cd(0.0, s);
    out.basis(0, 1) = s;
    out.basis(1, 1) = cd(0.0, -s);
    out.eigenvalues.push_back(Phase(3 * (L / 4), L));  // -i
    out.eigenvalues.push_back(Phase(L / 4, L));        // +i
    return out;
  }
  // X^p Z^q = omega^{-a p(p-1)/2} (X Z^a)^p with a = q p^{-1}, so column j of
  // the slope-a basis carries eigenvalue omega^{jp - a p(p-1)/2}.
  const int a = static_cast<int>(static_cast<std::int64_t>(q) * mod_inverse(p, d) % d);
  out.basis = mub_basis_matrix(d, a);
  const std::int64_t half = static_cast<std::int64_t>(p) * (p - 1) / 2;
  for (int j = 0; j < d; ++j) {
    const int e = mod_pos(static_cast<std::int64_t>(j) * p - a * half, d);
    out.eigenvalues.push_back(Phase(static_cast<std::int64_t>(e) * (L / d), L));
  }
  return out;
}

}  // namespace whsim
