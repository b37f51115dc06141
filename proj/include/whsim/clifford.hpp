#pragma once
#include <vector>

#include "whsim/linalg.hpp"
#include "whsim/phase.hpp"

namespace whsim {

// Discrete Fourier gate, (1/sqrt(d)) sum_{k,j} omega^{kj} |k><j|.
Matrix fourier_matrix(int d);
// Quadratic phase gate, diag(omega^{j(j-1)/2}).
Matrix phase_gate_matrix(int d);
// Two-qudit controlled shift, sum_{k,l} |k><k| (x) |k+l><l|.
Matrix controlled_shift_matrix(int d);

enum class CliffordGate { H, S, CX };
Matrix clifford_gate(int d, CliffordGate which);

// Label a = -1 encodes the computational basis (the "infinite" slope).
// For a in [d] the state is (1/sqrt(d)) sum_k omega^{-jk + a k(k-1)/2} |k>,
// the eigenvector of X Z^a with eigenvalue omega^j.
// d = 2 admits a in {0, -1} only.
Vector mub_state(int d, int a, int j);
Matrix mub_basis_matrix(int d, int a);  // column j = mub_state(d, a, j)

// Unitary basis change diagonalizing one bare site operator X^p Z^q,
// with the exact eigenvalue attached to each column.
struct SiteEigenbasis {
  Matrix basis;
  std::vector<Phase> eigenvalues;
};
SiteEigenbasis site_eigenbasis(int d, int p, int q);

}  // namespace whsim
