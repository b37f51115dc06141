#pragma once
#include <cstdint>
#include <vector>

#include "whsim/linalg.hpp"

namespace whsim {

// Entangled basis of c copies of a p-dimensional site, p | c:
//   |phi_{I,q}> = (1/sqrt(p)) sum_k omega^{kq} |(0,I) + k(1,...,1)>,
// I in [p]^{c-1}. Each X^a Z^b applied to every copy has the family as
// eigenvectors with eigenvalue omega^{b|I| - a q}; the divisibility p | c
// makes the eigenvalue depend on I only through s = |I| mod p.
Vector bell_vector(int p, int c, const std::vector<int>& I, int q);
// The square case c = d used by the d-copy protocol.
Vector bell_state(int d, const std::vector<int>& I, int q);

// Columns ordered by code(I)*p + q with I big-endian base p.
Matrix bell_basis_matrix(int p, int c);

// Pi_{s,q} = sum over |I| = s mod p of |phi_{I,q}><phi_{I,q}|, rank p^{c-2}.
Matrix coarse_projector(int p, int c, int s, int q);
std::int64_t coarse_rank(int p, int c);

// <phi_{I,q}| (A_1 (x) ... (x) A_c) |phi_{I,q}> without forming the p^c
// dimensional objects; O(p^2 c) per label.
cd bell_bracket(int p, const std::vector<Matrix>& ops,
                const std::vector<int>& I, int q);
// tr(Pi_{s,q} (A_1 (x) ... (x) A_c)) by summing brackets over the class.
cd coarse_bracket(int p, int c, const std::vector<Matrix>& ops, int s, int q);

}  // namespace whsim
