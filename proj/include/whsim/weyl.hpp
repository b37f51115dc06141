#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "whsim/linalg.hpp"
#include "whsim/phase.hpp"

namespace whsim {

// Scalar multiple of a product of per-site shift/boost powers,
// c * prod_i X_{d_i}^{x_i} Z_{d_i}^{z_i}, with c an exact root of unity.
// Exponents are kept reduced modulo the site dimension.
struct WeylString {
  std::vector<int> dims;
  std::vector<int> xexp;
  std::vector<int> zexp;
  Phase phase;

  int sites() const { return static_cast<int>(dims.size()); }
  bool exponents_zero() const;
};

WeylString weyl_identity(const std::vector<int>& dims);
// Identity everywhere except X^p Z^q at the given site.
WeylString weyl_site_op(const std::vector<int>& dims, int site, int p, int q);
// Single-site string X Z^a on dimension d (the cyclic-subgroup generator).
WeylString weyl_generator(int d, int a);

// Normal-form product: every reordering Z^q X^p -> X^p Z^q contributes
// omega^{pq} per site, tracked exactly in the phase.
WeylString weyl_multiply(const WeylString& a, const WeylString& b);
WeylString weyl_adjoint(const WeylString& a);
WeylString weyl_pow(const WeylString& a, int k);
bool weyl_equal(const WeylString& a, const WeylString& b);
// Same exponents, phase reset to one (the projective representative).
WeylString projective(const WeylString& a);

// Site-major code; per-site digit x*d + z, first site most significant.
std::int64_t string_code(const WeylString& a);
WeylString string_from_code(std::int64_t code, const std::vector<int>& dims);

// Projective strings (phase one) in increasing string-code order.
// reduced keeps, per site, only x != 0 for odd prime dimensions and all
// four operators (identity included) for qubit sites.
std::vector<WeylString> enumerate_strings(const std::vector<int>& dims,
                                          bool reduced = false);

std::int64_t register_dim(const std::vector<int>& dims);

// Monomial action on computational basis kets:
//   W |v> = weyl_coeff(W, v) |weyl_shift_index(W, v)>.
std::int64_t weyl_shift_index(const WeylString& a, std::int64_t v);
Phase weyl_coeff_phase(const WeylString& a, std::int64_t v);
cd weyl_coeff(const WeylString& a, std::int64_t v);

Matrix weyl_matrix(const WeylString& a);
Vector weyl_apply(const WeylString& a, const Vector& v);
cd trace_with(const WeylString& a, const Matrix& rho);

// Commutator scalar c with A B = c B A (both sides share exponents).
Phase commutation_phase(const WeylString& a, const WeylString& b);

// Partition of the n-site strings (tensor powers of X Z^{a_i} with a shared
// power) into d/p_min classes keyed by sum(a) mod d/p_min; within a class all
// group commutators are p_min-th powers' worth of phase, i.e. their numerator
// is divisible by d/p_min.
struct CommutingPartition {
  int q;  // class count, d / smallest prime factor
  std::vector<std::vector<WeylString>> classes;
};
CommutingPartition commuting_partition(int d, int n);

}  // namespace whsim
