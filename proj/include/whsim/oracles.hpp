#pragma once
#include <cstdint>
#include <vector>

#include "whsim/linalg.hpp"

namespace whsim {

struct SparseOperator {
  struct Entry {
    std::int64_t row;
    std::int64_t col;
    cd val;
  };
  std::int64_t dim = 0;
  std::vector<Entry> entries;
};

Matrix to_dense(const SparseOperator& a);

// Largest singular value. Dense eigensolver below the dense-norm cap,
// power iteration on A^dagger A (randomized restarts) above it.
double operator_norm(const SparseOperator& a, double tol = 1e-9);

enum class TwirlMethod { Brute, Explicit };

// M_tau = sum over the reduced set of W^{(x) tau}: slot +1 carries W, slot
// -1 carries W^dagger, with the exact cyclic-subgroup phases. Odd prime d
// sums the d(d-1) non-diagonal strings; d = 2 sums all four Hermitian
// Paulis (identity included), making the sign pattern immaterial.
// Brute multiplies out the tensor powers; Explicit uses the permutation
// form d * sum_{T(J) != kappa} |J + m^{-1}(kappa - T(J)) tau><J| away from
// d | m and d * sum_{T(J) = kappa} sum_{a=1}^{d-1} |J + a tau><J| at d | m,
// where kappa = <tau, 1>/2 and T(J) = <tau, J> mod d.
SparseOperator twirl_operator(int d, const std::vector<int>& tau, TwirlMethod method);

// d(d-1) when d divides m, d otherwise; 3 + (-1)^m for d = 2.
double twirl_norm_formula(int d, int m);

// Matrix-free norm of the explicit d | m form; handles register sizes far
// beyond what the triplet representation can hold.
double twirl_norm_power(int d, const std::vector<int>& tau, double tol = 1e-3);

// Tensor product of the per-prime sums for a square-free site pattern.
SparseOperator mixed_twirl_operator(const std::vector<int>& primes,
                                    const std::vector<int>& tau);
double mixed_twirl_norm(const std::vector<int>& primes, int m);
// Above divided by the set size prod p phi(p); phi(2) = 2, phi(p) = p - 1.
double mixed_twirl_norm_normalized(const std::vector<int>& primes, int m);

double chi_squared(const std::vector<double>& p, const std::vector<double>& q);

struct DeltaBound {
  double tight = 0.0;    // ((1+6e)^c - 1)^2 / (d-1)^n
  double relaxed = 0.0;  // (6ce exp(6ce))^2 / (d-1)^n
};
DeltaBound delta_bound(int d, int c, double eps, int n);

// (d-1)^n / (c eps^2); requires c < d.
double lower_bound_samples(int d, int c, double eps, int n);

// sum over I in [d]^m with <a,I> = 0 of omega^{<b,I>}; requires a_1 = 1.
cd constrained_fourier_sum(int d, const std::vector<int>& a,
                           const std::vector<int>& b);
// d^{m-1} when b is the b_1-multiple of a, else 0.
cd constrained_fourier_closed_form(int d, const std::vector<int>& a,
                                   const std::vector<int>& b);

}  // namespace whsim
