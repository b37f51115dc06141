#pragma once
#include <complex>
#include <cstdint>
#include <vector>

namespace whsim {

using cd = std::complex<double>;

// Exact root-of-unity phase: exp(2*pi*i * num / mod).  All phase bookkeeping
// in string multiplication stays in integer arithmetic; conversion to a
// floating-point complex number happens only at the matrix boundary.
struct Phase {
  std::int64_t num = 0;
  std::int64_t mod = 1;

  Phase() = default;
  Phase(std::int64_t numerator, std::int64_t modulus);
  static Phase one(std::int64_t modulus) { return Phase(0, modulus); }

  Phase operator*(const Phase& other) const;
  Phase conj() const;
  Phase pow(std::int64_t k) const;
  bool is_one() const { return num == 0; }
  bool operator==(const Phase& other) const;
  cd value() const;
};

std::int64_t lcm64(std::int64_t a, std::int64_t b);

// Common phase modulus for a list of site dimensions: lcm of the dimensions,
// doubled twice when a qubit site is present so that fourth roots of unity
// (needed for Hermitian qubit representatives) are expressible.
std::int64_t phase_modulus(const std::vector<int>& dims);

}  // namespace whsim
