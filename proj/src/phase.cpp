#include "whsim/phase.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace whsim {

Phase::Phase(std::int64_t numerator, std::int64_t modulus) : mod(modulus) {
  if (modulus <= 0) throw std::invalid_argument("phase modulus must be positive");
  num = numerator % modulus;
  if (num < 0) num += modulus;
}

Phase Phase::operator*(const Phase& other) const {
  const std::int64_t m = lcm64(mod, other.mod);
  return Phase(num * (m / mod) + other.num * (m / other.mod), m);
}

Phase Phase::conj() const { return Phase(-num, mod); }

Phase Phase::pow(std::int64_t k) const { return Phase(num * k, mod); }

bool Phase::operator==(const Phase& other) const {
  const std::int64_t m = lcm64(mod, other.mod);
  return num * (m / mod) == other.num * (m / other.mod);
}

cd Phase::value() const {
  const double angle = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(mod);
  return cd(std::cos(angle), std::sin(angle));
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  return a / std::gcd(a, b) * b;
}

std::int64_t phase_modulus(const std::vector<int>& dims) {
  std::int64_t l = 1;
  bool has_qubit = false;
  for (int d : dims) {
    if (d < 2) throw std::invalid_argument("site dimension must be at least 2");
    l = lcm64(l, d);
    if (d == 2) has_qubit = true;
  }
  return has_qubit ? 4 * l : l;
}

}  // namespace whsim
