#pragma once
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace whsim {

inline int mod_pos(std::int64_t x, int m) {
  std::int64_t r = x % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; static_cast<std::int64_t>(p) * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// Inverse of a modulo prime m via Fermat's little theorem.
inline int mod_inverse(int a, int m) {
  a = mod_pos(a, m);
  if (a == 0) throw std::invalid_argument("mod_inverse of zero");
  std::int64_t result = 1, base = a;
  for (int e = m - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % m;
    base = base * base % m;
  }
  return static_cast<int>(result);
}

inline int smallest_prime_factor(int n) {
  if (n < 2) throw std::invalid_argument("no prime factor below 2");
  for (int p = 2; static_cast<std::int64_t>(p) * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

// Ascending prime factors; throws unless n is square-free.
inline std::vector<int> square_free_factorization(int n) {
  std::vector<int> out;
  for (int p = 2; n > 1; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) throw std::invalid_argument("not square-free");
    out.push_back(p);
  }
  return out;
}

}  // namespace whsim
