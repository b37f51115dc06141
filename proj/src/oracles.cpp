#include "whsim/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whsim/numtheory.hpp"
#include "whsim/rng.hpp"
#include "whsim/weyl.hpp"

namespace whsim {

namespace {

std::int64_t pow_ll(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int check_tau(const std::vector<int>& tau) {
  if (tau.size() < 2 || tau.size() % 2 != 0)
    throw std::invalid_argument("sign pattern must have even length >= 2");
  for (int t : tau)
    if (t != 1 && t != -1) throw std::invalid_argument("signs must be +-1");
  return static_cast<int>(tau.size()) / 2;
}

// Tensor product of single-site strings into one multi-site string.
WeylString tensor_slots(const std::vector<WeylString>& slots, int d) {
  std::vector<int> dims(slots.size(), d);
  WeylString out = weyl_identity(dims);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    out.xexp[i] = slots[i].xexp[0];
    out.zexp[i] = slots[i].zexp[0];
    out.phase = out.phase * slots[i].phase;
  }
  return out;
}

void add_string(Matrix& acc, const WeylString& w) {
  const std::int64_t dim = acc.rows();
  for (std::int64_t v = 0; v < dim; ++v)
    acc(weyl_shift_index(w, v), v) += weyl_coeff(w, v);
}

SparseOperator sparsify(const Matrix& m) {
  SparseOperator out;
  out.dim = m.rows();
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > 1e-14) out.entries.push_back({r, c, m(r, c)});
  return out;
}

SparseOperator twirl_brute(int d, const std::vector<int>& tau) {
  const int m = check_tau(tau);
  const std::int64_t dim = pow_ll(d, 2 * m);
  if (dim > kDenseNormCap)
    throw std::length_error("brute twirl limited to dense-size registers");
  Matrix acc = Matrix::Zero(dim, dim);
  if (d == 2) {
    // All four Hermitian Paulis; the adjoint slots change nothing.
    const std::int64_t L = phase_modulus({2});
    for (int code = 0; code < 4; ++code) {
      WeylString p = weyl_site_op({2}, 0, code / 2, code % 2);
      if (code == 3) p.phase = Phase(L / 4, L);  // Y = i XZ
      add_string(acc, tensor_slots(std::vector<WeylString>(2 * m, p), 2));
    }
    return sparsify(acc);
  }
  for (int alpha = 0; alpha < d; ++alpha) {
    for (int k = 1; k < d; ++k) {
      const WeylString w = weyl_pow(weyl_generator(d, alpha), k);
      const WeylString wd = weyl_adjoint(w);
      std::vector<WeylString> slots(2 * m);
      for (int i = 0; i < 2 * m; ++i) slots[i] = tau[i] == 1 ? w : wd;
      add_string(acc, tensor_slots(slots, d));
    }
  }
  return sparsify(acc);
}

SparseOperator twirl_explicit(int d, const std::vector<int>& tau) {
  const int m = check_tau(tau);
  if (d == 2) return twirl_brute(2, tau);
  if (tau[0] == -1) {
    // M_{-tau} = M_tau (reindex W <-> W^dagger), so flip to get tau_1 = +1.
    std::vector<int> neg(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) neg[i] = -tau[i];
    return twirl_explicit(d, neg);
  }
  const std::int64_t dim = pow_ll(d, 2 * m);
  if (dim > kSparseNnzCap) throw std::length_error("sparse cap exceeded");

  int kappa = 0;  // <tau, 1>/2 mod d
  for (int t : tau) kappa += t;
  kappa = mod_pos(kappa / 2, d);

  std::vector<std::int64_t> stride(2 * m);
  std::int64_t acc = 1;
  for (int i = 2 * m - 1; i >= 0; --i) {
    stride[i] = acc;
    acc *= d;
  }

  SparseOperator out;
  out.dim = dim;
  std::vector<int> J(2 * m, 0);
  const bool multiple = m % d == 0;
  const int minv = multiple ? 0 : mod_inverse(m % d, d);
  while (true) {
    int tj = 0;
    for (int i = 0; i < 2 * m; ++i) tj += tau[i] * J[i];
    tj = mod_pos(tj, d);
    std::int64_t col = 0;
    for (int i = 0; i < 2 * m; ++i) col += J[i] * stride[i];
    if (multiple) {
      if (tj == kappa) {
        for (int a = 1; a < d; ++a) {
          std::int64_t row = 0;
          for (int i = 0; i < 2 * m; ++i)
            row += mod_pos(J[i] + a * tau[i], d) * stride[i];
          out.entries.push_back({row, col, cd(static_cast<double>(d), 0.0)});
        }
      }
    } else if (tj != kappa) {
      const int shift = static_cast<int>(
          static_cast<std::int64_t>(minv) * mod_pos(kappa - tj, d) % d);
      std::int64_t row = 0;
      for (int i = 0; i < 2 * m; ++i)
        row += mod_pos(J[i] + shift * tau[i], d) * stride[i];
      out.entries.push_back({row, col, cd(static_cast<double>(d), 0.0)});
    }
    int i = 2 * m - 1;
    while (i >= 0 && J[i] == d - 1) J[i--] = 0;
    if (i < 0) break;
    ++J[i];
  }
  return out;
}

}  // namespace

SparseOperator twirl_operator(int d, const std::vector<int>& tau, TwirlMethod method) {
  if (!is_prime(d)) throw std::invalid_argument("dimension must be prime");
  return method == TwirlMethod::Brute ? twirl_brute(d, tau) : twirl_explicit(d, tau);
}

double twirl_norm_formula(int d, int m) {
  if (!is_prime(d) || m < 1) throw std::invalid_argument("prime d and m >= 1 required");
  if (d == 2) return 3.0 + (m % 2 == 0 ? 1.0 : -1.0);
  return m % d == 0 ? static_cast<double>(d) * (d - 1) : static_cast<double>(d);
}

double twirl_norm_power(int d, const std::vector<int>& tau, double tol) {
  const int m = check_tau(tau);
  if (!is_prime(d) || d == 2) throw std::invalid_argument("odd prime required");
  if (m % d != 0)
    throw std::invalid_argument("matrix-free path covers the d | m structure");
  std::vector<int> t = tau;
  if (t[0] == -1)
    for (auto& v : t) v = -v;

  const int slots = 2 * m;
  const std::int64_t dim = pow_ll(d, slots);
  int kappa = 0;
  for (int v : t) kappa += v;
  kappa = mod_pos(kappa / 2, d);

  // Odometer sweep filling T(J) mod d and the jump table index(J) -> index(J + tau).
  std::vector<std::int64_t> stride(slots);
  std::int64_t acc = 1;
  for (int i = slots - 1; i >= 0; --i) {
    stride[i] = acc;
    acc *= d;
  }
  std::vector<std::uint8_t> tmod(static_cast<std::size_t>(dim));
  std::vector<std::int32_t> jump(static_cast<std::size_t>(dim));
  {
    std::vector<int> J(slots, 0);
    std::int64_t tsum = 0;
    std::int64_t sh = 0;  // index of J + tau
    for (int i = 0; i < slots; ++i) sh += mod_pos(t[i], d) * stride[i];
    for (std::int64_t v = 0;; ++v) {
      tmod[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(mod_pos(tsum, d));
      jump[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(sh);
      int i = slots - 1;
      while (i >= 0 && J[i] == d - 1) {
        tsum -= t[i] * (d - 1);
        sh += (mod_pos(t[i], d) - mod_pos(d - 1 + t[i], d)) * stride[i];
        J[i--] = 0;
      }
      if (i < 0) break;
      ++J[i];
      tsum += t[i];
      sh += (mod_pos(J[i] + t[i], d) - mod_pos(J[i] - 1 + t[i], d)) * stride[i];
    }
  }

  // Power iteration on A^dagger A with A = d sum_{T(J)=kappa, a} |J+a tau><J|.
  // All entries are real, so real vectors suffice.
  std::vector<double> x(static_cast<std::size_t>(dim)), y(static_cast<std::size_t>(dim));
  auto gen = derive_stream(0x7151e7ULL, d, m);
  const double dd = static_cast<double>(d);
  for (int restart = 0; restart < 3; ++restart) {
    for (auto& v : x) v = uniform_double(gen) - 0.5;
    double nx = 0.0;
    for (double v : x) nx += v * v;
    nx = std::sqrt(nx);
    for (auto& v : x) v /= nx;
    double prev = -1.0;
    for (int it = 0; it < 200; ++it) {
      std::fill(y.begin(), y.end(), 0.0);
      for (std::int64_t v = 0; v < dim; ++v) {
        if (tmod[static_cast<std::size_t>(v)] != kappa) continue;
        const double val = dd * x[static_cast<std::size_t>(v)];
        std::int64_t idx = v;
        for (int a = 1; a < d; ++a) {
          idx = jump[static_cast<std::size_t>(idx)];
          y[static_cast<std::size_t>(idx)] += val;
        }
      }
      double lam = 0.0, nz = 0.0;
      for (std::int64_t v = 0; v < dim; ++v) {
        double zv = 0.0;
        if (tmod[static_cast<std::size_t>(v)] == kappa) {
          std::int64_t idx = v;
          double acc2 = 0.0;
          for (int a = 1; a < d; ++a) {
            idx = jump[static_cast<std::size_t>(idx)];
            acc2 += y[static_cast<std::size_t>(idx)];
          }
          zv = dd * acc2;
        }
        lam += x[static_cast<std::size_t>(v)] * zv;
        nz += zv * zv;
        x[static_cast<std::size_t>(v)] = zv;  // reused as z; renormalized below
      }
      nz = std::sqrt(nz);
      if (nz == 0.0) break;
      for (auto& v : x) v /= nz;
      const double cur = std::sqrt(std::max(lam, 0.0));
      if (prev >= 0.0 && std::abs(cur - prev) <= tol * std::max(cur, 1.0)) return cur;
      prev = cur;
    }
  }
  throw std::runtime_error("power iteration did not converge");
}

namespace {

int norm_phi(int p) { return p == 2 ? 2 : p - 1; }

void check_pattern(const std::vector<int>& primes) {
  if (primes.empty()) throw std::invalid_argument("empty site pattern");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw std::invalid_argument("pattern entries must be prime");
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      if (primes[i] == primes[j])
        throw std::invalid_argument("pattern must be square-free");
  }
}

}  // namespace

SparseOperator mixed_twirl_operator(const std::vector<int>& primes,
                                    const std::vector<int>& tau) {
  check_pattern(primes);
  check_tau(tau);
  Matrix acc = Matrix::Identity(1, 1);
  for (int p : primes) acc = kron(acc, to_dense(twirl_operator(p, tau, TwirlMethod::Brute)));
  return sparsify(acc);
}

double mixed_twirl_norm(const std::vector<int>& primes, int m) {
  check_pattern(primes);
  if (m < 1) throw std::invalid_argument("m >= 1 required");
  double out = 1.0;
  for (int p : primes) {
    out *= p;
    if (m % p == 0) out *= norm_phi(p);
  }
  return out;
}

double mixed_twirl_norm_normalized(const std::vector<int>& primes, int m) {
  double size = 1.0;
  for (int p : primes) size *= static_cast<double>(p) * norm_phi(p);
  return mixed_twirl_norm(primes, m) / size;
}

double chi_squared(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("support mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = p[i] - q[i];
    if (q[i] <= 0.0) {
      if (std::abs(p[i]) > 1e-15) throw std::domain_error("p charges a q-null event");
      continue;
    }
    acc += diff * diff / q[i];
  }
  return acc;
}

DeltaBound delta_bound(int d, int c, double eps, int n) {
  if (c < 1 || eps <= 0.0) throw std::invalid_argument("c >= 1 and eps > 0 required");
  const double denom = std::pow(static_cast<double>(d - 1), n);
  DeltaBound out;
  const double grow = std::pow(1.0 + 6.0 * eps, c) - 1.0;
  out.tight = grow * grow / denom;
  const double r = 6.0 * c * eps * std::exp(6.0 * c * eps);
  out.relaxed = r * r / denom;
  return out;
}

double lower_bound_samples(int d, int c, double eps, int n) {
  if (c >= d) throw std::invalid_argument("bound requires fewer copies than the degree");
  if (c < 1 || eps <= 0.0) throw std::invalid_argument("c >= 1 and eps > 0 required");
  return std::pow(static_cast<double>(d - 1), n) /
         (static_cast<double>(c) * eps * eps);
}

cd constrained_fourier_sum(int d, const std::vector<int>& a,
                           const std::vector<int>& b) {
  if (!is_prime(d)) throw std::invalid_argument("dimension must be prime");
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("length mismatch");
  if (mod_pos(a[0], d) != 1) throw std::invalid_argument("first coefficient must be 1");
  const int m = static_cast<int>(a.size());
  std::int64_t total = 1;
  for (int i = 0; i < m; ++i) {
    total *= d;
    if (total > kEnumerationCap) throw std::length_error("enumeration cap exceeded");
  }
  cd acc = 0.0;
  std::vector<int> I(m, 0);
  while (true) {
    std::int64_t con = 0, ph = 0;
    for (int i = 0; i < m; ++i) {
      con += static_cast<std::int64_t>(a[i]) * I[i];
      ph += static_cast<std::int64_t>(b[i]) * I[i];
    }
    if (mod_pos(con, d) == 0) acc += Phase(mod_pos(ph, d), d).value();
    int i = m - 1;
    while (i >= 0 && I[i] == d - 1) I[i--] = 0;
    if (i < 0) break;
    ++I[i];
  }
  return acc;
}

cd constrained_fourier_closed_form(int d, const std::vector<int>& a,
                                   const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("length mismatch");
  const int m = static_cast<int>(a.size());
  for (int i = 0; i < m; ++i)
    if (mod_pos(b[i] - static_cast<std::int64_t>(b[0]) * a[i], d) != 0) return 0.0;
  return cd(std::pow(static_cast<double>(d), m - 1), 0.0);
}

}  // namespace whsim
