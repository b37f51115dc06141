#include "whsim/weyl.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "whsim/numtheory.hpp"

namespace whsim {

namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("empty dimension vector");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("site dimension must be >= 2");
}

}  // namespace

bool WeylString::exponents_zero() const {
  for (int e : xexp)
    if (e != 0) return false;
  for (int e : zexp)
    if (e != 0) return false;
  return true;
}

WeylString weyl_identity(const std::vector<int>& dims) {
  check_dims(dims);
  WeylString w;
  w.dims = dims;
  w.xexp.assign(dims.size(), 0);
  w.zexp.assign(dims.size(), 0);
  w.phase = Phase::one(phase_modulus(dims));
  return w;
}

WeylString weyl_site_op(const std::vector<int>& dims, int site, int p, int q) {
  WeylString w = weyl_identity(dims);
  if (site < 0 || site >= w.sites()) throw std::out_of_range("site index");
  w.xexp[site] = mod_pos(p, dims[site]);
  w.zexp[site] = mod_pos(q, dims[site]);
  return w;
}

WeylString weyl_generator(int d, int a) {
  return weyl_site_op({d}, 0, 1, a);
}

WeylString weyl_multiply(const WeylString& a, const WeylString& b) {
  if (a.dims != b.dims) throw std::invalid_argument("dimension mismatch");
  WeylString r;
  r.dims = a.dims;
  r.xexp.resize(a.dims.size());
  r.zexp.resize(a.dims.size());
  const std::int64_t L = a.phase.mod;
  Phase ph = a.phase * b.phase;
  for (int i = 0; i < a.sites(); ++i) {
    const int d = a.dims[i];
    // Z^{q} X^{p'} = omega^{q p'} X^{p'} Z^{q}
    ph = ph * Phase(static_cast<std::int64_t>(a.zexp[i]) * b.xexp[i] % d * (L / d), L);
    r.xexp[i] = (a.xexp[i] + b.xexp[i]) % d;
    r.zexp[i] = (a.zexp[i] + b.zexp[i]) % d;
  }
  r.phase = ph;
  return r;
}

WeylString weyl_adjoint(const WeylString& a) {
  WeylString r;
  r.dims = a.dims;
  r.xexp.resize(a.dims.size());
  r.zexp.resize(a.dims.size());
  const std::int64_t L = a.phase.mod;
  Phase ph = a.phase.conj();
  for (int i = 0; i < a.sites(); ++i) {
    const int d = a.dims[i];
    // (X^p Z^q)^dag = Z^{-q} X^{-p} = omega^{pq} X^{-p} Z^{-q}
    ph = ph * Phase(static_cast<std::int64_t>(a.xexp[i]) * a.zexp[i] % d * (L / d), L);
    r.xexp[i] = (d - a.xexp[i]) % d;
    r.zexp[i] = (d - a.zexp[i]) % d;
  }
  r.phase = ph;
  return r;
}

WeylString weyl_pow(const WeylString& a, int k) {
  if (k < 0) return weyl_pow(weyl_adjoint(a), -k);
  WeylString r = weyl_identity(a.dims);
  for (int i = 0; i < k; ++i) r = weyl_multiply(r, a);
  return r;
}

bool weyl_equal(const WeylString& a, const WeylString& b) {
  return a.dims == b.dims && a.xexp == b.xexp && a.zexp == b.zexp &&
         a.phase == b.phase;
}

WeylString projective(const WeylString& a) {
  WeylString r = a;
  r.phase = Phase::one(a.phase.mod);
  return r;
}

std::int64_t string_code(const WeylString& a) {
  std::int64_t code = 0;
  for (int i = 0; i < a.sites(); ++i) {
    const int d = a.dims[i];
    code = code * (static_cast<std::int64_t>(d) * d) +
           static_cast<std::int64_t>(a.xexp[i]) * d + a.zexp[i];
  }
  return code;
}

WeylString string_from_code(std::int64_t code, const std::vector<int>& dims) {
  WeylString w = weyl_identity(dims);
  for (int i = w.sites() - 1; i >= 0; --i) {
    const int d = dims[i];
    const std::int64_t site = code % (static_cast<std::int64_t>(d) * d);
    code /= static_cast<std::int64_t>(d) * d;
    w.xexp[i] = static_cast<int>(site / d);
    w.zexp[i] = static_cast<int>(site % d);
  }
  if (code != 0) throw std::out_of_range("string code out of range");
  return w;
}

std::vector<WeylString> enumerate_strings(const std::vector<int>& dims,
                                          bool reduced) {
  check_dims(dims);
  std::int64_t count = 1;
  for (int d : dims) {
    const std::int64_t per = reduced && d != 2
                                 ? static_cast<std::int64_t>(d) * (d - 1)
                                 : static_cast<std::int64_t>(d) * d;
    if (count > kEnumerationCap / per)
      throw std::length_error("enumeration cap exceeded");
    count *= per;
  }
  std::vector<WeylString> out;
  out.reserve(static_cast<std::size_t>(count));
  WeylString w = weyl_identity(dims);
  const int n = w.sites();
  std::vector<int> digit(n, 0);  // per-site code x*d + z
  while (true) {
    for (int i = 0; i < n; ++i) {
      w.xexp[i] = digit[i] / dims[i];
      w.zexp[i] = digit[i] % dims[i];
    }
    bool keep = true;
    if (reduced)
      for (int i = 0; i < n; ++i)
        if (dims[i] != 2 && w.xexp[i] == 0) keep = false;
    if (keep) out.push_back(w);
    int i = n - 1;
    while (i >= 0 && digit[i] == dims[i] * dims[i] - 1) digit[i--] = 0;
    if (i < 0) break;
    ++digit[i];
  }
  return out;
}

std::int64_t register_dim(const std::vector<int>& dims) {
  std::int64_t dim = 1;
  for (int d : dims) dim *= d;
  return dim;
}

std::int64_t weyl_shift_index(const WeylString& a, std::int64_t v) {
  // X acts as |k> -> |k+1>, so column index v maps to row index v + x.
  std::int64_t out = 0;
  std::int64_t rest = v;
  // decode big-endian: walk sites from last (least significant) upward
  std::vector<int> digits(a.sites());
  for (int i = a.sites() - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(rest % a.dims[i]);
    rest /= a.dims[i];
  }
  for (int i = 0; i < a.sites(); ++i) {
    out = out * a.dims[i] + (digits[i] + a.xexp[i]) % a.dims[i];
  }
  return out;
}

Phase weyl_coeff_phase(const WeylString& a, std::int64_t v) {
  const std::int64_t L = a.phase.mod;
  Phase ph = a.phase;
  std::int64_t rest = v;
  for (int i = a.sites() - 1; i >= 0; --i) {
    const int d = a.dims[i];
    const int k = static_cast<int>(rest % d);
    rest /= d;
    // Z^q |k> = omega^{qk} |k>
    ph = ph * Phase(static_cast<std::int64_t>(a.zexp[i]) * k % d * (L / d), L);
  }
  return ph;
}

cd weyl_coeff(const WeylString& a, std::int64_t v) {
  return weyl_coeff_phase(a, v).value();
}

Matrix weyl_matrix(const WeylString& a) {
  const std::int64_t dim = register_dim(a.dims);
  if (dim > kDenseDimCap) throw std::length_error("dense dimension cap exceeded");
  Matrix m = Matrix::Zero(dim, dim);
  for (std::int64_t v = 0; v < dim; ++v)
    m(weyl_shift_index(a, v), v) = weyl_coeff(a, v);
  return m;
}

Vector weyl_apply(const WeylString& a, const Vector& v) {
  const std::int64_t dim = register_dim(a.dims);
  if (v.size() != dim) throw std::invalid_argument("vector dimension mismatch");
  Vector out = Vector::Zero(dim);
  for (std::int64_t k = 0; k < dim; ++k)
    out(weyl_shift_index(a, k)) += weyl_coeff(a, k) * v(k);
  return out;
}

cd trace_with(const WeylString& a, const Matrix& rho) {
  const std::int64_t dim = register_dim(a.dims);
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("matrix dimension mismatch");
  // tr(W rho) = sum_v W(shift(v), v) rho(v, shift(v))
  cd acc = 0.0;
  for (std::int64_t v = 0; v < dim; ++v)
    acc += weyl_coeff(a, v) * rho(v, weyl_shift_index(a, v));
  return acc;
}

Phase commutation_phase(const WeylString& a, const WeylString& b) {
  // A B = c B A with c = omega^{sum_i (z_i x'_i - z'_i x_i)} over sites.
  if (a.dims != b.dims) throw std::invalid_argument("dimension mismatch");
  const std::int64_t L = a.phase.mod;
  Phase ph = Phase::one(L);
  for (int i = 0; i < a.sites(); ++i) {
    const int d = a.dims[i];
    const std::int64_t e =
        mod_pos(static_cast<std::int64_t>(a.zexp[i]) * b.xexp[i] -
                    static_cast<std::int64_t>(b.zexp[i]) * a.xexp[i],
                d);
    ph = ph * Phase(e * (L / d), L);
  }
  return ph;
}

CommutingPartition commuting_partition(int d, int n) {
  if (is_prime(d)) throw std::invalid_argument("d must be composite");
  if (n < 1) throw std::invalid_argument("n must be positive");
  const int q = d / smallest_prime_factor(d);
  std::vector<int> dims(n, d);
  CommutingPartition part;
  part.q = q;
  part.classes.resize(q);
  std::vector<std::set<std::int64_t>> seen(q);
  std::vector<int> a(n, 0);  // label vector of the cyclic group ⊗_i W_{a_i}
  while (true) {
    int cls = 0;
    for (int v : a) cls = (cls + v) % q;
    WeylString gen = weyl_identity(dims);
    for (int i = 0; i < n; ++i) {
      gen.xexp[i] = 1;
      gen.zexp[i] = a[i];
    }
    WeylString w = gen;
    for (int k = 1; k < d; ++k) {
      WeylString rep = projective(w);
      if (seen[cls].insert(string_code(rep)).second)
        part.classes[cls].push_back(rep);
      w = weyl_multiply(w, gen);
    }
    int i = n - 1;
    while (i >= 0 && a[i] == d - 1) a[i--] = 0;
    if (i < 0) break;
    ++a[i];
  }
  return part;
}

}  // namespace whsim
