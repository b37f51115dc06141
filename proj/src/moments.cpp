#include "whsim/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whsim/numtheory.hpp"

namespace whsim {

cd outcome_character(const WeylString& w, std::int64_t code) {
  const int n = w.sites();
  std::int64_t L = 1;
  for (int p : w.dims) L = lcm64(L, p);
  std::int64_t num = 0;
  for (int i = n - 1; i >= 0; --i) {
    const int p = w.dims[i];
    const std::int64_t digit = code % (static_cast<std::int64_t>(p) * p);
    code /= static_cast<std::int64_t>(p) * p;
    const int s = static_cast<int>(digit / p);
    const int q = static_cast<int>(digit % p);
    const int e = mod_pos(static_cast<std::int64_t>(w.zexp[i]) * s -
                              static_cast<std::int64_t>(w.xexp[i]) * q,
                          p);
    num += e * (L / p);
  }
  return Phase(num % L, L).value();
}

cd reconstruct_moment(const std::vector<std::int64_t>& codes, const WeylString& w) {
  if (codes.empty()) throw std::invalid_argument("no samples");
  cd acc = 0.0;
  for (std::int64_t code : codes) acc += outcome_character(w, code);
  return acc / static_cast<double>(codes.size());
}

cd reconstruct_moment_exact(const OutcomeDistribution& dist, const WeylString& w) {
  if (w.dims != dist.dims) throw std::invalid_argument("dimension mismatch");
  switch (dist.rep) {
    case OutcomeDistribution::Rep::Spiked: {
      // E[char] = delta_identity + spike * [W' ~ W-adjoint] + conj(spike) * [W' ~ W]
      const int d = dist.dims[0];
      if (w.exponents_zero()) return 1.0;
      bool same = true, adj = true;
      for (int i = 0; i < w.sites(); ++i) {
        if (w.xexp[i] != dist.sa[i] || w.zexp[i] != dist.sb[i]) same = false;
        if ((w.xexp[i] + dist.sa[i]) % d != 0 || (w.zexp[i] + dist.sb[i]) % d != 0)
          adj = false;
      }
      cd acc = 0.0;
      if (adj) acc += dist.spike;
      if (same) acc += std::conj(dist.spike);
      return acc;
    }
    case OutcomeDistribution::Rep::ClusterProduct: {
      // Independent clusters: the character expectation factorizes.
      cd acc = 1.0;
      for (std::size_t i = 0; i < dist.dims.size(); ++i) {
        const int p = dist.dims[i];
        cd site = 0.0;
        for (int s = 0; s < p; ++s)
          for (int q = 0; q < p; ++q) {
            const int e = mod_pos(static_cast<std::int64_t>(w.zexp[i]) * s -
                                      static_cast<std::int64_t>(w.xexp[i]) * q,
                                  p);
            site += dist.cluster[i][static_cast<std::size_t>(s) * p + q] *
                    Phase(e, p).value();
          }
        acc *= site;
      }
      return acc;
    }
    case OutcomeDistribution::Rep::Dense: {
      cd acc = 0.0;
      for (std::int64_t code = 0; code < dist.outcome_count(); ++code)
        acc += dist.probs[static_cast<std::size_t>(code)] * outcome_character(w, code);
      return acc;
    }
  }
  throw std::logic_error("bad representation");
}

namespace {

// In-place DFT with kernel omega^{+jk} along every base-d axis of a length
// d^m array, most-significant axis first.
void tensor_dft(std::vector<cd>& a, int d, int m) {
  const std::int64_t total = static_cast<std::int64_t>(a.size());
  if (d == 3) {
    const double h = std::sqrt(3.0) / 2.0;
    std::int64_t stride = total / 3;
    for (int axis = 0; axis < m; ++axis, stride /= 3) {
      for (std::int64_t block = 0; block < total; block += 3 * stride) {
        for (std::int64_t off = 0; off < stride; ++off) {
          cd* x0 = &a[static_cast<std::size_t>(block + off)];
          cd* x1 = x0 + stride;
          cd* x2 = x1 + stride;
          const cd t1 = *x1 + *x2;
          const cd u = *x0 - 0.5 * t1;
          const cd diff = *x1 - *x2;
          const cd v(h * diff.imag() * -1.0, h * diff.real());  // i*h*diff
          *x0 += t1;
          *x1 = u + v;
          *x2 = u - v;
        }
      }
    }
    return;
  }
  if (d == 2) {
    std::int64_t stride = total / 2;
    for (int axis = 0; axis < m; ++axis, stride /= 2) {
      for (std::int64_t block = 0; block < total; block += 2 * stride) {
        for (std::int64_t off = 0; off < stride; ++off) {
          cd* x0 = &a[static_cast<std::size_t>(block + off)];
          cd* x1 = x0 + stride;
          const cd t = *x1;
          *x1 = *x0 - t;
          *x0 += t;
        }
      }
    }
    return;
  }
  std::vector<cd> om(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) om[static_cast<std::size_t>(k)] = Phase(k, d).value();
  std::vector<cd> buf(static_cast<std::size_t>(d));
  std::int64_t stride = total / d;
  for (int axis = 0; axis < m; ++axis, stride /= d) {
    for (std::int64_t block = 0; block < total; block += static_cast<std::int64_t>(d) * stride) {
      for (std::int64_t off = 0; off < stride; ++off) {
        for (int k = 0; k < d; ++k)
          buf[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(block + k * stride + off)];
        for (int j = 0; j < d; ++j) {
          cd acc = 0.0;
          for (int k = 0; k < d; ++k)
            acc += om[static_cast<std::size_t>(j * k % d)] * buf[static_cast<std::size_t>(k)];
          a[static_cast<std::size_t>(block + j * stride + off)] = acc;
        }
      }
    }
  }
}

}  // namespace

std::vector<cd> all_string_moments(const std::vector<double>& table, int d, int n) {
  std::int64_t total = 1;
  for (int i = 0; i < 2 * n; ++i) total *= d;
  if (static_cast<std::int64_t>(table.size()) != total)
    throw std::invalid_argument("table size mismatch");
  std::vector<cd> f(table.begin(), table.end());
  tensor_dft(f, d, 2 * n);
  // Transform index has digits (b_i, (-a_i) mod d) per site; reindex so the
  // result is addressed by string code digits (a_i, b_i).
  std::vector<cd> out(static_cast<std::size_t>(total));
  std::vector<int> dig(2 * n);
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rest = code;
    for (int i = 2 * n - 1; i >= 0; --i) {
      dig[i] = static_cast<int>(rest % d);
      rest /= d;
    }
    std::int64_t src = 0;
    for (int i = 0; i < n; ++i) {
      const int a = dig[2 * i];
      const int b = dig[2 * i + 1];
      src = (src * d + b) * d + (d - a) % d;
    }
    out[static_cast<std::size_t>(code)] = f[static_cast<std::size_t>(src)];
  }
  return out;
}

double max_abs_deviation(const std::vector<cd>& moments,
                         const std::vector<std::pair<std::int64_t, cd>>& targets) {
  double worst = 0.0;
  for (std::size_t i = 0; i < moments.size(); ++i) {
    cd target = 0.0;
    for (const auto& [code, value] : targets)
      if (code == static_cast<std::int64_t>(i)) {
        target = value;
        break;
      }
    worst = std::max(worst, std::abs(moments[i] - target));
  }
  return worst;
}

}  // namespace whsim
