#include "whsim/mimic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "whsim/clifford.hpp"
#include "whsim/moments.hpp"
#include "whsim/rng.hpp"

namespace whsim {

int mimicking_iteration_cap(int n, double eps) {
  if (n < 1 || eps <= 0.0) throw std::invalid_argument("n >= 1 and eps > 0 required");
  return static_cast<int>(std::floor(75.0 * n / (eps * eps))) + 2;
}

double mimicking_step_size(int n, int T) {
  if (n < 1 || T < 1) throw std::invalid_argument("n, T >= 1 required");
  return std::sqrt(static_cast<double>(n) / static_cast<double>(T));
}

std::optional<WeylString> violation_search(const AmplitudeTable& u,
                                           const Matrix& sigma, double eps) {
  if (register_dim(u.dims) != sigma.rows())
    throw std::invalid_argument("table/state dimension mismatch");
  const std::int64_t count = static_cast<std::int64_t>(u.u.size());
  for (std::int64_t code = 0; code < count; ++code) {
    if (u.u[code] < eps) continue;
    const WeylString w = string_from_code(code, u.dims);
    const double tws = std::abs(trace_with(w, sigma));
    if (std::abs(tws - u.u[code]) >= 2.0 * eps / 3.0) return w;
  }
  return std::nullopt;
}

Matrix gibbs_state(const std::vector<std::pair<int, Matrix>>& terms,
                   double beta, std::int64_t dim) {
  if (dim < 1 || dim > kDenseNormCap) throw std::length_error("register too large");
  if (terms.empty())
    return Matrix::Identity(dim, dim) / static_cast<double>(dim);
  Matrix h = Matrix::Zero(dim, dim);
  for (const auto& [sign, m] : terms) {
    if (m.rows() != dim || m.cols() != dim || !is_hermitian(m))
      throw std::invalid_argument("terms must be Hermitian and share the dim");
    h += static_cast<double>(sign) * m;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  // exp(-beta h) with the largest weight factored out for stability.
  const Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXd w(dim);
  const double lmin = lam.minCoeff();
  for (std::int64_t i = 0; i < dim; ++i) w(i) = std::exp(-beta * (lam(i) - lmin));
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

ZOracle exact_z_oracle(const std::vector<int>& dims, const Matrix& rho) {
  if (register_dim(dims) != rho.rows())
    throw std::invalid_argument("state dimension mismatch");
  return [rho](const WeylString& w, int, std::uint64_t) {
    return trace_with(w, rho);
  };
}

ZOracle sampled_z_oracle(const std::vector<int>& dims, const Matrix& rho,
                         std::int64_t n_shots) {
  const std::int64_t dim = register_dim(dims);
  if (dim != rho.rows()) throw std::invalid_argument("state dimension mismatch");
  if (n_shots < 1) throw std::invalid_argument("n_shots >= 1 required");
  return [dims, rho, dim, n_shots](const WeylString& w, int t, std::uint64_t seed) {
    // Product eigenbasis of W; outcome j carries the eigenvalue of W.
    std::vector<Matrix> bases(w.sites());
    std::vector<std::vector<cd>> vals(w.sites());
    for (int i = 0; i < w.sites(); ++i) {
      const SiteEigenbasis eb = site_eigenbasis(w.dims[i], w.xexp[i], w.zexp[i]);
      bases[i] = eb.basis;
      for (const Phase& p : eb.eigenvalues) vals[i].push_back(p.value());
    }
    const Matrix basis = kron_all(bases);
    const Eigen::VectorXd probs = (basis.adjoint() * rho * basis).diagonal().real();
    auto gen = derive_stream(seed, 0x0e5717a7eULL, t);
    // Multinomial draw as a chain of binomials over the outcome list.
    cd acc = 0.0;
    double rest = 1.0;
    std::int64_t left = n_shots;
    for (std::int64_t j = 0; j < dim && left > 0; ++j) {
      const double pj = std::max(probs(j), 0.0);
      std::int64_t cnt = 0;
      if (j == dim - 1 || rest <= pj) {
        cnt = left;
      } else {
        std::binomial_distribution<std::int64_t> bin(left, pj / rest);
        cnt = bin(gen);
      }
      if (cnt > 0) {
        const std::vector<int> digits = mixed_radix_decode(j, dims);
        cd lam = w.phase.value();
        for (int i = 0; i < w.sites(); ++i) lam *= vals[i][digits[i]];
        acc += static_cast<double>(cnt) * lam;
      }
      rest -= pj;
      left -= cnt;
    }
    return acc / static_cast<double>(n_shots);
  };
}

std::int64_t z_oracle_shots(double eps, int T) {
  if (eps <= 0.0 || T < 1) throw std::invalid_argument("eps > 0, T >= 1 required");
  return static_cast<std::int64_t>(
      std::ceil(2500.0 / (eps * eps) * std::log(400.0 * T)));
}

MimickingRun build_mimicking_state(const AmplitudeTable& u, const ZOracle& z,
                                   double eps, std::uint64_t seed) {
  const int n = static_cast<int>(u.dims.size());
  const std::int64_t dim = register_dim(u.dims);
  MimickingRun run;
  run.T = mimicking_iteration_cap(n, eps);
  run.beta = mimicking_step_size(n, run.T);
  std::vector<std::pair<int, Matrix>> terms;
  run.sigma = gibbs_state(terms, run.beta, dim);
  for (int t = 1; t <= run.T; ++t) {
    const auto w = violation_search(u, run.sigma, eps);
    if (!w) {
      run.terminated_early = true;
      return run;
    }
    const cd zt = z(*w, t, seed);
    const cd y = trace_with(*w, run.sigma);
    const cd diff = y - zt;
    const bool real_part = std::abs(diff.real()) >= std::abs(diff.imag());
    const Matrix mat = weyl_matrix(*w);
    Matrix quad;
    double yhat, zhat;
    if (real_part) {
      quad = 0.5 * (mat + mat.adjoint());
      yhat = y.real();
      zhat = zt.real();
    } else {
      quad = (mat - mat.adjoint()) / cd(0.0, 2.0);
      yhat = y.imag();
      zhat = zt.imag();
    }
    const int sign = (yhat - zhat) >= 0.0 ? 1 : -1;
    terms.emplace_back(sign, std::move(quad));
    run.trace.push_back({t, *w, sign, real_part, zt});
    run.sigma = gibbs_state(terms, run.beta, dim);
  }
  run.terminated_early = false;
  return run;
}

ExpectationTable recover_phases(const Matrix& sigma, const Matrix& rho,
                                const std::vector<int>& dims, double eps,
                                std::int64_t samples, std::uint64_t seed) {
  const std::int64_t dim = register_dim(dims);
  if (sigma.rows() != dim || rho.rows() != dim)
    throw std::invalid_argument("state dimension mismatch");
  const int c = copies_for(dims);

  // Amplitudes from rho^(x c); joint phases from sigma^(x c-1) (x) rho.
  const AmplitudeTable amp = amplitude_estimation(
      replicated_dense_spec(dims, rho), samples, mix_seed(seed, 0xa));
  DenseStateSpec hybrid;
  hybrid.dims = dims;
  hybrid.copies.assign(c, sigma);
  hybrid.copies.back() = rho;
  const OutcomeDistribution dist = outcome_distribution(hybrid);

  const bool uniform =
      std::all_of(dims.begin(), dims.end(), [&](int d) { return d == dims[0]; });
  std::vector<cd> zs;
  if (samples == 0) {
    if (uniform) {
      zs = all_string_moments(materialize(dist), dims[0],
                              static_cast<int>(dims.size()));
    }
  } else {
    const auto codes = sample_outcome_codes(dist, samples, mix_seed(seed, 0xb));
    if (uniform) {
      std::vector<double> hist(static_cast<std::size_t>(dist.outcome_count()), 0.0);
      for (std::int64_t code : codes)
        hist[static_cast<std::size_t>(code)] += 1.0 / static_cast<double>(samples);
      zs = all_string_moments(hist, dims[0], static_cast<int>(dims.size()));
    } else {
      const auto strings = enumerate_strings(dims);
      zs.resize(strings.size());
      for (std::size_t i = 0; i < strings.size(); ++i)
        zs[i] = reconstruct_moment(codes, strings[i]);
    }
  }

  ExpectationTable out;
  out.dims = dims;
  const auto strings = enumerate_strings(dims);
  out.value.resize(strings.size());
  out.provenance.resize(strings.size());
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const WeylString& w = strings[i];
    const cd tws = trace_with(w, sigma);
    if (std::abs(tws) >= eps / 3.0) {
      const cd zw = zs.empty() ? reconstruct_moment_exact(dist, w)
                               : zs[static_cast<std::size_t>(string_code(w))];
      out.value[i] = zw / std::pow(tws, c - 1);
      out.provenance[i] = Provenance::PhaseRecovered;
    } else {
      out.value[i] = amp.u[static_cast<std::size_t>(string_code(w))];
      out.provenance[i] = Provenance::AmplitudeOnly;
    }
  }
  return out;
}

}  // namespace whsim
