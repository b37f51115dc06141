#include "whsim/wilson.hpp"

#include <cmath>
#include <stdexcept>

namespace whsim {

std::pair<double, double> wilson_interval(std::int64_t s, std::int64_t t, double z) {
  if (t < 1 || s < 0 || s > t) throw std::invalid_argument("need 0 <= s <= t, t >= 1");
  if (z <= 0.0) throw std::invalid_argument("z must be positive");
  const double td = static_cast<double>(t);
  const double phat = static_cast<double>(s) / td;
  const double z2 = z * z;
  const double denom = td + z2;
  const double center = (td * phat + z2 / 2.0) / denom;
  const double half =
      z * std::sqrt(td) / denom * std::sqrt(phat * (1.0 - phat) + z2 / (4.0 * td));
  double lo = center - half, hi = center + half;
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  return {lo, hi};
}

double normal_quantile(double p) {
  if (p <= 0.0 || p >= 1.0) throw std::domain_error("quantile argument in (0,1)");
  // Acklam's rational approximation, |relative error| < 1.15e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) return -normal_quantile(1.0 - p);
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double z_for_alpha(double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0) throw std::domain_error("alpha in (0,1)");
  if (alpha == 0.1) return 1.6449;
  return normal_quantile(1.0 - alpha / 2.0);
}

WilsonDecision certify_at_N(const SuccessOracle& oracle, std::int64_t n_samples,
                            const WilsonConfig& cfg, std::uint64_t seed) {
  WilsonDecision dec;
  const std::int64_t batch = cfg.batch > 0 ? cfg.batch : 1;
  for (std::int64_t trial = 0; trial < cfg.t_max; ++trial) {
    if (oracle(n_samples, trial, seed)) ++dec.s;
    ++dec.t;
    // The interval is recomputed between batches (and at exhaustion), not
    // after every trial: continuous monitoring would inflate the early-stop
    // error rate well past what the interval's nominal level suggests.
    if (dec.t % batch != 0 && dec.t != cfg.t_max) continue;
    const auto [lo, hi] = wilson_interval(dec.s, dec.t, cfg.z);
    dec.w_minus = lo;
    dec.w_plus = hi;
    if (lo >= cfg.p_star) {
      dec.verdict = WilsonDecision::Verdict::Accept;
      return dec;
    }
    if (hi < cfg.p_star) {
      dec.verdict = WilsonDecision::Verdict::EarlyReject;
      return dec;
    }
  }
  dec.verdict = WilsonDecision::Verdict::Undecided;
  return dec;
}

NminResult nmin_search(const SuccessOracle& oracle, const WilsonConfig& cfg,
                       std::uint64_t seed) {
  if (cfg.growth <= 1.0) throw std::invalid_argument("growth factor must exceed 1");
  NminResult result;
  std::int64_t n = cfg.n0;
  std::int64_t last_fail = 0;
  bool ever_failed = false;
  while (true) {
    WilsonDecision dec = certify_at_N(oracle, n, cfg, seed);
    result.trajectory.emplace_back(n, dec.verdict);
    result.total_trials += dec.t;
    if (dec.verdict == WilsonDecision::Verdict::Accept) {
      result.n_min = n;
      result.evidence = dec;
      break;
    }
    ever_failed = true;
    last_fail = n;
    if (n >= cfg.n_cap)
      throw std::runtime_error("no accepted sample size at or below the ceiling");
    n = std::max(n + 1, static_cast<std::int64_t>(
                            std::floor(cfg.growth * static_cast<double>(n))));
    if (n > cfg.n_cap) n = cfg.n_cap;
  }
  if (!ever_failed) return result;  // first probe accepted; nothing to refine

  std::int64_t lo = last_fail, hi = result.n_min;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    WilsonDecision dec = certify_at_N(oracle, mid, cfg, seed);
    result.trajectory.emplace_back(mid, dec.verdict);
    result.total_trials += dec.t;
    if (dec.verdict == WilsonDecision::Verdict::Accept) {
      hi = mid;
      result.evidence = dec;
    } else {
      lo = mid;
    }
  }
  result.n_min = hi;
  return result;
}

std::int64_t empirical_nmin(const SuccessOracle& oracle,
                            const std::vector<std::int64_t>& grid, std::int64_t t,
                            double p_star, std::uint64_t seed) {
  if (t < 1) throw std::invalid_argument("trial count must be positive");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (grid[i] >= grid[i + 1]) throw std::invalid_argument("grid must ascend");
  for (std::int64_t n : grid) {
    std::int64_t s = 0;
    for (std::int64_t trial = 0; trial < t; ++trial)
      if (oracle(n, trial, seed)) ++s;
    if (static_cast<double>(s) >= p_star * static_cast<double>(t)) return n;
  }
  throw std::runtime_error("no grid point reached the target success rate");
}

}  // namespace whsim
