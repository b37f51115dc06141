// Release gate: one line per criterion, nonzero exit when any of them fails.
// Tolerances are pinned here on purpose; loosening them is a release decision,
// not a code style question.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "whsim/bell.hpp"
#include "whsim/distribution.hpp"
#include "whsim/experiment.hpp"
#include "whsim/mimic.hpp"
#include "whsim/moments.hpp"
#include "whsim/oracles.hpp"
#include "whsim/protocols.hpp"
#include "whsim/rng.hpp"
#include "whsim/transpile.hpp"
#include "whsim/weyl.hpp"
#include "whsim/wilson.hpp"

using namespace whsim;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Matrix random_density(int dim, std::mt19937_64& gen) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      g(r, c) = cd(2.0 * uniform_double(gen) - 1.0, 2.0 * uniform_double(gen) - 1.0);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

std::vector<int> random_sign_pattern(int len, std::mt19937_64& gen) {
  std::vector<int> tau(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i)
    tau[static_cast<std::size_t>(i)] = uniform_index(gen, 2) == 0 ? 1 : -1;
  return tau;
}

// --- criterion 1: norm of the signed tensor-power sum over the reduced set --

Outcome criterion_norm_ladder() {
  Outcome out;
  const auto t0 = Clock::now();
  const double want3[] = {3.0, 3.0, 6.0};
  for (int m = 1; m <= 3; ++m) {
    for (unsigned bits = 0; bits < (1u << (2 * m)); ++bits) {
      std::vector<int> tau(static_cast<std::size_t>(2 * m));
      for (int i = 0; i < 2 * m; ++i)
        tau[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? -1 : 1;
      const double norm =
          spectral_norm_dense(to_dense(twirl_operator(3, tau, TwirlMethod::Explicit)));
      out.require(std::abs(norm - want3[m - 1]) <= 1e-9,
                  "d=3 m=" + std::to_string(m) + " norm " + fmt(norm));
      if (!out.ok) return out;
    }
  }
  auto gen = derive_stream(0xacc1);
  for (int m = 1; m <= 2; ++m) {
    for (int rep = 0; rep < 8; ++rep) {
      const auto tau = random_sign_pattern(2 * m, gen);
      const double norm =
          spectral_norm_dense(to_dense(twirl_operator(5, tau, TwirlMethod::Explicit)));
      out.require(std::abs(norm - 5.0) <= 1e-6,
                  "d=5 m=" + std::to_string(m) + " norm " + fmt(norm));
    }
  }
  const double big = twirl_norm_power(5, std::vector<int>(10, 1), 1e-3);
  out.require(std::abs(big - 20.0) <= 0.02, "d=5 m=5 norm " + fmt(big));
  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();
  out.require(secs <= 300.0, "runtime " + fmt(secs) + "s over budget");
  out.note += (out.note.empty() ? "" : "; ") + fmt(secs) + "s";
  return out;
}

// --- criterion 2: qubit sums -------------------------------------------------

Outcome criterion_qubit_norms() {
  Outcome out;
  for (int m = 1; m <= 2; ++m) {
    const double want = m % 2 == 1 ? 2.0 : 4.0;
    for (unsigned bits = 0; bits < (1u << (2 * m)); ++bits) {
      std::vector<int> tau(static_cast<std::size_t>(2 * m));
      for (int i = 0; i < 2 * m; ++i)
        tau[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? -1 : 1;
      const double norm = operator_norm(twirl_operator(2, tau, TwirlMethod::Brute));
      out.require(std::abs(norm - want) <= 1e-9,
                  "m=" + std::to_string(m) + " norm " + fmt(norm));
    }
  }
  return out;
}

// --- criterion 3: entangled-basis eigenvalue laws ---------------------------

Outcome criterion_bell_eigen() {
  Outcome out;
  const auto check_label = [&](int d, const std::vector<int>& I, int q) {
    const Vector v = bell_state(d, I, q);
    int s = 0;
    for (int x : I) s = (s + x) % d;
    const std::vector<int> dims(static_cast<std::size_t>(d), d);
    WeylString xs = weyl_identity(dims), zs = weyl_identity(dims);
    for (int j = 0; j < d; ++j) {
      xs.xexp[static_cast<std::size_t>(j)] = 1;
      zs.zexp[static_cast<std::size_t>(j)] = 1;
    }
    const double rx =
        (weyl_apply(xs, v) - Phase((d - q) % d, d).value() * v).cwiseAbs().maxCoeff();
    const double rz =
        (weyl_apply(zs, v) - Phase(s, d).value() * v).cwiseAbs().maxCoeff();
    out.require(rx <= 1e-10, "shift residual " + fmt(rx));
    out.require(rz <= 1e-10, "boost residual " + fmt(rz));
  };
  for (std::int64_t icode = 0; icode < 9; ++icode)
    for (int q = 0; q < 3; ++q) {
      std::vector<int> I{static_cast<int>(icode / 3), static_cast<int>(icode % 3)};
      check_label(3, I, q);
    }
  auto gen = derive_stream(0xacc3);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<int> I(4);
    for (int& x : I) x = static_cast<int>(uniform_index(gen, 5));
    check_label(5, I, static_cast<int>(uniform_index(gen, 5)));
    if (!out.ok) break;
  }
  return out;
}

// --- criterion 4: estimator mean equals the c-th moment power ---------------

Outcome criterion_moment_identity() {
  Outcome out;
  auto gen = derive_stream(0xacc4);
  for (int n = 1; n <= 2; ++n) {
    const std::vector<int> dims(static_cast<std::size_t>(n), 3);
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix rho = random_density(n == 1 ? 3 : 9, gen);
      const auto dist = outcome_distribution_dense(replicated_dense_spec(dims, rho));
      for (const WeylString& w : enumerate_strings(dims)) {
        const cd lhs = reconstruct_moment_exact(dist, w);
        const cd rhs = std::pow(trace_with(w, rho), 3);
        out.require(std::abs(lhs - rhs) <= 1e-10,
                    "d=3 n=" + std::to_string(n) + " dev " + fmt(std::abs(lhs - rhs)));
        if (!out.ok) return out;
      }
    }
  }
  // mixed pattern (2,3): one qubit site and one qutrit site, six copies
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix r2 = random_density(2, gen);
    const Matrix r3 = random_density(3, gen);
    const auto dist = outcome_distribution_product(
        replicated_product_spec({2, 3}, {r2, r3}));
    for (const WeylString& w : enumerate_strings({2, 3})) {
      const cd site = trace_with(w, kron(r2, r3));
      const cd lhs = reconstruct_moment_exact(dist, w);
      const cd rhs = std::pow(site, 6);
      out.require(std::abs(lhs - rhs) <= 1e-10,
                  "mixed dev " + fmt(std::abs(lhs - rhs)));
      if (!out.ok) return out;
    }
  }
  return out;
}

// --- criterion 5: end-to-end distinguishing ---------------------------------

Outcome criterion_distinguishing() {
  Outcome out;
  const double eps = 0.3;
  const std::int64_t samples = hoeffding_sample_bound(3, 2, eps, 0.1);
  auto gen = derive_stream(0xacc5);
  int alt_correct = 0, null_correct = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const std::int64_t hidden = static_cast<std::int64_t>(
        uniform_index(gen, static_cast<std::uint64_t>(single_copy_set_size(2))));
    const WeylString w = single_copy_string(2, hidden);
    const auto table = amplitude_estimation(SpikedSpec{w, eps}, samples,
                                            mix_seed(0xa1a5, rep));
    if (distinguish(table, eps).alternative) ++alt_correct;
  }
  const Matrix mixed = Matrix::Identity(9, 9) / 9.0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto table = amplitude_estimation(replicated_dense_spec({3, 3}, mixed),
                                            samples, mix_seed(0xa1f5, rep));
    if (!distinguish(table, eps).alternative) ++null_correct;
  }
  out.require(alt_correct >= 18,
              "alternative correct " + std::to_string(alt_correct) + "/20");
  out.require(null_correct >= 18,
              "null correct " + std::to_string(null_correct) + "/20");
  out.note = "N=" + std::to_string(samples) + " alt " + std::to_string(alt_correct) +
             "/20 null " + std::to_string(null_correct) + "/20";
  return out;
}

// --- criterion 6: sample-complexity scaling shape ---------------------------

Outcome criterion_scaling_shape() {
  Outcome out;
  const auto t0 = Clock::now();
  const double ref[] = {2, 8, 38, 154, 616, 2466};

  ExperimentConfig single;
  single.n_min = 1;
  single.n_max = 6;
  single.t_max = 2000;
  single.seed_set = true;
  single.seed = 20260823;
  single.strategy = "single-copy";
  const auto srows = run_scaling(single);

  std::vector<double> semp(7, 0.0);
  for (const auto& r : srows)
    if (r.strategy == "single-copy-empirical")
      semp[static_cast<std::size_t>(r.n)] = static_cast<double>(r.n_min);
  for (int n = 1; n <= 6; ++n) {
    const double lo = 0.75 * ref[n - 1], hi = 1.25 * ref[n - 1];
    out.require(semp[static_cast<std::size_t>(n)] >= lo - 1e-9 &&
                    semp[static_cast<std::size_t>(n)] <= hi + 1e-9,
                "n=" + std::to_string(n) + " empirical " +
                    fmt(semp[static_cast<std::size_t>(n)]) + " outside [" + fmt(lo) +
                    "," + fmt(hi) + "]");
  }
  for (int n = 3; n <= 5; ++n) {
    const double ratio =
        semp[static_cast<std::size_t>(n + 1)] / semp[static_cast<std::size_t>(n)];
    out.require(ratio >= 3.0 && ratio <= 5.0,
                "single ratio at n=" + std::to_string(n) + " is " + fmt(ratio));
  }

  ExperimentConfig three;
  three.n_min = 1;
  three.n_max = 6;
  three.t_max = 200;
  three.seed_set = true;
  three.seed = 20260823;
  three.strategy = "three-copy";
  const auto trows = run_scaling(three);
  std::vector<double> tmin(7, 0.0);
  for (const auto& r : trows)
    if (r.strategy == "three-copy")
      tmin[static_cast<std::size_t>(r.n)] = static_cast<double>(r.n_min);
  for (int n = 3; n <= 5; ++n) {
    const double ratio =
        tmin[static_cast<std::size_t>(n + 1)] / tmin[static_cast<std::size_t>(n)];
    out.require(ratio <= 2.0, "three-copy ratio at n=" + std::to_string(n) +
                                  " is " + fmt(ratio));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  out.require(secs <= 600.0, "runtime " + fmt(secs) + "s over budget");
  std::ostringstream note;
  note << "single";
  for (int n = 1; n <= 6; ++n) note << ' ' << semp[static_cast<std::size_t>(n)];
  note << " three";
  for (int n = 1; n <= 6; ++n) note << ' ' << tmin[static_cast<std::size_t>(n)];
  note << " " << fmt(secs) << "s";
  if (!out.note.empty()) note << "; " << out.note;
  out.note = note.str();
  return out;
}

// --- criterion 7: interval calibration and certification --------------------

Outcome criterion_wilson() {
  Outcome out;
  int covered = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    auto gen = derive_stream(0xacc7, static_cast<std::uint64_t>(rep));
    std::int64_t s = 0;
    for (int i = 0; i < 200; ++i)
      if (uniform_double(gen) < 0.8) ++s;
    const auto [lo, hi] = wilson_interval(s, 200, 1.6449);
    if (lo <= 0.8 && 0.8 <= hi) ++covered;
  }
  out.require(covered >= 880, "coverage " + std::to_string(covered) + "/1000");

  WilsonConfig cfg;
  int accepts = 0, rejects = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const SuccessOracle high = [](std::int64_t n, std::int64_t trial,
                                  std::uint64_t seed) {
      auto g = derive_stream(seed, static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(trial));
      return uniform_double(g) < 0.8;
    };
    const SuccessOracle low = [](std::int64_t n, std::int64_t trial,
                                 std::uint64_t seed) {
      auto g = derive_stream(seed, static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(trial));
      return uniform_double(g) < 0.55;
    };
    if (certify_at_N(high, 1, cfg, mix_seed(0xb0b0, rep)).verdict ==
        WilsonDecision::Verdict::Accept)
      ++accepts;
    if (certify_at_N(low, 1, cfg, mix_seed(0xc0c0, rep)).verdict ==
        WilsonDecision::Verdict::EarlyReject)
      ++rejects;
  }
  out.require(accepts >= 95, "accepts " + std::to_string(accepts) + "/100");
  out.require(rejects >= 95, "early rejects " + std::to_string(rejects) + "/100");
  out.note = "coverage " + std::to_string(covered) + "/1000 accepts " +
             std::to_string(accepts) + " rejects " + std::to_string(rejects);
  return out;
}

// --- criterion 8: amplitude-matching loop contract --------------------------

Outcome criterion_mimicking_contract() {
  Outcome out;
  const double eps = 0.3;
  auto run_instance = [&](int n, std::uint64_t seed, bool sampled) {
    auto gen = derive_stream(seed);
    const std::int64_t hidden = static_cast<std::int64_t>(
        uniform_index(gen, static_cast<std::uint64_t>(single_copy_set_size(n))));
    const WeylString w = single_copy_string(n, hidden);
    const std::vector<int> dims(static_cast<std::size_t>(n), 3);
    const Matrix rho = spiked_state(w, eps);
    const auto u = amplitude_estimation(SpikedSpec{w, eps}, 0, 0);
    const int T = mimicking_iteration_cap(n, eps);
    const ZOracle z = sampled
                          ? sampled_z_oracle(dims, rho, z_oracle_shots(eps, T))
                          : exact_z_oracle(dims, rho);
    const auto run = build_mimicking_state(u, z, eps, mix_seed(seed, 0x517));
    if (!run.terminated_early) return false;
    for (std::size_t code = 0; code < u.u.size(); ++code) {
      if (u.u[code] < eps) continue;
      const WeylString s = string_from_code(static_cast<std::int64_t>(code), dims);
      if (std::abs(trace_with(s, run.sigma)) < eps / 3.0 - 1e-9) return false;
    }
    return true;
  };

  int exact_ok = 0;
  for (int rep = 0; rep < 50; ++rep)
    if (run_instance(rep % 2 == 0 ? 1 : 2, mix_seed(0xacc8, rep), false)) ++exact_ok;
  out.require(exact_ok == 50, "exact instances " + std::to_string(exact_ok) + "/50");

  int sampled_ok = 0;
  for (int rep = 0; rep < 100; ++rep)
    if (run_instance(rep % 2 == 0 ? 1 : 2, mix_seed(0xacc9, rep), true)) ++sampled_ok;
  out.require(sampled_ok >= 95, "sampled instances " + std::to_string(sampled_ok) + "/100");
  out.note = "exact " + std::to_string(exact_ok) + "/50 sampled " +
             std::to_string(sampled_ok) + "/100";
  return out;
}

// --- criterion 9: phase recovery accuracy -----------------------------------

Outcome criterion_phase_recovery() {
  Outcome out;
  const double eps = 0.1;
  const double bound = 9.0 * eps;  // 3^{d-1} eps at d = 3
  auto gen = derive_stream(0xaccb);
  for (int rep = 0; rep < 5; ++rep) {
    const std::int64_t hidden = static_cast<std::int64_t>(uniform_index(gen, 4));
    const WeylString w = single_copy_string(1, hidden);
    const double theta = 2.0 * M_PI * uniform_double(gen);
    const Matrix m = weyl_matrix(w);
    Matrix rho = Matrix::Identity(3, 3);
    rho += 3.0 * eps * (cd(std::cos(theta), std::sin(theta)) * m +
                        cd(std::cos(theta), -std::sin(theta)) * m.adjoint());
    rho /= 3.0;

    const auto u = amplitude_estimation(replicated_dense_spec({3}, rho), 0, 0);
    const auto run =
        build_mimicking_state(u, exact_z_oracle({3}, rho), eps, mix_seed(0xaccc, rep));
    out.require(run.terminated_early, "loop hit the cap");
    if (!run.terminated_early) continue;
    const auto table = recover_phases(run.sigma, rho, {3}, eps, 0, 0);
    bool planted_recovered = false;
    for (std::size_t code = 0; code < table.value.size(); ++code) {
      const WeylString s = string_from_code(static_cast<std::int64_t>(code), {3});
      const double dev = std::abs(table.value[code] - trace_with(s, rho));
      out.require(dev <= bound, "dev " + fmt(dev) + " over " + fmt(bound));
      if (table.provenance[code] == Provenance::PhaseRecovered) {
        out.require(dev <= 1e-9, "exact-mode recovered dev " + fmt(dev));
        if (static_cast<std::int64_t>(code) == string_code(w)) planted_recovered = true;
      }
    }
    out.require(planted_recovered, "planted string stayed amplitude-only");
    if (!out.ok) break;
  }
  return out;
}

// --- criterion 10: qutrit-to-qubit rewriting --------------------------------

Outcome criterion_transpiler() {
  Outcome out;
  for (const std::string name : {"h", "hdg", "x", "xdg", "cx", "cxdg"}) {
    const int wires = name == "cx" || name == "cxdg" ? 2 : 1;
    Circuit qutrit = make_circuit(WireKind::Qudit, 3, wires);
    std::vector<int> targets;
    for (int w = 0; w < wires; ++w) targets.push_back(w);
    append_gate(qutrit, name, targets);
    const auto rep = verify_embedding(qutrit, transpile_qutrit_to_qubit(qutrit), 1e-9);
    out.require(rep.matches, name + " residual " + fmt(rep.residual));
  }
  const Circuit full = bell_measurement_circuit(3, 1);
  const auto rep = verify_embedding(full, transpile_qutrit_to_qubit(full), 1e-9);
  out.require(rep.matches, "full measurement circuit residual " + fmt(rep.residual));
  out.note = "full-circuit residual " + fmt(rep.residual);
  return out;
}

// --- criterion 11: closed-form oracles --------------------------------------

Outcome criterion_formula_oracles() {
  Outcome out;
  const DeltaBound db = delta_bound(3, 1, 1.0 / 6.0, 2);
  out.require(std::abs(db.tight - 0.25) <= 1e-12, "tight bound " + fmt(db.tight));

  for (int d : {3, 5}) {
    for (int m = 1; m <= 3; ++m) {
      std::vector<int> a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
      std::int64_t acombo = 1, bcombo = 1;
      for (int i = 1; i < m; ++i) acombo *= d;
      for (int i = 0; i < m; ++i) bcombo *= d;
      for (std::int64_t ac = 0; ac < acombo && out.ok; ++ac) {
        std::int64_t rest = ac;
        a[0] = 1;
        for (int i = 1; i < m; ++i) {
          a[static_cast<std::size_t>(i)] = static_cast<int>(rest % d);
          rest /= d;
        }
        for (std::int64_t bc = 0; bc < bcombo; ++bc) {
          rest = bc;
          for (int i = 0; i < m; ++i) {
            b[static_cast<std::size_t>(i)] = static_cast<int>(rest % d);
            rest /= d;
          }
          const double dev = std::abs(constrained_fourier_sum(d, a, b) -
                                      constrained_fourier_closed_form(d, a, b));
          out.require(dev <= 1e-9, "fourier dev " + fmt(dev));
          if (!out.ok) break;
        }
      }
    }
  }

  for (int m = 1; m <= 30; ++m) {
    if (m % 6 == 0) continue;
    const double v = mixed_twirl_norm_normalized({2, 3}, m);
    out.require(v <= 0.5 + 1e-12, "normalized norm " + fmt(v) + " at m=" +
                                      std::to_string(m));
  }
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {"twirl norm ladder", criterion_norm_ladder},
      {"qubit twirl norms", criterion_qubit_norms},
      {"entangled-basis eigenvalues", criterion_bell_eigen},
      {"moment identity", criterion_moment_identity},
      {"end-to-end distinguishing", criterion_distinguishing},
      {"scaling shape", criterion_scaling_shape},
      {"interval calibration", criterion_wilson},
      {"amplitude-matching contract", criterion_mimicking_contract},
      {"phase recovery", criterion_phase_recovery},
      {"qutrit transpiler", criterion_transpiler},
      {"formula oracles", criterion_formula_oracles},
  };
  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Outcome out;
    try {
      out = entries[i].run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.note = std::string("exception: ") + e.what();
    }
    if (!out.ok) ++failures;
    std::printf("criterion %2zu %-28s %s%s%s\n", i + 1, entries[i].label,
                out.ok ? "PASS" : "FAIL", out.note.empty() ? "" : "  -- ",
                out.note.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures > 0 ? 1 : 0;
}
