#include <doctest.h>

#include <vector>

#include "whsim/mimic.hpp"
#include "whsim/rng.hpp"

using namespace whsim;

TEST_CASE("iteration budget and step size") {
  CHECK(mimicking_iteration_cap(2, 0.3) == 1668);
  CHECK(mimicking_iteration_cap(1, 0.3) == 835);
  CHECK(mimicking_step_size(2, 1668) == doctest::Approx(std::sqrt(2.0 / 1668.0)));
  CHECK(z_oracle_shots(0.3, 1668) == 372524);
}

TEST_CASE("gibbs state basics") {
  const Matrix flat = gibbs_state({}, 0.1, 3);
  CHECK((flat - Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 1e-12);

  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  const double beta = 0.7;
  const Matrix rho = gibbs_state({{1, m}}, beta, 3);
  const double z = std::exp(-beta) + 1.0 + std::exp(beta);
  CHECK(rho(0, 0).real() == doctest::Approx(std::exp(-beta) / z));
  CHECK(rho(1, 1).real() == doctest::Approx(1.0 / z));
  CHECK(rho(2, 2).real() == doctest::Approx(std::exp(beta) / z));
  CHECK(is_density_matrix(rho));

  // sign -1 flips the exponent
  const Matrix rho2 = gibbs_state({{-1, m}}, beta, 3);
  CHECK(rho2(0, 0).real() == doctest::Approx(std::exp(beta) / z));

  Matrix skew = Matrix::Zero(3, 3);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(gibbs_state({{1, skew}}, beta, 3), std::invalid_argument);
}

TEST_CASE("violation search order and thresholds") {
  AmplitudeTable table;
  table.dims = {3};
  table.copies = 3;
  table.u.assign(9, 0.0);
  table.u[0] = 1.0;
  const Matrix sigma = Matrix::Identity(3, 3) / 3.0;

  SUBCASE("nothing lights up") {
    CHECK_FALSE(violation_search(table, sigma, 0.3).has_value());
  }
  SUBCASE("below the amplitude floor is ignored") {
    table.u[4] = 0.29;
    CHECK_FALSE(violation_search(table, sigma, 0.3).has_value());
  }
  SUBCASE("first violating code wins") {
    table.u[7] = 0.5;
    table.u[4] = 0.5;
    const auto w = violation_search(table, sigma, 0.3);
    REQUIRE(w.has_value());
    CHECK(string_code(*w) == 4);
  }
  SUBCASE("matched amplitude does not violate") {
    // sigma with tr(W sigma) = 0.5 = u: the gap is below 2 eps / 3
    table.u[4] = 0.5;
    const WeylString w = string_from_code(4, {3});
    const Matrix m = weyl_matrix(w);
    Matrix s2 = Matrix::Identity(3, 3);
    s2 += 0.5 * (m + m.adjoint());
    s2 /= 3.0;
    CHECK_FALSE(violation_search(table, s2, 0.3).has_value());
  }
}

TEST_CASE("z oracles agree in expectation") {
  const WeylString w = weyl_site_op({3}, 0, 1, 2);
  const Matrix rho = spiked_state(w, 0.2);
  const auto exact = exact_z_oracle({3}, rho);
  CHECK(std::abs(exact(w, 1, 0) - trace_with(w, rho)) < 1e-12);

  const auto sampled = sampled_z_oracle({3}, rho, 40000);
  const cd a = sampled(w, 3, 0x51);
  const cd b = sampled(w, 3, 0x51);
  CHECK(std::abs(a - b) < 1e-15);  // same step and seed replay
  CHECK(std::abs(a - trace_with(w, rho)) < 0.05);
  const cd c = sampled(w, 4, 0x51);
  CHECK(std::abs(c - trace_with(w, rho)) < 0.05);
  CHECK(std::abs(a - c) > 1e-12);  // different step, fresh stream
}

TEST_CASE("planted instance terminates with matched amplitudes") {
  const double eps = 0.3;
  const WeylString w = weyl_site_op({3}, 0, 2, 1);
  const Matrix rho = spiked_state(w, eps);
  const auto u = amplitude_estimation(replicated_dense_spec({3}, rho), 0, 0);
  const auto run = build_mimicking_state(u, exact_z_oracle({3}, rho), eps, 0x77);
  CHECK(run.terminated_early);
  CHECK(run.T == 835);
  CHECK(is_density_matrix(run.sigma));
  CHECK(!run.trace.empty());
  for (std::size_t code = 0; code < u.u.size(); ++code) {
    if (u.u[code] < eps) continue;
    const WeylString s = string_from_code(static_cast<std::int64_t>(code), {3});
    CHECK(std::abs(trace_with(s, run.sigma)) >= eps / 3.0 - 1e-9);
    // the no-violation exit is stronger: within 2 eps / 3 of the amplitude
    CHECK(std::abs(std::abs(trace_with(s, run.sigma)) - u.u[code]) <
          2.0 * eps / 3.0);
  }
}

TEST_CASE("phase recovery on the planted instance") {
  const double eps = 0.3;
  const WeylString w = weyl_site_op({3}, 0, 1, 1);
  const Matrix rho = spiked_state(w, eps);
  const auto u = amplitude_estimation(replicated_dense_spec({3}, rho), 0, 0);
  const auto run = build_mimicking_state(u, exact_z_oracle({3}, rho), eps, 0x99);
  REQUIRE(run.terminated_early);

  const ExpectationTable table = recover_phases(run.sigma, rho, {3}, eps, 0, 0);
  REQUIRE(table.value.size() == 9);
  bool any_recovered = false;
  for (std::size_t code = 0; code < 9; ++code) {
    const WeylString s = string_from_code(static_cast<std::int64_t>(code), {3});
    if (table.provenance[code] == Provenance::PhaseRecovered) {
      any_recovered = true;
      CHECK(std::abs(table.value[code] - trace_with(s, rho)) < 1e-9);
    } else {
      // amplitude-only entries carry |tr(W rho)| from the d-copy table
      CHECK(std::abs(table.value[code] - cd(u.u[code], 0.0)) < 1e-12);
    }
  }
  CHECK(any_recovered);
  const std::int64_t planted = string_code(w);
  CHECK(table.provenance[static_cast<std::size_t>(planted)] ==
        Provenance::PhaseRecovered);
}
