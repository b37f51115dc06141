#include <doctest.h>

#include <vector>

#include "whsim/distribution.hpp"
#include "whsim/protocols.hpp"
#include "whsim/rng.hpp"

using namespace whsim;

TEST_CASE("spiked state is a density matrix with the planted amplitude") {
  const WeylString w = weyl_site_op({3, 3}, 0, 1, 2);
  const Matrix rho = spiked_state(w, 0.3);
  CHECK(is_density_matrix(rho));
  CHECK(std::abs(trace_with(w, rho) - cd(0.9, 0.0)) < 1e-12);
  CHECK(std::abs(trace_with(weyl_adjoint(w), rho) - cd(0.9, 0.0)) < 1e-12);
  // other strings stay dark
  const WeylString other = weyl_site_op({3, 3}, 1, 1, 1);
  CHECK(std::abs(trace_with(other, rho)) < 1e-12);
  CHECK_THROWS_AS(spiked_state(w, 0.4), std::domain_error);
  CHECK_THROWS_AS(spiked_state(weyl_identity({3}), 0.1), std::invalid_argument);
}

TEST_CASE("copy counts come from the lcm") {
  CHECK(copies_for({3}) == 3);
  CHECK(copies_for({3, 3, 3}) == 3);
  CHECK(copies_for({2, 3}) == 6);
  CHECK_THROWS_AS(copies_for({4}), std::invalid_argument);
}

TEST_CASE("exact amplitude table of a planted state") {
  const WeylString w = weyl_generator(3, 1);
  const AmplitudeTable table =
      amplitude_estimation(SpikedSpec{w, 0.3}, 0, 0);
  REQUIRE(table.u.size() == 9);
  CHECK(table.copies == 3);
  CHECK(table.u[0] == doctest::Approx(1.0));
  const std::int64_t planted = string_code(w);
  const std::int64_t conj = string_code(projective(weyl_adjoint(w)));
  for (std::int64_t code = 1; code < 9; ++code) {
    const double want = (code == planted || code == conj) ? 0.9 : 0.0;
    CHECK(table.u[static_cast<std::size_t>(code)] ==
          doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("sampled amplitudes concentrate") {
  const WeylString w = weyl_site_op({3}, 0, 2, 1);
  const AmplitudeTable table =
      amplitude_estimation(SpikedSpec{w, 0.3}, 200000, 0x5ba1);
  const std::int64_t planted = string_code(w);
  CHECK(table.u[static_cast<std::size_t>(planted)] ==
        doctest::Approx(0.9).epsilon(0.05));
  // a dark string: |sample mean| ~ N^{-1/2}, cube root spreads it out
  bool some_small = true;
  for (std::int64_t code = 1; code < 9; ++code) {
    if (code == planted || code == string_code(projective(weyl_adjoint(w)))) continue;
    if (table.u[static_cast<std::size_t>(code)] > 0.45) some_small = false;
  }
  CHECK(some_small);
}

TEST_CASE("distinguisher separates the two hypotheses") {
  const double eps = 0.3;
  const WeylString w = weyl_site_op({3}, 0, 1, 1);
  const auto alt = amplitude_estimation(SpikedSpec{w, eps}, 0, 0);
  const auto res = distinguish(alt, eps);
  CHECK(res.alternative);
  CHECK(res.argmax_code == string_code(w));
  CHECK(res.max_u == doctest::Approx(0.9));

  const Matrix mixed = Matrix::Identity(3, 3) / 3.0;
  const auto null_table =
      amplitude_estimation(replicated_dense_spec({3}, mixed), 0, 0);
  CHECK_FALSE(distinguish(null_table, eps).alternative);
}

TEST_CASE("guess-set indexing round trips") {
  CHECK(single_copy_set_size(1) == 4);
  CHECK(single_copy_set_size(2) == 16);
  for (int n : {1, 2}) {
    const std::int64_t size = single_copy_set_size(n);
    for (std::int64_t idx = 0; idx < size; ++idx) {
      const WeylString w = single_copy_string(n, idx);
      CHECK(single_copy_index(w) == idx);
      for (int i = 0; i < n; ++i) {
        CHECK(w.xexp[static_cast<std::size_t>(i)] >= 1);
        CHECK(w.xexp[static_cast<std::size_t>(i)] <= 2);
        CHECK(w.zexp[static_cast<std::size_t>(i)] >= 1);
        CHECK(w.zexp[static_cast<std::size_t>(i)] <= 2);
      }
      // conjugation is the set-internal involution matching the adjoint
      const std::int64_t cj = single_copy_conjugate_index(n, idx);
      CHECK(single_copy_conjugate_index(n, cj) == idx);
      CHECK(cj == single_copy_index(projective(weyl_adjoint(w))));
    }
  }
  CHECK_THROWS_AS(single_copy_index(weyl_site_op({3}, 0, 1, 0)),
                  std::invalid_argument);
}

TEST_CASE("hit probability closed form and its inversion") {
  CHECK(theoretical_hit_probability(1, 2) == doctest::Approx(0.75));
  CHECK(theoretical_hit_probability(2, 0) == doctest::Approx(0.0));
  const std::vector<std::int64_t> want{2, 10, 38, 154, 616, 2466};
  for (int n = 1; n <= 6; ++n) {
    const std::int64_t nmin = single_copy_nmin(n, 0.7);
    CHECK(nmin == want[static_cast<std::size_t>(n - 1)]);
    CHECK(theoretical_hit_probability(n, nmin) >= 0.7);
    CHECK(theoretical_hit_probability(n, nmin - 1) < 0.7);
  }
}

TEST_CASE("single-copy trials are seeded and calibrated") {
  const WeylString hidden = single_copy_string(2, 5);
  CHECK(single_copy_trial(2, hidden, 40, std::uint64_t{9}) ==
        single_copy_trial(2, hidden, 40, std::uint64_t{9}));
  // empirical success over many trials tracks the closed form
  auto gen = derive_stream(0xabc1);
  const std::int64_t draws = 10;
  int hits = 0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t)
    hits += single_copy_trial(2, 5, draws, gen) ? 1 : 0;
  const double want = theoretical_hit_probability(2, draws);
  CHECK(std::abs(static_cast<double>(hits) / trials - want) < 0.03);
}

TEST_CASE("hoeffding bound value and monotonicity") {
  CHECK(hoeffding_sample_bound(3, 2, 0.3, 0.1) == 44353);
  CHECK(hoeffding_sample_bound(3, 1, 0.3, 0.1) < 44353);
  CHECK(hoeffding_sample_bound(3, 2, 0.3, 0.01) > 44353);
  CHECK_THROWS_AS(hoeffding_sample_bound(3, 2, 0.0, 0.1), std::domain_error);
}
