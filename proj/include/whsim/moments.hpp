#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "whsim/distribution.hpp"
#include "whsim/weyl.hpp"

namespace whsim {

// Character of one coarse outcome under the string with exponents (a, b):
// prod_i omega_{p_i}^{b_i s_i - a_i q_i}.  The estimator whose mean over the
// c-copy measurement equals tr(W rho)^c; the string's scalar phase does not
// enter.
cd outcome_character(const WeylString& w, std::int64_t code);

// Sample mean of the character.
cd reconstruct_moment(const std::vector<std::int64_t>& codes, const WeylString& w);
// Expectation under the exact distribution (uses the factorized or closed
// form when the representation allows it).
cd reconstruct_moment_exact(const OutcomeDistribution& dist, const WeylString& w);

// Moments of every string at once from a full outcome table (probabilities
// or counts/N) over the d^{2n} coarse outcomes: a multi-axis DFT with kernel
// omega^{+jk} over the interleaved (s_1, q_1, ..., s_n, q_n) axes, then a
// reindexing so that entry [string_code(W)] is the moment of W.
std::vector<cd> all_string_moments(const std::vector<double>& table, int d, int n);

// Largest |moments[code] - target(code)| where target is 0 except for the
// listed (code, value) pairs.
double max_abs_deviation(const std::vector<cd>& moments,
                         const std::vector<std::pair<std::int64_t, cd>>& targets);

}  // namespace whsim
