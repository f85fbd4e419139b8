#pragma once

// Seeded Monte Carlo engine. It samples the joint (advice correct, user would
// be correct) event directly from the dependency model and never calls the
// closed forms, so it serves as an independent check on them.
//
// Streams: shard k of a run with seed s draws from std::mt19937_64 seeded with
// shard_seed(s, k) = splitmix64(s ^ splitmix64(k + 0x9E3779B97F4A7C15)).
// Trials are split as evenly as possible, lower shards taking the remainder.
// Uniforms are the top 53 bits of a 64-bit output scaled by 2^-53, and a
// Bernoulli(p) draw succeeds when u < p.

#include <array>
#include <cstdint>
#include <random>
#include <type_traits>
#include <utility>

#include "aidrely/analytic.hpp"
#include "aidrely/model.hpp"

namespace aidrely {

struct TrialOutcome {
  bool advice_correct = false;
  bool user_would_be_correct = false;
  /// Deliberated over the advice (indiscriminate and discriminating only).
  bool attended = false;
  bool accepted_or_used = false;
  bool final_correct = false;
};

struct SimEstimate {
  Probability p_hat;
  std::uint64_t n_trials = 0;
  double std_err = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  std::uint64_t seed = 0;
  std::uint32_t shards = 1;
  /// Indexed like OutcomeTable::index.
  std::array<std::uint64_t, OutcomeTable::kCells> outcome_counts{};

  std::uint64_t advice_correct_count = 0;
  std::uint64_t user_correct_count = 0;
  std::uint64_t accepted_count = 0;
  std::uint64_t attended_count = 0;

  friend bool operator==(const SimEstimate&, const SimEstimate&) = default;
};

using TrialRng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t shard_seed(std::uint64_t seed, std::uint32_t shard) noexcept;

TrialOutcome sample_trial(const Scenario& scenario, TrialRng& rng);

/// Throws UsageError when n_trials or shards is zero. With a fixed shard
/// count the result is a pure function of (scenario, n_trials, seed).
SimEstimate estimate_accuracy(const Scenario& scenario, std::uint64_t n_trials, std::uint64_t seed,
                              std::uint32_t shards = 1);

}  // namespace aidrely
