#include "aidrely/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

namespace aidrely {

namespace {

double uniform01(TrialRng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool bernoulli(TrialRng& rng, double p) { return uniform01(rng) < p; }

struct JointCells {
  double both;        // aid right, user right
  double aid_only;    // aid right, user wrong
  double user_only;   // aid wrong, user right
};

JointCells joint_cells(const Scenario& s) {
  const double pa = s.aid().p_advice_correct.value();
  const double pu = s.user().p_unaided_correct.value();
  double both = pa * pu;
  if (const auto* j = std::get_if<dependency::Joint>(&s.dependency())) {
    both = j->p_both_correct.value();
  } else if (std::holds_alternative<dependency::Dominant>(s.dependency())) {
    both = pu;  // user's successes are a subset of the aid's
  }
  return {both, pa - both, pu - both};
}

struct Counts {
  std::array<std::uint64_t, OutcomeTable::kCells> cells{};
  std::uint64_t advice_correct = 0;
  std::uint64_t user_correct = 0;
  std::uint64_t accepted = 0;
  std::uint64_t attended = 0;
  std::uint64_t final_correct = 0;

  void add(const TrialOutcome& t) {
    ++cells[OutcomeTable::index(t.advice_correct, t.accepted_or_used, t.final_correct)];
    advice_correct += t.advice_correct;
    user_correct += t.user_would_be_correct;
    accepted += t.accepted_or_used;
    attended += t.attended;
    final_correct += t.final_correct;
  }

  void merge(const Counts& o) {
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] += o.cells[i];
    advice_correct += o.advice_correct;
    user_correct += o.user_correct;
    accepted += o.accepted;
    attended += o.attended;
    final_correct += o.final_correct;
  }
};

Counts run_shard(const Scenario& s, std::uint64_t n, std::uint64_t stream_seed) {
  TrialRng rng(stream_seed);
  Counts c;
  for (std::uint64_t i = 0; i < n; ++i) c.add(sample_trial(s, rng));
  return c;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint32_t shard) noexcept {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(shard) + 0x9E3779B97F4A7C15ull));
}

TrialOutcome sample_trial(const Scenario& s, TrialRng& rng) {
  TrialOutcome t;
  const auto cells = joint_cells(s);
  const double u = uniform01(rng);
  if (u < cells.both) {
    t.advice_correct = t.user_would_be_correct = true;
  } else if (u < cells.both + cells.aid_only) {
    t.advice_correct = true;
  } else if (u < cells.both + cells.aid_only + cells.user_only) {
    t.user_would_be_correct = true;
  }

  const auto resolve_rejection = [&] {
    // conditional_from_joint: the user's own (sampled) correctness decides.
    if (s.degradation_mode() == DegradationMode::kConditionalFromJoint) return t.user_would_be_correct;
    return bernoulli(rng, s.user().p_post_reject_correct.value());
  };

  std::visit(
      [&](const auto& pol) {
        using P = std::decay_t<decltype(pol)>;
        if constexpr (std::is_same_v<P, policy::RoutineAccept>) {
          t.accepted_or_used = true;
          t.final_correct = t.advice_correct;
        } else if constexpr (std::is_same_v<P, policy::RoutineIgnore>) {
          t.final_correct = t.user_would_be_correct;
        } else if constexpr (std::is_same_v<P, policy::Indiscriminate>) {
          t.attended = true;
          t.accepted_or_used = bernoulli(rng, pol.p_accept.value());
          t.final_correct = t.accepted_or_used ? t.advice_correct : resolve_rejection();
        } else if constexpr (std::is_same_v<P, policy::Discriminating>) {
          t.attended = true;
          const double p_accept =
              t.advice_correct ? pol.p_accept_given_correct.value() : pol.p_accept_given_wrong.value();
          t.accepted_or_used = bernoulli(rng, p_accept);
          t.final_correct = t.accepted_or_used ? t.advice_correct : resolve_rejection();
        } else {
          static_assert(std::is_same_v<P, policy::SelfGated>);
          t.accepted_or_used = t.user_would_be_correct ? !bernoulli(rng, pol.p_ignore_given_user_correct.value())
                                                       : bernoulli(rng, pol.p_use_given_user_wrong.value());
          t.final_correct = t.accepted_or_used ? t.advice_correct : t.user_would_be_correct;
        }
      },
      s.policy());
  return t;
}

SimEstimate estimate_accuracy(const Scenario& s, std::uint64_t n_trials, std::uint64_t seed, std::uint32_t shards) {
  if (n_trials == 0) throw UsageError("n_trials must be at least 1");
  if (shards == 0) throw UsageError("shards must be at least 1");

  std::vector<Counts> per_shard(shards);
  const std::uint64_t base = n_trials / shards;
  const std::uint64_t extra = n_trials % shards;
  const auto trials_for = [&](std::uint32_t k) { return base + (k < extra ? 1 : 0); };

  if (shards == 1) {
    per_shard[0] = run_shard(s, n_trials, shard_seed(seed, 0));
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (std::uint32_t k = 0; k < shards; ++k) {
      workers.emplace_back([&, k] { per_shard[k] = run_shard(s, trials_for(k), shard_seed(seed, k)); });
    }
  }

  Counts total;
  for (const auto& c : per_shard) total.merge(c);

  SimEstimate e;
  const double n = static_cast<double>(n_trials);
  const double p_hat = static_cast<double>(total.final_correct) / n;
  e.p_hat = Probability(p_hat);
  e.n_trials = n_trials;
  e.std_err = std::sqrt(p_hat * (1.0 - p_hat) / n);
  e.ci95 = {std::max(0.0, p_hat - 1.96 * e.std_err), std::min(1.0, p_hat + 1.96 * e.std_err)};
  e.seed = seed;
  e.shards = shards;
  e.outcome_counts = total.cells;
  e.advice_correct_count = total.advice_correct;
  e.user_correct_count = total.user_correct;
  e.accepted_count = total.accepted;
  e.attended_count = total.attended;
  return e;
}

}  // namespace aidrely
