#include "decaysched/policies.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "decaysched/error.hpp"

namespace decaysched {

namespace {

// Picks the first min(K, M) NotStarted jobs under `before` (a strict weak
// ordering that already breaks ties by id).
template <typename Less>
ScheduleAction top_jobs(const SystemState& state, Less before) {
  std::vector<int> waiting = state.not_started();
  const std::size_t k = std::min<std::size_t>(waiting.size(), state.num_free());
  std::partial_sort(waiting.begin(), waiting.begin() + k, waiting.end(), before);
  waiting.resize(k);
  return assign_to_free_processors(state, std::move(waiting));
}

}  // namespace

ScheduleAction greedy_action(const SystemState& state, const Instance& instance) {
  return top_jobs(state, [&](int a, int b) {
    const double ra = instance.expected_reward(a, state.t);
    const double rb = instance.expected_reward(b, state.t);
    return ra > rb || (ra == rb && a < b);
  });
}

ScheduleAction rate_greedy_action(const SystemState& state,
                                  const Instance& instance) {
  return top_jobs(state, [&](int a, int b) {
    const double ra = instance.expected_reward(a, state.t) / instance.mean_service(a);
    const double rb = instance.expected_reward(b, state.t) / instance.mean_service(b);
    return ra > rb || (ra == rb && a < b);
  });
}

ScheduleAction edf_action(const SystemState& state, const Instance& instance) {
  auto key = [&](int j) {
    const int d = instance.job(j).decay.deadline();
    return std::make_tuple(d < state.t, d, j);
  };
  return top_jobs(state, [&](int a, int b) { return key(a) < key(b); });
}

Policy greedy_policy() { return Policy(std::string(kGreedy), greedy_action); }
Policy rate_greedy_policy() {
  return Policy(std::string(kRateGreedy), rate_greedy_action);
}
Policy edf_policy() { return Policy(std::string(kEdf), edf_action); }

std::string canonical_policy_name(std::string_view name) {
  if (name == "greedy" || name == "g") return std::string(kGreedy);
  if (name == "rate-greedy" || name == "rate_greedy" || name == "rg")
    return std::string(kRateGreedy);
  if (name == "edf") return std::string(kEdf);
  if (name == "optimal" || name == "opt") return std::string(kOptimal);
  throw InvalidInput("unknown policy '" + std::string(name) + "'");
}

Policy heuristic_policy(std::string_view name) {
  const std::string canonical = canonical_policy_name(name);
  if (canonical == kGreedy) return greedy_policy();
  if (canonical == kRateGreedy) return rate_greedy_policy();
  if (canonical == kEdf) return edf_policy();
  throw InvalidInput("policy '" + canonical + "' is not a heuristic");
}

}  // namespace decaysched
