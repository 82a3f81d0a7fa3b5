#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "decaysched/model.hpp"

namespace decaysched {

// A deterministic scheduling rule mapping (state, instance) to an action.
class Policy {
 public:
  using Fn = std::function<ScheduleAction(const SystemState&, const Instance&)>;

  Policy(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  ScheduleAction operator()(const SystemState& state,
                            const Instance& instance) const {
    return fn_(state, instance);
  }

 private:
  std::string name_;
  Fn fn_;
};

// Top-min(K, M) NotStarted jobs by E[v_j(t + sigma_j)]; ties to lower id.
ScheduleAction greedy_action(const SystemState& state, const Instance& instance);
// Top-min(K, M) jobs by E[v_j(t + sigma_j)] / E[sigma_j]; ties to lower id.
ScheduleAction rate_greedy_action(const SystemState& state,
                                  const Instance& instance);
// Jobs whose deadline has not passed (d_j >= t) by ascending deadline, then
// expired jobs by ascending deadline; ties to lower id.
ScheduleAction edf_action(const SystemState& state, const Instance& instance);

Policy greedy_policy();
Policy rate_greedy_policy();
Policy edf_policy();

inline constexpr std::string_view kGreedy = "greedy";
inline constexpr std::string_view kRateGreedy = "rate-greedy";
inline constexpr std::string_view kEdf = "edf";
inline constexpr std::string_view kOptimal = "optimal";

// Maps "greedy"/"g", "rate-greedy"/"rg", "edf" to their canonical names.
// Returns "optimal" for "optimal"/"opt". Throws InvalidInput otherwise.
std::string canonical_policy_name(std::string_view name);

// Builds one of the three heuristics by name; "optimal" needs a solved
// instance and is available from the dp module instead.
Policy heuristic_policy(std::string_view name);

}  // namespace decaysched
