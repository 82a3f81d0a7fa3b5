#pragma once

#include <cstddef>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "decaysched/model.hpp"
#include "decaysched/policies.hpp"

namespace decaysched {

enum class ActionSpace {
  Maximal,  // non-idling actions only (enumerate_actions)
  All,      // every feasible action, idling included (enumerate_all_actions)
};

struct SolveOptions {
  std::size_t state_budget = 5'000'000;
  ActionSpace action_space = ActionSpace::Maximal;
};

// State modulo processor relabeling: processors are identical, so only which
// jobs wait, which are in service (and for how long) and the slot matter.
struct CanonicalState {
  int t = 0;
  std::vector<int> not_started;                   // sorted ids
  std::vector<std::pair<int, int>> in_service;    // (job id, age), sorted

  static CanonicalState of(const SystemState& state);
  // Representative SystemState: in-service jobs occupy processors 0, 1, ...
  // in id order; start slots are t - age.
  SystemState to_state(const Instance& instance) const;

  bool operator==(const CanonicalState&) const = default;
};

struct CanonicalStateHash {
  std::size_t operator()(const CanonicalState& s) const;
};

using ValueTable = std::unordered_map<CanonicalState, double, CanonicalStateHash>;
using PolicyTable =
    std::unordered_map<CanonicalState, ScheduleAction, CanonicalStateHash>;

struct SolveResult {
  double optimal_value = 0.0;
  PolicyTable policy_table;  // non-terminal states only
  ValueTable value_table;    // every visited state, terminal ones at 0
  std::size_t states_visited = 0;
};

// Backward recursion V(s) = max_A E[reward + V(next)] from the initial
// state, memoized on CanonicalState. Ties go to the first action in
// enumeration order. Throws ResourceExhausted past the state budget.
SolveResult solve_optimal(const Instance& instance, const SolveOptions& options = {});
SolveResult solve_optimal_from(const Instance& instance, const SystemState& state,
                               const SolveOptions& options = {});

// V*(s) without materializing the tables.
double optimal_value(const Instance& instance, const SolveOptions& options = {});
double optimal_value_from(const Instance& instance, const SystemState& state,
                          const SolveOptions& options = {});

// Exact V^pi from the initial state (or a given one): the same recursion with
// the max replaced by the policy's action.
double evaluate_policy_exact(const Instance& instance, const Policy& policy,
                             const SolveOptions& options = {});
double evaluate_policy_from(const Instance& instance, const Policy& policy,
                            const SystemState& state,
                            const SolveOptions& options = {});

// V* / V^pi. Returns +infinity when V^pi = 0 < V*, and 1 when both vanish.
double value_ratio(double optimal, double policy_value);
double value_ratio(const Instance& instance, const Policy& policy,
                   const SolveOptions& options = {});

// The optimal policy recorded in a SolveResult. States absent from the table
// are solved on demand.
Policy table_policy(std::shared_ptr<const SolveResult> result,
                    SolveOptions options = {});

}  // namespace decaysched
