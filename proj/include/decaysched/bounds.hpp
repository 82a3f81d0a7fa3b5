#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decaysched/dp.hpp"
#include "decaysched/model.hpp"

namespace decaysched {

// Performance guarantees of the three heuristics for one instance, with the
// quantities they are built from.
struct BoundReport {
  double expected_max_min_ratio = 0.0;  // E[sigma_max / sigma_min]
  double ratio_std_error = 0.0;         // zero when computed exhaustively
  bool ratio_exact = true;
  double expected_max = 0.0;            // E[sigma_max]
  double min_mean = 0.0;                // min_j E[sigma_j]
  double delta = 0.0;                   // E[sigma_max] / min_j E[sigma_j]
  double max_expected_reward = 0.0;     // M
  double min_positive_expected_reward = 0.0;  // m
  bool iid = false;
  std::optional<double> p_min;          // smallest positive CDF value (iid)

  double greedy_alpha = 0.0;            // 1 + 2 E[sigma_max / sigma_min]
  double rate_greedy_alpha = 0.0;       // 2 + Delta
  std::optional<double> edf_alpha;      // 1 + M / m, iid only
  std::optional<double> edf_step_alpha; // 1 + 1 / p_min, iid + common step
};

// Joint support size above which E[sigma_max / sigma_min] is estimated by
// Monte Carlo, and the number of draws used then.
inline constexpr double kExactSupportBudget = 1e7;
inline constexpr std::size_t kRatioMonteCarloDraws = 100'000;

// exact = true enumerates the product support when it is within budget and
// falls back to Monte Carlo otherwise; exact = false always samples.
// Throws InvalidInput("valueless instance") when every E[v_j(t + sigma_j)]
// is zero.
BoundReport compute_bounds(const Instance& instance, bool exact = true,
                           std::uint64_t seed = 0x5eed);

// E[sigma_max / sigma_min] by Monte Carlo; returns {mean, std_error}.
std::pair<double, double> expected_max_min_ratio_mc(const Instance& instance,
                                                    std::size_t draws,
                                                    std::uint64_t seed);

struct BoundCheck {
  std::string policy;
  std::string bound;  // which guarantee
  double alpha = 0.0;
  double optimal_value = 0.0;
  double policy_value = 0.0;
  bool holds = false;
};

// Checks V* <= alpha V^pi at the initial state for every applicable
// (policy, guarantee) pair; iid instances are also checked against alpha = 2
// for both greedy policies.
std::vector<BoundCheck> verify_bounds(const Instance& instance,
                                      const SolveOptions& options = {});

// 1 + 2 E[sigma_max / sigma_min] >= 2 + Delta and 1 + M / m >= 2.
bool check_bound_ordering(const BoundReport& report);
bool check_bound_ordering(const Instance& instance);

}  // namespace decaysched
