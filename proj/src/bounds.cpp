#include "decaysched/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "decaysched/error.hpp"
#include "decaysched/policies.hpp"
#include "decaysched/rng.hpp"
#include "decaysched/simulator.hpp"

namespace decaysched {

namespace {

constexpr double kIidTolerance = 1e-12;
constexpr double kCheckTolerance = 1e-9;

struct SupportPoint {
  int duration;
  double prob;
};

std::vector<SupportPoint> positive_support(const Pmf& pmf) {
  std::vector<SupportPoint> out;
  for (int k = pmf.min_positive(); k <= pmf.max_positive(); ++k)
    if (pmf.prob(k) > 0.0) out.push_back({k, pmf.prob(k)});
  return out;
}

void walk_support(const std::vector<std::vector<SupportPoint>>& supports,
                  std::size_t level, double prob, int hi, int lo, double& total) {
  if (level == supports.size()) {
    total += prob * static_cast<double>(hi) / lo;
    return;
  }
  for (const SupportPoint& p : supports[level])
    walk_support(supports, level + 1, prob * p.prob, std::max(hi, p.duration),
                 std::min(lo, p.duration), total);
}

// Exhaustive sum over the product support of the independent durations.
double exact_max_min_ratio(const std::vector<std::vector<SupportPoint>>& supports) {
  double total = 0.0;
  walk_support(supports, 0, 1.0, 0, std::numeric_limits<int>::max(), total);
  return total;
}

bool all_iid(const Instance& instance) {
  for (int j = 1; j < instance.num_jobs(); ++j)
    if (!approx_equal(instance.job(0).pmf, instance.job(j).pmf, kIidTolerance))
      return false;
  return true;
}

bool common_step_values(const Instance& instance) {
  const double b = instance.job(0).decay.height();
  for (const Job& job : instance.jobs()) {
    if (job.decay.kind() != DecayKind::Step) return false;
    if (std::abs(job.decay.height() - b) > kIidTolerance) return false;
  }
  return b > 0.0;
}

}  // namespace

std::pair<double, double> expected_max_min_ratio_mc(const Instance& instance,
                                                    std::size_t draws,
                                                    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> samples(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    int hi = 0, lo = std::numeric_limits<int>::max();
    for (const Job& job : instance.jobs()) {
      const int s = job.pmf.quantile(rng.uniform());
      hi = std::max(hi, s);
      lo = std::min(lo, s);
    }
    samples[i] = static_cast<double>(hi) / lo;
  }
  const MCStats stats = MCStats::from_samples(samples);
  return {stats.mean, stats.std_error};
}

BoundReport compute_bounds(const Instance& instance, bool exact, std::uint64_t seed) {
  BoundReport r;

  std::vector<std::vector<SupportPoint>> supports;
  double joint = 1.0;
  for (const Job& job : instance.jobs()) {
    supports.push_back(positive_support(job.pmf));
    joint *= static_cast<double>(supports.back().size());
  }
  if (exact && joint <= kExactSupportBudget) {
    r.expected_max_min_ratio = exact_max_min_ratio(supports);
    r.ratio_exact = true;
  } else {
    std::tie(r.expected_max_min_ratio, r.ratio_std_error) =
        expected_max_min_ratio_mc(instance, kRatioMonteCarloDraws, seed);
    r.ratio_exact = false;
  }

  // E[sigma_max] = sum_{t >= 0} (1 - prod_j F_j(t)).
  int tmax = 0;
  for (const Job& job : instance.jobs()) tmax = std::max(tmax, job.pmf.max_positive());
  r.expected_max = 0.0;
  for (int t = 0; t < tmax; ++t) {
    double all_done = 1.0;
    for (const Job& job : instance.jobs()) all_done *= job.pmf.cdf(t);
    r.expected_max += 1.0 - all_done;
  }
  r.min_mean = std::numeric_limits<double>::infinity();
  for (int j = 0; j < instance.num_jobs(); ++j)
    r.min_mean = std::min(r.min_mean, instance.mean_service(j));
  r.delta = r.expected_max / r.min_mean;

  r.max_expected_reward = 0.0;
  r.min_positive_expected_reward = std::numeric_limits<double>::infinity();
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int t = 0; t <= instance.max_deadline(); ++t) {
      const double e = instance.expected_reward(j, t);
      r.max_expected_reward = std::max(r.max_expected_reward, e);
      if (e > 0.0)
        r.min_positive_expected_reward = std::min(r.min_positive_expected_reward, e);
    }
  }
  if (!(r.max_expected_reward > 0.0)) throw InvalidInput("valueless instance");

  r.greedy_alpha = 1.0 + 2.0 * r.expected_max_min_ratio;
  r.rate_greedy_alpha = 2.0 + r.delta;
  r.iid = all_iid(instance);
  if (r.iid) {
    const Pmf& pmf = instance.job(0).pmf;
    r.p_min = pmf.cdf(pmf.min_positive());
    r.edf_alpha = 1.0 + r.max_expected_reward / r.min_positive_expected_reward;
    if (common_step_values(instance)) r.edf_step_alpha = 1.0 + 1.0 / *r.p_min;
  }
  return r;
}

std::vector<BoundCheck> verify_bounds(const Instance& instance,
                                      const SolveOptions& options) {
  const BoundReport report = compute_bounds(instance, true);
  const double v_star = optimal_value(instance, options);
  const double v_greedy = evaluate_policy_exact(instance, greedy_policy(), options);
  const double v_rate = evaluate_policy_exact(instance, rate_greedy_policy(), options);

  std::vector<BoundCheck> out;
  auto check = [&](std::string policy, std::string bound, double alpha, double v_pi) {
    const bool holds = v_star <= alpha * v_pi * (1.0 + kCheckTolerance) + kCheckTolerance;
    out.push_back({std::move(policy), std::move(bound), alpha, v_star, v_pi, holds});
  };
  check(std::string(kGreedy), "1+2E[smax/smin]", report.greedy_alpha, v_greedy);
  check(std::string(kRateGreedy), "2+Delta", report.rate_greedy_alpha, v_rate);
  if (report.iid) {
    const double v_edf = evaluate_policy_exact(instance, edf_policy(), options);
    check(std::string(kGreedy), "iid-2", 2.0, v_greedy);
    check(std::string(kRateGreedy), "iid-2", 2.0, v_rate);
    check(std::string(kEdf), "1+M/m", *report.edf_alpha, v_edf);
    if (report.edf_step_alpha)
      check(std::string(kEdf), "1+1/p_min", *report.edf_step_alpha, v_edf);
  }
  return out;
}

bool check_bound_ordering(const BoundReport& report) {
  constexpr double tol = 1e-12;
  const bool first = report.greedy_alpha + tol >= report.rate_greedy_alpha;
  const double m_ratio =
      report.max_expected_reward / report.min_positive_expected_reward;
  const bool second = 1.0 + m_ratio + tol >= 2.0;
  return first && second;
}

bool check_bound_ordering(const Instance& instance) {
  return check_bound_ordering(compute_bounds(instance, true));
}

}  // namespace decaysched
