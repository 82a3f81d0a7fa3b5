#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "decaysched/decay.hpp"
#include "decaysched/model.hpp"
#include "decaysched/pmf.hpp"
#include "decaysched/policies.hpp"
#include "decaysched/rng.hpp"

namespace testing {

using namespace decaysched;

inline Job make_job(int id, std::vector<double> pmf, DecayFunction decay) {
  return Job{id, Pmf(std::move(pmf)), std::move(decay)};
}

// High-variance job 1 (sigma = 1 or 100) against a sure short job 2.
inline Instance high_variance_pair(double delta) {
  std::vector<double> p(100, 0.0);
  p[0] = 0.99;
  p[99] = 0.01;
  return Instance({make_job(0, p, DecayFunction::step(1.0, 1)),
                   make_job(1, {1.0}, DecayFunction::step(1.0 - delta, 1))},
                  1);
}

// Short urgent job 1 against a longer, more valuable job 2.
inline Instance short_vs_long_pair(double delta) {
  return Instance({make_job(0, {1.0}, DecayFunction::step(1.0 - delta, 1)),
                   make_job(1, {0.0, 1.0}, DecayFunction::step(1.0, 3))},
                  1);
}

// IID sigma in {1, 2} with P(1) = eps; hard deadlines 1 and 2.
inline Instance deadline_pair(double eps) {
  return Instance({make_job(0, {eps, 1.0 - eps}, DecayFunction::step(1.0, 1)),
                   make_job(1, {eps, 1.0 - eps}, DecayFunction::step(1.0, 2))},
                  1);
}

// Unit jobs, v1 = (1 - eps) 1{t <= 1}, v2 = 1 over the whole horizon.
inline Instance two_approx_pair(double eps) {
  return Instance({make_job(0, {1.0}, DecayFunction::step(1.0 - eps, 1)),
                   make_job(1, {1.0}, DecayFunction::step(1.0, 2))},
                  1);
}

// Random PMF on {1..T}, some entries zeroed.
inline std::vector<double> random_pmf(Rng& rng, int T) {
  std::vector<double> w(T);
  for (double& x : w) x = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
  if (std::accumulate(w.begin(), w.end(), 0.0) <= 0.0) w[rng.uniform_int(0, T - 1)] = 1.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

inline DecayFunction random_decay(Rng& rng, int T) {
  const double b = rng.uniform();
  const int c = rng.uniform_int(1, T);
  switch (rng.uniform_int(0, 2)) {
    case 0: return DecayFunction::step(b, c);
    case 1: return DecayFunction::linear(b, c);
    default: return DecayFunction::exponential(b, c);
  }
}

// Random instance with J in [1, Jmax], N in [1, Nmax], T in [1, Tmax].
inline Instance random_instance(Rng& rng, int Jmax = 5, int Nmax = 2, int Tmax = 5,
                                bool iid = false) {
  const int J = rng.uniform_int(1, Jmax);
  const int N = rng.uniform_int(1, Nmax);
  const int T = rng.uniform_int(1, Tmax);
  const std::vector<double> shared = random_pmf(rng, T);
  std::vector<Job> jobs;
  for (int j = 0; j < J; ++j)
    jobs.push_back(make_job(j, iid ? shared : random_pmf(rng, T), random_decay(rng, T)));
  return Instance(std::move(jobs), N, T + 1);
}

inline std::string state_key(const SystemState& s) {
  std::string key = std::to_string(s.t) + "|";
  for (const JobStatus& b : s.backlog)
    key += std::to_string(static_cast<int>(b.phase)) + ":" + std::to_string(b.start_slot) + ",";
  key += "|";
  for (int p : s.procs) key += std::to_string(p) + ",";
  return key;
}

// Plain Bellman recursion over model::transition, memoized on the full
// (uncanonicalized) state. policy == nullptr means maximize.
class ReferenceDp {
 public:
  ReferenceDp(const Instance& instance, const Policy* policy = nullptr,
              bool all_actions = false)
      : instance_(instance), policy_(policy), all_actions_(all_actions) {}

  double value(const SystemState& s) {
    if (is_terminal(s, instance_)) return 0.0;
    const std::string key = state_key(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<ScheduleAction> actions;
    if (policy_)
      actions.push_back((*policy_)(s, instance_));
    else
      actions = all_actions_ ? enumerate_all_actions(s, instance_)
                             : enumerate_actions(s, instance_);
    double best = -1.0;
    for (const ScheduleAction& a : actions) best = std::max(best, q_value(s, a));
    memo_[key] = best;
    return best;
  }

  double q_value(const SystemState& s, const ScheduleAction& a) {
    double q = 0.0;
    for (const TransitionOutcome& o : transition(s, a, instance_))
      q += o.probability * (o.reward + value(o.next_state));
    return q;
  }

 private:
  const Instance& instance_;
  const Policy* policy_;
  bool all_actions_;
  std::unordered_map<std::string, double> memo_;
};

inline double reference_optimal(const Instance& instance) {
  return ReferenceDp(instance).value(SystemState::initial(instance));
}
inline double reference_policy_value(const Instance& instance, const Policy& policy) {
  return ReferenceDp(instance, &policy).value(SystemState::initial(instance));
}

// A state reached by a random walk of `steps` slots under random feasible
// actions and randomly sampled completions.
inline SystemState random_reachable_state(const Instance& instance, Rng& rng, int steps) {
  SystemState s = SystemState::initial(instance);
  for (int k = 0; k < steps && !is_terminal(s, instance); ++k) {
    const auto actions = enumerate_all_actions(s, instance);
    const ScheduleAction& a = actions[rng.uniform_int(0, static_cast<int>(actions.size()) - 1)];
    const auto outcomes = transition(s, a, instance);
    double u = rng.uniform();
    std::size_t pick = outcomes.size() - 1;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (u < outcomes[i].probability) {
        pick = i;
        break;
      }
      u -= outcomes[i].probability;
    }
    s = outcomes[pick].next_state;
  }
  return s;
}

}  // namespace testing
