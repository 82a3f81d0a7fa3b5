#include "decaysched/dp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "decaysched/error.hpp"

namespace decaysched {

namespace {

// Packed memo key: two bytes of slot index followed by one status byte per
// job (0 = not started, 1 = done, 2 + age = in service).
using Key = std::string;

constexpr unsigned char kWaiting = 0;
constexpr unsigned char kDone = 1;
constexpr unsigned char kAgeBase = 2;
constexpr int kMaxAge = 255 - kAgeBase;
constexpr int kMaxSlot = 0xFFFF;

// Ties within this margin keep the earlier action.
constexpr double kTieTolerance = 1e-12;

int key_slot(const Key& k) {
  return static_cast<unsigned char>(k[0]) | (static_cast<unsigned char>(k[1]) << 8);
}

void set_key_slot(Key& k, int t) {
  if (t > kMaxSlot) throw ResourceExhausted("dp: slot index exceeds key range");
  k[0] = static_cast<char>(t & 0xFF);
  k[1] = static_cast<char>((t >> 8) & 0xFF);
}

unsigned char code(const Key& k, int j) { return static_cast<unsigned char>(k[2 + j]); }

Key pack(const SystemState& s) {
  Key k(2 + s.backlog.size(), '\0');
  set_key_slot(k, s.t);
  for (std::size_t j = 0; j < s.backlog.size(); ++j) {
    const JobStatus& st = s.backlog[j];
    unsigned char c = kWaiting;
    if (st.phase == JobPhase::Done) c = kDone;
    if (st.phase == JobPhase::InService) {
      const int age = s.t - st.start_slot;
      if (age > kMaxAge) throw ResourceExhausted("dp: service age exceeds key range");
      c = static_cast<unsigned char>(kAgeBase + age);
    }
    k[2 + j] = static_cast<char>(c);
  }
  return k;
}

CanonicalState to_canonical(const Key& k) {
  CanonicalState c;
  c.t = key_slot(k);
  const int J = static_cast<int>(k.size()) - 2;
  for (int j = 0; j < J; ++j) {
    const unsigned char x = code(k, j);
    if (x == kWaiting) c.not_started.push_back(j);
    else if (x >= kAgeBase) c.in_service.emplace_back(j, x - kAgeBase);
  }
  return c;
}

// Calls emit(subset) for each k-subset of items in lexicographic order.
template <typename Emit>
void for_each_subset(const std::vector<int>& items, int k, Emit&& emit) {
  const int n = static_cast<int>(items.size());
  std::vector<int> idx(k), chosen(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    for (int i = 0; i < k; ++i) chosen[i] = items[idx[i]];
    emit(chosen);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int r = i + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
}

class Solver {
 public:
  Solver(const Instance& instance, const SolveOptions& options, const Policy* policy)
      : instance_(instance), options_(options), policy_(policy) {
    const int J = instance.num_jobs();
    hazards_.resize(J);
    for (int j = 0; j < J; ++j) {
      const Pmf& pmf = instance.job(j).pmf;
      hazards_[j].resize(pmf.max_positive());
      for (int age = 0; age < pmf.max_positive(); ++age)
        hazards_[j][age] = pmf.hazard(age);
    }
  }

  double value(const Key& key) {
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    if (values_.size() >= options_.state_budget)
      throw ResourceExhausted("dp: state budget of " +
                              std::to_string(options_.state_budget) +
                              " canonical states exceeded");
    double v = 0.0;
    std::vector<int> best_jobs;
    const bool terminal = is_terminal_key(key);
    if (!terminal) {
      double best = -std::numeric_limits<double>::infinity();
      auto consider = [&](const std::vector<int>& jobs) {
        const double q = action_value(key, jobs);
        if (q > best + kTieTolerance) {
          best = q;
          best_jobs = jobs;
        }
      };
      if (policy_ != nullptr) {
        consider(policy_jobs(key));
      } else {
        enumerate(key, consider);
      }
      v = best;
    }
    values_.emplace(key, v);
    if (!terminal && record_actions_) actions_.emplace(key, std::move(best_jobs));
    return v;
  }

  void record_actions() { record_actions_ = true; }

  SolveResult to_result(double root_value) const {
    SolveResult r;
    r.optimal_value = root_value;
    r.states_visited = values_.size();
    r.value_table.reserve(values_.size());
    for (const auto& [key, v] : values_) r.value_table.emplace(to_canonical(key), v);
    r.policy_table.reserve(actions_.size());
    for (const auto& [key, jobs] : actions_) {
      CanonicalState c = to_canonical(key);
      SystemState s = c.to_state(instance_);
      r.policy_table.emplace(std::move(c), assign_to_free_processors(s, jobs));
    }
    return r;
  }

 private:
  bool is_terminal_key(const Key& key) const {
    const int t = key_slot(key);
    int horizon = -1;
    bool pending = false;
    for (int j = 0; j < instance_.num_jobs(); ++j) {
      if (code(key, j) == kDone) continue;
      pending = true;
      horizon = std::max(horizon, instance_.job(j).decay.deadline());
    }
    return !pending || t > horizon;
  }

  template <typename Consider>
  void enumerate(const Key& key, Consider&& consider) {
    std::vector<int> waiting;
    int busy = 0;
    for (int j = 0; j < instance_.num_jobs(); ++j) {
      const unsigned char c = code(key, j);
      if (c == kWaiting) waiting.push_back(j);
      else if (c >= kAgeBase) ++busy;
    }
    const int kmax = std::min<int>(waiting.size(), instance_.num_processors() - busy);
    if (options_.action_space == ActionSpace::Maximal) {
      for_each_subset(waiting, kmax, consider);
    } else {
      for (int k = 0; k <= kmax; ++k) for_each_subset(waiting, k, consider);
    }
  }

  std::vector<int> policy_jobs(const Key& key) const {
    const SystemState s = to_canonical(key).to_state(instance_);
    const ScheduleAction a = (*policy_)(s, instance_);
    validate_action(s, a);
    return a.jobs();
  }

  // E[reward during slot t + V(next)] after starting `started` at slot t.
  double action_value(const Key& key, const std::vector<int>& started) {
    const int t = key_slot(key);
    Key next = key;
    set_key_slot(next, t + 1);
    for (int j : started) next[2 + j] = static_cast<char>(kAgeBase);

    std::vector<BusyJob> busy;
    busy.reserve(instance_.num_processors());
    for (int j = 0; j < instance_.num_jobs(); ++j) {
      const unsigned char c = code(next, j);
      if (c < kAgeBase) continue;
      const int age = c - kAgeBase;
      if (age >= static_cast<int>(hazards_[j].size()))
        throw InvalidInput("dp: job in service beyond its support");
      busy.push_back({j, hazards_[j][age], instance_.job(j).decay(t + 1)});
      if (age + 1 > kMaxAge) throw ResourceExhausted("dp: service age exceeds key range");
      next[2 + j] = static_cast<char>(c + 1);
    }
    const std::uint32_t subsets = 1u << busy.size();
    double total = 0.0;
    Key branch = next;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      double prob = 1.0;
      double reward = 0.0;
      for (std::size_t i = 0; i < busy.size(); ++i) {
        const BusyJob& b = busy[i];
        if (mask & (1u << i)) {
          prob *= b.hazard;
          reward += b.reward;
          branch[2 + b.job] = static_cast<char>(kDone);
        } else {
          prob *= 1.0 - b.hazard;
          branch[2 + b.job] = next[2 + b.job];
        }
      }
      if (!(prob > 0.0)) continue;
      total += prob * (reward + value(branch));
    }
    return total;
  }

  struct BusyJob {
    int job;
    double hazard;
    double reward;
  };

  const Instance& instance_;
  SolveOptions options_;
  const Policy* policy_;
  bool record_actions_ = false;
  std::vector<std::vector<double>> hazards_;
  std::unordered_map<Key, double> values_;
  std::unordered_map<Key, std::vector<int>> actions_;
};

void check_state(const Instance& instance, const SystemState& state) {
  validate_state(state, instance);
}

}  // namespace

CanonicalState CanonicalState::of(const SystemState& state) {
  CanonicalState c;
  c.t = state.t;
  for (int j = 0; j < static_cast<int>(state.backlog.size()); ++j) {
    const JobStatus& s = state.backlog[j];
    if (s.phase == JobPhase::NotStarted) c.not_started.push_back(j);
    else if (s.phase == JobPhase::InService)
      c.in_service.emplace_back(j, state.t - s.start_slot);
  }
  return c;
}

SystemState CanonicalState::to_state(const Instance& instance) const {
  SystemState s;
  s.t = t;
  s.backlog.assign(instance.num_jobs(), JobStatus::done());
  s.procs.assign(instance.num_processors(), kFreeProcessor);
  for (int j : not_started) s.backlog[j] = JobStatus::not_started();
  if (static_cast<int>(in_service.size()) > instance.num_processors())
    throw InvalidInput("canonical state: more jobs in service than processors");
  for (std::size_t n = 0; n < in_service.size(); ++n) {
    const auto [j, age] = in_service[n];
    s.backlog[j] = JobStatus::in_service(t - age);
    s.procs[n] = j;
  }
  return s;
}

std::size_t CanonicalStateHash::operator()(const CanonicalState& s) const {
  std::size_t h = std::hash<int>{}(s.t);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int j : s.not_started) mix(static_cast<std::size_t>(j) * 2 + 1);
  mix(0xffff);
  for (auto [j, age] : s.in_service) mix((static_cast<std::size_t>(j) << 20) ^ age);
  return h;
}

SolveResult solve_optimal(const Instance& instance, const SolveOptions& options) {
  return solve_optimal_from(instance, SystemState::initial(instance), options);
}

SolveResult solve_optimal_from(const Instance& instance, const SystemState& state,
                               const SolveOptions& options) {
  check_state(instance, state);
  Solver solver(instance, options, nullptr);
  solver.record_actions();
  const double v = solver.value(pack(state));
  return solver.to_result(v);
}

double optimal_value(const Instance& instance, const SolveOptions& options) {
  return optimal_value_from(instance, SystemState::initial(instance), options);
}

double optimal_value_from(const Instance& instance, const SystemState& state,
                          const SolveOptions& options) {
  check_state(instance, state);
  Solver solver(instance, options, nullptr);
  return solver.value(pack(state));
}

double evaluate_policy_exact(const Instance& instance, const Policy& policy,
                             const SolveOptions& options) {
  return evaluate_policy_from(instance, policy, SystemState::initial(instance), options);
}

double evaluate_policy_from(const Instance& instance, const Policy& policy,
                            const SystemState& state, const SolveOptions& options) {
  check_state(instance, state);
  Solver solver(instance, options, &policy);
  return solver.value(pack(state));
}

double value_ratio(double optimal, double policy_value) {
  if (policy_value > 0.0) return optimal / policy_value;
  if (optimal > 0.0) return std::numeric_limits<double>::infinity();
  return 1.0;
}

double value_ratio(const Instance& instance, const Policy& policy,
                   const SolveOptions& options) {
  return value_ratio(optimal_value(instance, options),
                     evaluate_policy_exact(instance, policy, options));
}

Policy table_policy(std::shared_ptr<const SolveResult> result, SolveOptions options) {
  return Policy(std::string(kOptimal),
                [result = std::move(result), options](const SystemState& state,
                                                      const Instance& instance) {
                  const CanonicalState c = CanonicalState::of(state);
                  if (auto it = result->policy_table.find(c);
                      it != result->policy_table.end())
                    return assign_to_free_processors(state, it->second.jobs());
                  if (is_terminal(state, instance))
                    return enumerate_actions(state, instance).front();
                  const SolveResult local = solve_optimal_from(instance, state, options);
                  return assign_to_free_processors(
                      state, local.policy_table.at(c).jobs());
                });
}

}  // namespace decaysched
