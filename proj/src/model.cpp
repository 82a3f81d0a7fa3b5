#include "decaysched/model.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "decaysched/error.hpp"

namespace decaysched {

double expected_completion_reward(const Job& job, int t) {
  if (t < 0) throw InvalidInput("expected_completion_reward: negative slot");
  const int deadline = job.decay.deadline();
  const int last = std::min(job.pmf.max_support(), deadline - t);
  double sum = 0.0;
  for (int k = 1; k <= last; ++k) sum += job.pmf.prob(k) * job.decay(t + k);
  return sum;
}

double hazard(const Job& job, int age) { return job.pmf.hazard(age); }

namespace {

int max_deadline_of(const std::vector<Job>& jobs) {
  int d = -1;
  for (const Job& job : jobs) d = std::max(d, job.decay.deadline());
  return d;
}

}  // namespace

Instance::Instance(std::vector<Job> jobs, int num_processors)
    : Instance(jobs, num_processors, std::max(1, max_deadline_of(jobs) + 1)) {}

Instance::Instance(std::vector<Job> jobs, int num_processors, int horizon)
    : jobs_(std::move(jobs)),
      num_processors_(num_processors),
      horizon_(horizon),
      max_deadline_(max_deadline_of(jobs_)) {
  if (jobs_.empty()) throw InvalidInput("instance: at least one job required");
  if (num_processors_ < 1)
    throw InvalidInput("instance: at least one processor required");
  for (int j = 0; j < num_jobs(); ++j)
    if (jobs_[j].id != j)
      throw InvalidInput("instance: job ids must equal their positions");
  if (horizon_ < max_deadline_ + 1)
    throw InvalidInput("instance: horizon " + std::to_string(horizon_) +
                       " is shorter than max deadline + 1 = " +
                       std::to_string(max_deadline_ + 1));

  expected_.assign(static_cast<std::size_t>(num_jobs()) * (horizon_ + 1), 0.0);
  for (int j = 0; j < num_jobs(); ++j)
    for (int t = 0; t <= std::min(horizon_, jobs_[j].decay.deadline()); ++t)
      expected_[static_cast<std::size_t>(j) * (horizon_ + 1) + t] =
          expected_completion_reward(jobs_[j], t);
}

SystemState SystemState::initial(const Instance& instance) {
  SystemState s;
  s.t = 0;
  s.backlog.assign(instance.num_jobs(), JobStatus::not_started());
  s.procs.assign(instance.num_processors(), kFreeProcessor);
  return s;
}

std::vector<int> SystemState::not_started() const {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(backlog.size()); ++j)
    if (backlog[j].phase == JobPhase::NotStarted) out.push_back(j);
  return out;
}

std::vector<int> SystemState::free_processors() const {
  std::vector<int> out;
  for (int n = 0; n < static_cast<int>(procs.size()); ++n)
    if (procs[n] == kFreeProcessor) out.push_back(n);
  return out;
}

int SystemState::num_free() const {
  return static_cast<int>(std::count(procs.begin(), procs.end(), kFreeProcessor));
}

bool SystemState::all_done() const {
  return std::all_of(backlog.begin(), backlog.end(), [](const JobStatus& s) {
    return s.phase == JobPhase::Done;
  });
}

void validate_state(const SystemState& state, const Instance& instance) {
  if (static_cast<int>(state.backlog.size()) != instance.num_jobs() ||
      static_cast<int>(state.procs.size()) != instance.num_processors())
    throw InvalidInput("state: dimensions do not match the instance");
  if (state.t < 0) throw InvalidInput("state: negative slot");
  std::vector<int> holders(instance.num_jobs(), 0);
  for (int p : state.procs) {
    if (p == kFreeProcessor) continue;
    if (p < 0 || p >= instance.num_jobs())
      throw InvalidInput("state: processor holds an unknown job");
    ++holders[p];
  }
  for (int j = 0; j < instance.num_jobs(); ++j) {
    const JobStatus& s = state.backlog[j];
    const bool in_service = s.phase == JobPhase::InService;
    if (in_service != (holders[j] == 1) || holders[j] > 1)
      throw InvalidInput("state: job " + std::to_string(j) +
                         " service status disagrees with processors");
    if (in_service && !(s.start_slot < state.t))
      throw InvalidInput("state: in-service start slot must precede t");
  }
}

std::vector<int> ScheduleAction::jobs() const {
  std::vector<int> out;
  out.reserve(assignments.size());
  for (const Assignment& a : assignments) out.push_back(a.job);
  return out;
}

ScheduleAction assign_to_free_processors(const SystemState& state,
                                         std::vector<int> jobs) {
  std::sort(jobs.begin(), jobs.end());
  ScheduleAction action;
  action.assignments.reserve(jobs.size());
  std::size_t i = 0;
  for (int n = 0; n < static_cast<int>(state.procs.size()) && i < jobs.size(); ++n)
    if (state.procs[n] == kFreeProcessor) action.assignments.push_back({jobs[i++], n});
  if (i != jobs.size())
    throw InvalidInput("action: more jobs than free processors");
  return action;
}

void validate_action(const SystemState& state, const ScheduleAction& action) {
  std::vector<bool> job_used(state.backlog.size(), false);
  std::vector<bool> proc_used(state.procs.size(), false);
  for (const Assignment& a : action.assignments) {
    if (a.job < 0 || a.job >= static_cast<int>(state.backlog.size()) ||
        a.processor < 0 || a.processor >= static_cast<int>(state.procs.size()))
      throw InvalidInput("action: assignment out of range");
    if (job_used[a.job] || proc_used[a.processor])
      throw InvalidInput("action: duplicate job or processor");
    job_used[a.job] = proc_used[a.processor] = true;
    if (state.backlog[a.job].phase != JobPhase::NotStarted)
      throw InvalidInput("action: job " + std::to_string(a.job) +
                         " is not schedulable");
    if (state.procs[a.processor] != kFreeProcessor)
      throw InvalidInput("action: processor " + std::to_string(a.processor) +
                         " is busy");
  }
}

namespace {

// Appends every k-subset of `items` in lexicographic order.
void for_each_subset(const std::vector<int>& items, int k,
                     const std::function<void(const std::vector<int>&)>& emit) {
  const int n = static_cast<int>(items.size());
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> chosen(k);
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

}  // namespace

std::vector<ScheduleAction> enumerate_actions(const SystemState& state,
                                              const Instance& instance) {
  (void)instance;
  const std::vector<int> waiting = state.not_started();
  const int k = std::min<int>(waiting.size(), state.num_free());
  std::vector<ScheduleAction> out;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  for_each_subset(waiting, k, [&](const std::vector<int>& jobs) {
    out.push_back(assign_to_free_processors(state, jobs));
  });
  return out;
}

std::vector<ScheduleAction> enumerate_all_actions(const SystemState& state,
                                                  const Instance& instance) {
  (void)instance;
  const std::vector<int> waiting = state.not_started();
  const int kmax = std::min<int>(waiting.size(), state.num_free());
  std::vector<ScheduleAction> out;
  out.emplace_back();
  for (int k = 1; k <= kmax; ++k)
    for_each_subset(waiting, k, [&](const std::vector<int>& jobs) {
      out.push_back(assign_to_free_processors(state, jobs));
    });
  return out;
}

std::vector<TransitionOutcome> transition(const SystemState& state,
                                          const ScheduleAction& action,
                                          const Instance& instance) {
  validate_action(state, action);
  SystemState started = state;
  for (const Assignment& a : action.assignments) {
    started.backlog[a.job] = JobStatus::in_service(state.t);
    started.procs[a.processor] = a.job;
  }

  struct Busy {
    int processor;
    int job;
    double hazard;
    double reward;
  };
  std::vector<Busy> busy;
  for (int n = 0; n < static_cast<int>(started.procs.size()); ++n) {
    const int j = started.procs[n];
    if (j == kFreeProcessor) continue;
    const int age = state.t - started.backlog[j].start_slot;
    busy.push_back({n, j, hazard(instance.job(j), age),
                    instance.job(j).decay(state.t + 1)});
  }

  std::vector<TransitionOutcome> out;
  const std::uint32_t subsets = 1u << busy.size();
  out.reserve(subsets);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    double prob = 1.0;
    double reward = 0.0;
    for (std::size_t i = 0; i < busy.size() && prob > 0.0; ++i) {
      if (mask & (1u << i)) {
        prob *= busy[i].hazard;
        reward += busy[i].reward;
      } else {
        prob *= 1.0 - busy[i].hazard;
      }
    }
    if (!(prob > 0.0)) continue;
    TransitionOutcome o{started, prob, reward};
    o.next_state.t = state.t + 1;
    for (std::size_t i = 0; i < busy.size(); ++i) {
      if (mask & (1u << i)) {
        o.next_state.backlog[busy[i].job] = JobStatus::done();
        o.next_state.procs[busy[i].processor] = kFreeProcessor;
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

bool is_terminal(const SystemState& state, const Instance& instance) {
  int horizon = -1;
  bool pending = false;
  for (int j = 0; j < static_cast<int>(state.backlog.size()); ++j) {
    if (state.backlog[j].phase == JobPhase::Done) continue;
    pending = true;
    horizon = std::max(horizon, instance.job(j).decay.deadline());
  }
  return !pending || state.t > horizon;
}

}  // namespace decaysched
