#pragma once

#include <cstdint>
#include <vector>

#include "decaysched/decay.hpp"
#include "decaysched/pmf.hpp"

namespace decaysched {

struct Job {
  int id = 0;
  Pmf pmf;
  DecayFunction decay;
};

// E[v(t + sigma)] computed directly from the job's PMF and decay curve.
double expected_completion_reward(const Job& job, int t);

// P(sigma = age + 1 | sigma >= age + 1) for a job that has been in service
// for `age` slots.
double hazard(const Job& job, int age);

// A complete problem: jobs (ids 0..J-1, matching their position), identical
// processors and a simulation horizon in slots. Immutable; caches
// E[v_j(t + sigma_j)] for t in [0, horizon].
class Instance {
 public:
  Instance(std::vector<Job> jobs, int num_processors, int horizon);
  // Horizon chosen as max deadline + 1.
  Instance(std::vector<Job> jobs, int num_processors);

  const std::vector<Job>& jobs() const { return jobs_; }
  const Job& job(int j) const { return jobs_[j]; }
  int num_jobs() const { return static_cast<int>(jobs_.size()); }
  int num_processors() const { return num_processors_; }
  int horizon() const { return horizon_; }
  // Largest deadline over all jobs (-1 if every job is worthless).
  int max_deadline() const { return max_deadline_; }

  // Cached expected_completion_reward(job(j), t); zero past the horizon.
  double expected_reward(int j, int t) const {
    if (t < 0) t = 0;
    if (t > horizon_) return 0.0;
    return expected_[static_cast<std::size_t>(j) * (horizon_ + 1) + t];
  }
  double mean_service(int j) const { return jobs_[j].pmf.mean(); }

 private:
  std::vector<Job> jobs_;
  int num_processors_;
  int horizon_;
  int max_deadline_ = -1;
  std::vector<double> expected_;
};

enum class JobPhase : std::uint8_t { NotStarted, InService, Done };

struct JobStatus {
  JobPhase phase = JobPhase::NotStarted;
  int start_slot = 0;  // meaningful only while InService

  static JobStatus not_started() { return {JobPhase::NotStarted, 0}; }
  static JobStatus in_service(int start) { return {JobPhase::InService, start}; }
  static JobStatus done() { return {JobPhase::Done, 0}; }

  bool operator==(const JobStatus&) const = default;
};

inline constexpr int kFreeProcessor = -1;

// Observable state at the beginning of slot t: the status of every job and
// the occupant of every processor.
struct SystemState {
  int t = 0;
  std::vector<JobStatus> backlog;
  std::vector<int> procs;  // job id or kFreeProcessor

  static SystemState initial(const Instance& instance);

  std::vector<int> not_started() const;
  std::vector<int> free_processors() const;
  int num_free() const;
  bool all_done() const;

  bool operator==(const SystemState&) const = default;
};

// Throws InvalidInput when the state is inconsistent with the instance.
void validate_state(const SystemState& state, const Instance& instance);

struct Assignment {
  int job = 0;
  int processor = 0;
  bool operator==(const Assignment&) const = default;
};

struct ScheduleAction {
  std::vector<Assignment> assignments;  // sorted by job id

  std::vector<int> jobs() const;
  bool empty() const { return assignments.empty(); }
  bool operator==(const ScheduleAction&) const = default;
};

// Canonical action for a job set: jobs sorted by id are placed on the free
// processors in increasing index order.
ScheduleAction assign_to_free_processors(const SystemState& state,
                                         std::vector<int> jobs);

// Throws InvalidInput unless every assignment pairs a distinct NotStarted job
// with a distinct free processor.
void validate_action(const SystemState& state, const ScheduleAction& action);

// Maximal (non-idling) actions: every C(K, min(K, M)) job subset, in
// lexicographic order of the sorted job ids. A single empty action when
// nothing can be scheduled.
std::vector<ScheduleAction> enumerate_actions(const SystemState& state,
                                              const Instance& instance);

// Every feasible action, including idling ones (all subsets of size
// 0..min(K, M)), ordered by size then lexicographically.
std::vector<ScheduleAction> enumerate_all_actions(const SystemState& state,
                                                  const Instance& instance);

struct TransitionOutcome {
  SystemState next_state;
  double probability = 0.0;
  double reward = 0.0;  // value of the jobs completing at the end of the slot
};

// Starts the action's jobs at slot t and resolves which busy processors
// finish during the slot. A job started at slot s with service sigma
// occupies slots s..s+sigma-1, earns v(s + sigma) and frees its processor at
// slot s + sigma. Zero-probability branches are omitted.
std::vector<TransitionOutcome> transition(const SystemState& state,
                                          const ScheduleAction& action,
                                          const Instance& instance);

// True when every job is done or t exceeds the deadline of every job that is
// not yet done, after which no reward can be earned.
bool is_terminal(const SystemState& state, const Instance& instance);

}  // namespace decaysched
