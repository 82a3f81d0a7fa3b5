#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "decaysched/dp.hpp"
#include "decaysched/generators.hpp"
#include "decaysched/model.hpp"
#include "decaysched/policies.hpp"

namespace decaysched {

// Realized service times, one per job. Sampled draws come from a separate
// substream per job and are resolved against the job's PMF only when the job
// is scheduled, so every policy sees the same sigma_j whatever order it
// schedules jobs in.
class ServiceDraws {
 public:
  static ServiceDraws forced(std::vector<int> durations);
  static ServiceDraws sampled(std::uint64_t seed, int num_jobs);

  // Throws InvalidInput for a forced duration outside the PMF's support.
  int draw(int job, const Pmf& pmf) const;

 private:
  std::vector<int> forced_;
  std::vector<double> uniforms_;
};

struct JobCompletion {
  bool completed = false;
  int completion_slot = -1;
  double value = 0.0;
  bool served = false;  // completed no later than the job's deadline
};

struct RolloutResult {
  double total_value = 0.0;
  std::vector<JobCompletion> completions;
  double served_fraction = 1.0;
};

// Fraction of jobs served by their deadline; 1 for an empty job list.
double served_fraction(std::span<const JobCompletion> completions);

// Simulates one sample path slot by slot until every job is done or no
// reward remains reachable. Jobs still in service at that point are
// recorded with their (worthless) completion.
RolloutResult rollout(const Instance& instance, const Policy& policy,
                      const ServiceDraws& draws);

struct MCStats {
  std::size_t n = 0;
  double mean = 0.0;
  double std_error = 0.0;  // unbiased sample std / sqrt(n)

  static MCStats from_samples(std::span<const double> samples);
};

// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);

struct PolicyStats {
  std::string policy;
  MCStats value;
  MCStats served_fraction;
};

// Replication r draws its instance from derive_seed(seed, {r, 0}) and its
// service times from derive_seed(seed, {r, 1}); every policy replays the
// same instance and draws. "optimal" solves each instance exactly.
std::vector<PolicyStats> monte_carlo(const ScenarioSpec& spec,
                                     const std::vector<std::string>& policies,
                                     std::size_t reps, std::uint64_t seed,
                                     const SolveOptions& options = {});

// Repeated rollouts of one fixed instance with fresh service draws.
PolicyStats simulate_instance(const Instance& instance, const Policy& policy,
                              std::size_t reps, std::uint64_t seed);

struct AlphaStats {
  std::string policy;
  MCStats ratio;                   // over replications with finite V*/V^pi
  std::size_t zero_value_count = 0;  // replications with V^pi = 0 < V*
  std::size_t reps = 0;
};

// Per replication: sample an instance, compute V* and V^pi exactly, record
// V*/V^pi. The mean is of ratios, not a ratio of means.
std::vector<AlphaStats> estimate_alphas(const ScenarioSpec& spec,
                                        const std::vector<std::string>& policies,
                                        std::size_t reps, std::uint64_t seed,
                                        const SolveOptions& options = {});
AlphaStats estimate_alpha(const ScenarioSpec& spec, const std::string& policy,
                          std::size_t reps, std::uint64_t seed,
                          const SolveOptions& options = {});

// One row of the simulation results CSV.
struct ResultRow {
  std::string scenario;
  std::string policy;
  int num_jobs = 0;
  int num_processors = 0;
  int slots = 0;
  std::size_t reps = 0;
  MCStats value;
  MCStats served_fraction;
  std::uint64_t seed = 0;
};

inline constexpr const char* kResultsCsvHeader =
    "scenario,policy,J,N,T,reps,mean,std_error,served_fraction_mean,"
    "served_fraction_se,seed";

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);

}  // namespace decaysched
