#include "decaysched/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <string>

#include "decaysched/error.hpp"
#include "decaysched/parallel.hpp"
#include "decaysched/rng.hpp"

namespace decaysched {

namespace {

constexpr std::uint64_t kInstanceStream = 0;
constexpr std::uint64_t kServiceStream = 1;

}  // namespace

ServiceDraws ServiceDraws::forced(std::vector<int> durations) {
  ServiceDraws d;
  d.forced_ = std::move(durations);
  return d;
}

ServiceDraws ServiceDraws::sampled(std::uint64_t seed, int num_jobs) {
  ServiceDraws d;
  d.uniforms_.resize(num_jobs);
  for (int j = 0; j < num_jobs; ++j)
    d.uniforms_[j] = Rng(derive_seed(seed, {static_cast<std::uint64_t>(j)})).uniform();
  return d;
}

int ServiceDraws::draw(int job, const Pmf& pmf) const {
  if (!uniforms_.empty()) {
    if (job < 0 || job >= static_cast<int>(uniforms_.size()))
      throw InvalidInput("service draws: no draw for job " + std::to_string(job));
    return pmf.quantile(uniforms_[job]);
  }
  if (job < 0 || job >= static_cast<int>(forced_.size()))
    throw InvalidInput("service draws: no draw for job " + std::to_string(job));
  const int sigma = forced_[job];
  if (!(pmf.prob(sigma) > 0.0))
    throw InvalidInput("service draws: duration " + std::to_string(sigma) +
                       " for job " + std::to_string(job) +
                       " is outside its PMF support");
  return sigma;
}

double served_fraction(std::span<const JobCompletion> completions) {
  if (completions.empty()) return 1.0;
  const auto served = std::count_if(completions.begin(), completions.end(),
                                    [](const JobCompletion& c) { return c.served; });
  return static_cast<double>(served) / static_cast<double>(completions.size());
}

RolloutResult rollout(const Instance& instance, const Policy& policy,
                      const ServiceDraws& draws) {
  SystemState state = SystemState::initial(instance);
  RolloutResult result;
  result.completions.resize(instance.num_jobs());
  std::vector<int> finish(instance.num_processors(), 0);

  auto complete = [&](int proc) {
    const int j = state.procs[proc];
    const int slot = finish[proc];
    const double v = instance.job(j).decay(slot);
    result.completions[j] = {true, slot, v, slot <= instance.job(j).decay.deadline()};
    result.total_value += v;
    state.backlog[j] = JobStatus::done();
    state.procs[proc] = kFreeProcessor;
  };

  while (!is_terminal(state, instance)) {
    bool waiting = false;
    for (const JobStatus& s : state.backlog)
      waiting = waiting || s.phase == JobPhase::NotStarted;
    if (waiting && state.num_free() > 0) {
      const ScheduleAction action = policy(state, instance);
      validate_action(state, action);
      for (const Assignment& a : action.assignments) {
        const int sigma = draws.draw(a.job, instance.job(a.job).pmf);
        state.backlog[a.job] = JobStatus::in_service(state.t);
        state.procs[a.processor] = a.job;
        finish[a.processor] = state.t + sigma;
      }
    }

    // Next decision point: the next completion, or the next slot if the
    // policy left a schedulable processor idle.
    int next = std::numeric_limits<int>::max();
    for (int n = 0; n < instance.num_processors(); ++n)
      if (state.procs[n] != kFreeProcessor) next = std::min(next, finish[n]);
    const bool idle_choice = state.num_free() > 0 && !state.not_started().empty();
    if (idle_choice) next = std::min(next, state.t + 1);
    if (next == std::numeric_limits<int>::max()) break;

    for (int n = 0; n < instance.num_processors(); ++n)
      if (state.procs[n] != kFreeProcessor && finish[n] == next) complete(n);
    state.t = next;
  }

  for (int n = 0; n < instance.num_processors(); ++n)
    if (state.procs[n] != kFreeProcessor) complete(n);
  result.served_fraction = served_fraction(result.completions);
  return result;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MCStats MCStats::from_samples(std::span<const double> samples) {
  MCStats s;
  s.n = samples.size();
  if (s.n == 0) return s;
  s.mean = pairwise_sum(samples) / static_cast<double>(s.n);
  if (s.n > 1) {
    std::vector<double> sq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
      sq[i] = (samples[i] - s.mean) * (samples[i] - s.mean);
    const double var = pairwise_sum(sq) / static_cast<double>(s.n - 1);
    s.std_error = std::sqrt(var / static_cast<double>(s.n));
  }
  return s;
}

std::vector<PolicyStats> monte_carlo(const ScenarioSpec& spec,
                                     const std::vector<std::string>& policies,
                                     std::size_t reps, std::uint64_t seed,
                                     const SolveOptions& options) {
  if (reps < 1) throw InvalidInput("monte_carlo: reps must be >= 1");
  validate(spec);
  std::vector<std::string> names;
  for (const std::string& p : policies) names.push_back(canonical_policy_name(p));

  const std::size_t P = names.size();
  std::vector<std::vector<double>> values(P, std::vector<double>(reps));
  std::vector<std::vector<double>> served(P, std::vector<double>(reps));
  parallel_for(reps, [&](std::size_t r) {
    Rng rng(derive_seed(seed, {r, kInstanceStream}));
    const Instance instance = sample_instance(spec, rng);
    const ServiceDraws draws =
        ServiceDraws::sampled(derive_seed(seed, {r, kServiceStream}), instance.num_jobs());
    for (std::size_t p = 0; p < P; ++p) {
      const Policy policy =
          names[p] == kOptimal
              ? table_policy(std::make_shared<const SolveResult>(
                                 solve_optimal(instance, options)),
                             options)
              : heuristic_policy(names[p]);
      const RolloutResult res = rollout(instance, policy, draws);
      values[p][r] = res.total_value;
      served[p][r] = res.served_fraction;
    }
  });

  std::vector<PolicyStats> out;
  for (std::size_t p = 0; p < P; ++p)
    out.push_back({names[p], MCStats::from_samples(values[p]),
                   MCStats::from_samples(served[p])});
  return out;
}

PolicyStats simulate_instance(const Instance& instance, const Policy& policy,
                              std::size_t reps, std::uint64_t seed) {
  if (reps < 1) throw InvalidInput("simulate_instance: reps must be >= 1");
  std::vector<double> values(reps), served(reps);
  parallel_for(reps, [&](std::size_t r) {
    const ServiceDraws draws =
        ServiceDraws::sampled(derive_seed(seed, {r, kServiceStream}), instance.num_jobs());
    const RolloutResult res = rollout(instance, policy, draws);
    values[r] = res.total_value;
    served[r] = res.served_fraction;
  });
  return {policy.name(), MCStats::from_samples(values), MCStats::from_samples(served)};
}

std::vector<AlphaStats> estimate_alphas(const ScenarioSpec& spec,
                                        const std::vector<std::string>& policies,
                                        std::size_t reps, std::uint64_t seed,
                                        const SolveOptions& options) {
  if (reps < 1) throw InvalidInput("estimate_alpha: reps must be >= 1");
  validate(spec);
  std::vector<std::string> names;
  for (const std::string& p : policies) names.push_back(canonical_policy_name(p));
  const std::size_t P = names.size();
  std::vector<std::vector<double>> ratios(P, std::vector<double>(reps));
  parallel_for(reps, [&](std::size_t r) {
    Rng rng(derive_seed(seed, {r, kInstanceStream}));
    const Instance instance = sample_instance(spec, rng);
    const double v_star = optimal_value(instance, options);
    for (std::size_t p = 0; p < P; ++p) {
      const double v_pi = names[p] == kOptimal
                              ? v_star
                              : evaluate_policy_exact(instance, heuristic_policy(names[p]),
                                                      options);
      ratios[p][r] = value_ratio(v_star, v_pi);
    }
  });

  std::vector<AlphaStats> out;
  for (std::size_t p = 0; p < P; ++p) {
    std::vector<double> finite;
    finite.reserve(reps);
    for (double x : ratios[p])
      if (std::isfinite(x)) finite.push_back(x);
    AlphaStats a;
    a.policy = names[p];
    a.ratio = MCStats::from_samples(finite);
    a.zero_value_count = reps - finite.size();
    a.reps = reps;
    out.push_back(std::move(a));
  }
  return out;
}

AlphaStats estimate_alpha(const ScenarioSpec& spec, const std::string& policy,
                          std::size_t reps, std::uint64_t seed,
                          const SolveOptions& options) {
  return estimate_alphas(spec, {policy}, reps, seed, options).front();
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kResultsCsvHeader << '\n';
  const auto old_precision = out.precision(10);
  for (const ResultRow& r : rows) {
    out << r.scenario << ',' << r.policy << ',' << r.num_jobs << ','
        << r.num_processors << ',' << r.slots << ',' << r.reps << ','
        << r.value.mean << ',' << r.value.std_error << ','
        << r.served_fraction.mean << ',' << r.served_fraction.std_error << ','
        << r.seed << '\n';
  }
  out.precision(old_precision);
}

}  // namespace decaysched
