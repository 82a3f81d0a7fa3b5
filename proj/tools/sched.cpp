#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "decaysched/bounds.hpp"
#include "decaysched/dp.hpp"
#include "decaysched/error.hpp"
#include "decaysched/experiments.hpp"
#include "decaysched/io.hpp"
#include "decaysched/policies.hpp"
#include "decaysched/simulator.hpp"

namespace ds = decaysched;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> names;
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) names.push_back(ds::canonical_policy_name(item));
  if (names.empty()) throw ds::InvalidInput("no policies given");
  return names;
}

int run_solve(const std::string& path, const std::string& policy_name, bool dump,
              std::size_t budget) {
  const ds::Instance instance = ds::instance_from_json(ds::read_json_file(path));
  ds::SolveOptions options;
  options.state_budget = budget;
  auto solved = std::make_shared<ds::SolveResult>(ds::solve_optimal(instance, options));

  nlohmann::json out = {{"optimal_value", solved->optimal_value},
                        {"states_visited", solved->states_visited}};
  if (!policy_name.empty()) {
    const std::string name = ds::canonical_policy_name(policy_name);
    const double value =
        name == ds::kOptimal
            ? solved->optimal_value
            : ds::evaluate_policy_exact(instance, ds::heuristic_policy(name), options);
    out["policy"] = name;
    out["policy_value"] = value;
    const double ratio = ds::value_ratio(solved->optimal_value, value);
    if (std::isfinite(ratio))
      out["ratio"] = ratio;
    else
      out["ratio"] = "inf";
    const auto first = solved->policy_table.find(
        ds::CanonicalState::of(ds::SystemState::initial(instance)));
    if (name == ds::kOptimal && first != solved->policy_table.end())
      out["first_action"] = first->second.jobs();
  }
  if (dump) out["tables"] = ds::tables_to_json(*solved);
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_simulate(const std::string& path, const std::string& policies, std::size_t reps,
                 std::optional<std::uint64_t> seed, const std::string& out_path) {
  const ds::ScenarioSpec spec = ds::scenario_from_json(ds::read_json_file(path));
  if (reps == 0) throw ds::InvalidInput("reps must be positive");
  const std::uint64_t s = seed.value_or(spec.seed);
  const auto stats = ds::monte_carlo(spec, split_names(policies), reps, s);
  std::vector<ds::ResultRow> rows;
  for (const ds::PolicyStats& p : stats)
    rows.push_back({spec.name, p.policy, spec.num_jobs, spec.num_processors, spec.slots,
                    reps, p.value, p.served_fraction, s});
  if (out_path.empty() || out_path == "-") {
    ds::write_results_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw ds::InvalidInput("cannot write " + out_path);
    ds::write_results_csv(out, rows);
  }
  return 0;
}

int run_bounds(const std::string& path, bool mc, std::uint64_t seed) {
  const ds::Instance instance = ds::instance_from_json(ds::read_json_file(path));
  std::cout << ds::to_json(ds::compute_bounds(instance, !mc, seed)).dump(2) << '\n';
  return 0;
}

int run_reproduce(const std::string& name, std::size_t reps, std::uint64_t seed,
                  const std::string& out_dir) {
  for (const auto& file : ds::run_experiment({name, reps, seed, out_dir}))
    std::cout << file.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-preemptive scheduling of jobs with decaying value"};
  app.require_subcommand(1);

  std::string instance_path, scenario_path, policy, policies = "greedy,rate-greedy,edf";
  std::string out_path, out_dir = "results", experiment;
  bool dump = false, exact = false, mc = false;
  std::size_t reps = 1000, budget = ds::SolveOptions{}.state_budget;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> sim_seed;

  auto* solve = app.add_subcommand("solve", "Exact optimal value and policy evaluation");
  solve->add_option("instance", instance_path, "Instance JSON")->required();
  solve->add_option("--policy", policy, "greedy|rate-greedy|edf|optimal");
  solve->add_flag("--dump-tables", dump, "Include value and policy tables");
  solve->add_option("--budget", budget, "Maximum number of DP states");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo policy comparison");
  simulate->add_option("scenario", scenario_path, "Scenario JSON")->required();
  simulate->add_option("--policies", policies, "Comma-separated policy names");
  simulate->add_option("--reps", reps, "Replications");
  simulate->add_option("--seed", sim_seed, "Seed (default: scenario seed)");
  simulate->add_option("--out", out_path, "Output CSV (default: stdout)");

  auto* bounds = app.add_subcommand("bounds", "Performance guarantees for an instance");
  bounds->add_option("instance", instance_path, "Instance JSON")->required();
  auto* exact_flag = bounds->add_flag("--exact", exact, "Enumerate the joint support");
  bounds->add_flag("--mc", mc, "Monte Carlo estimate of E[max/min]")->excludes(exact_flag);
  bounds->add_option("--seed", seed, "Monte Carlo seed");

  auto* reproduce = app.add_subcommand("reproduce", "Run a canned experiment");
  reproduce->add_option("experiment", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(ds::experiment_names()));
  reproduce->add_option("--reps", reps, "Replications");
  reproduce->add_option("--seed", seed, "Seed");
  reproduce->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*solve) return run_solve(instance_path, policy, dump, budget);
    if (*simulate) return run_simulate(scenario_path, policies, reps, sim_seed, out_path);
    if (*bounds) return run_bounds(instance_path, mc, seed);
    return run_reproduce(experiment, reps, seed, out_dir);
  } catch (const ds::ResourceExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
