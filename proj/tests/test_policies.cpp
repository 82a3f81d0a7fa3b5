#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "decaysched/error.hpp"
#include "decaysched/policies.hpp"
#include "support.hpp"

using namespace decaysched;
using testing::make_job;

namespace {

std::vector<int> first_choice(const Policy& p, const Instance& inst) {
  return p(SystemState::initial(inst), inst).jobs();
}

bool is_maximal(const SystemState& s, const ScheduleAction& a) {
  const int k = static_cast<int>(s.not_started().size());
  return static_cast<int>(a.assignments.size()) == std::min(k, s.num_free());
}

Instance rescaled(const Instance& inst, double factor) {
  std::vector<Job> jobs;
  for (const Job& j : inst.jobs()) jobs.push_back({j.id, j.pmf, j.decay.scaled(factor)});
  return Instance(std::move(jobs), inst.num_processors(), inst.horizon());
}

}  // namespace

TEST_CASE("high-variance pair") {
  const Instance inst = testing::high_variance_pair(0.1);
  CHECK(first_choice(greedy_policy(), inst) == std::vector<int>{0});
  CHECK(first_choice(rate_greedy_policy(), inst) == std::vector<int>{1});
}

TEST_CASE("short-vs-long pair") {
  const Instance inst = testing::short_vs_long_pair(0.2);
  CHECK(first_choice(greedy_policy(), inst) == std::vector<int>{1});
  CHECK(first_choice(rate_greedy_policy(), inst) == std::vector<int>{0});
}

TEST_CASE("edf ordering") {
  CHECK(first_choice(edf_policy(), testing::deadline_pair(0.7)) == std::vector<int>{0});
  CHECK(first_choice(greedy_policy(), testing::deadline_pair(0.7)) == std::vector<int>{1});

  const Instance two({make_job(0, {1.0}, DecayFunction::step(1, 5)),
                      make_job(1, {1.0}, DecayFunction::step(1, 3))},
                     1);
  CHECK(first_choice(edf_policy(), two) == std::vector<int>{1});

  // At t = 4 job 1 has expired and goes last.
  SystemState s = SystemState::initial(two);
  s.t = 4;
  CHECK(edf_action(s, two).jobs() == std::vector<int>{0});
  s.t = 6;
  CHECK(edf_action(s, two).jobs() == std::vector<int>{1});

  const Instance three({make_job(0, {1.0}, DecayFunction::step(1, 1)),
                        make_job(1, {1.0}, DecayFunction::step(1, 1)),
                        make_job(2, {1.0}, DecayFunction::step(1, 4))},
                       2);
  SystemState late = SystemState::initial(three);
  late.t = 2;
  CHECK(edf_action(late, three).jobs() == std::vector<int>{0, 2});
  late.t = 5;
  CHECK(edf_action(late, three).jobs() == std::vector<int>{0, 1});
}

TEST_CASE("single candidate is always scheduled") {
  const Instance worthless({make_job(0, {0.5, 0.5}, DecayFunction::step(0.0, 2))}, 1);
  for (const Policy& p : {greedy_policy(), rate_greedy_policy(), edf_policy()})
    CHECK(first_choice(p, worthless) == std::vector<int>{0});
}

TEST_CASE("policies return maximal actions") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const Instance inst = testing::random_instance(rng, 6, 3, 5);
    const SystemState s = testing::random_reachable_state(inst, rng, rng.uniform_int(0, 4));
    for (const Policy& p : {greedy_policy(), rate_greedy_policy(), edf_policy()}) {
      const ScheduleAction a = p(s, inst);
      CHECK_NOTHROW(validate_action(s, a));
      CHECK(is_maximal(s, a));
      const auto actions = enumerate_actions(s, inst);
      CHECK(std::find(actions.begin(), actions.end(), a) != actions.end());
    }
  }
}

TEST_CASE("greedy maximizes the summed expected reward") {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const Instance inst = testing::random_instance(rng, 6, 3, 5);
    const SystemState s = testing::random_reachable_state(inst, rng, rng.uniform_int(0, 3));
    double best = -1.0;
    for (const auto& a : enumerate_actions(s, inst)) {
      double total = 0.0;
      for (int j : a.jobs()) total += inst.expected_reward(j, s.t);
      best = std::max(best, total);
    }
    double chosen = 0.0;
    for (int j : greedy_action(s, inst).jobs()) chosen += inst.expected_reward(j, s.t);
    CHECK(chosen == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("rate greedy equals greedy under iid service") {
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Instance inst = testing::random_instance(rng, 6, 3, 5, true);
    const SystemState s = testing::random_reachable_state(inst, rng, rng.uniform_int(0, 4));
    CHECK(greedy_action(s, inst) == rate_greedy_action(s, inst));
  }
}

TEST_CASE("common rescaling of values keeps the choice") {
  Rng rng(14);
  for (int i = 0; i < 300; ++i) {
    const Instance inst = testing::random_instance(rng, 6, 3, 5);
    const double factor = rng.uniform(0.1, 10.0);
    const Instance scaled = rescaled(inst, factor);
    const SystemState s = testing::random_reachable_state(inst, rng, rng.uniform_int(0, 4));
    CHECK(greedy_action(s, inst) == greedy_action(s, scaled));
    CHECK(rate_greedy_action(s, inst) == rate_greedy_action(s, scaled));
  }
}

TEST_CASE("edf ignores service distributions") {
  Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    const Instance inst = testing::random_instance(rng, 6, 3, 5);
    std::vector<Job> jobs;
    for (const Job& j : inst.jobs())
      jobs.push_back({j.id, Pmf(testing::random_pmf(rng, 5)), j.decay});
    const Instance other(std::move(jobs), inst.num_processors(), inst.horizon());
    SystemState s = testing::random_reachable_state(inst, rng, rng.uniform_int(0, 4));
    CHECK(edf_action(s, inst) == edf_action(s, other));
  }
}

TEST_CASE("policy names") {
  CHECK(canonical_policy_name("g") == "greedy");
  CHECK(canonical_policy_name("rg") == "rate-greedy");
  CHECK(canonical_policy_name("edf") == "edf");
  CHECK(canonical_policy_name("opt") == "optimal");
  CHECK_THROWS_AS(canonical_policy_name("random"), InvalidInput);
  CHECK(heuristic_policy("rate-greedy").name() == "rate-greedy");
  CHECK_THROWS_AS(heuristic_policy("optimal"), InvalidInput);
}
