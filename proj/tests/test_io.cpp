#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "decaysched/error.hpp"
#include "decaysched/io.hpp"
#include "support.hpp"

using namespace decaysched;
using nlohmann::json;
using testing::make_job;

namespace {

void check_same(const Instance& a, const Instance& b) {
  REQUIRE(a.num_jobs() == b.num_jobs());
  CHECK(a.num_processors() == b.num_processors());
  CHECK(a.horizon() == b.horizon());
  for (int j = 0; j < a.num_jobs(); ++j) {
    CHECK(approx_equal(a.job(j).pmf, b.job(j).pmf, 0.0));
    CHECK(a.job(j).decay.kind() == b.job(j).decay.kind());
    for (int t = 0; t <= a.horizon() + 1; ++t) CHECK(a.job(j).decay(t) == b.job(j).decay(t));
  }
}

}  // namespace

TEST_CASE("instance round trip") {
  const Instance inst(
      {make_job(0, {0.25, 0.75}, DecayFunction::step(0.5, 3)),
       make_job(1, {1.0}, DecayFunction::linear(1.0, 4)),
       make_job(2, {0.0, 0.5, 0.5}, DecayFunction::exponential(0.8, 2)),
       make_job(3, {0.5, 0.5}, DecayFunction::piecewise_linear({{0, 0.9}, {3, 0.5}}, 7))},
      3, 9);
  const json doc = to_json(inst);
  CHECK(doc.at("processors") == 3);
  CHECK(doc.at("jobs").at(0).at("decay").at("kind") == "step");
  CHECK(doc.at("jobs").at(0).at("decay").at("params").at("c") == 3);
  check_same(inst, instance_from_json(doc));
  check_same(inst, instance_from_json(json::parse(doc.dump())));
}

TEST_CASE("instance horizon defaults to the last deadline") {
  const json doc = json::parse(R"({"processors": 1, "jobs": [
      {"pmf": [1.0], "decay": {"kind": "step", "params": {"b": 1.0, "c": 4}}}]})");
  CHECK(instance_from_json(doc).horizon() == 5);
}

TEST_CASE("malformed instances") {
  const char* bad[] = {
      R"({"jobs": []})",
      R"({"processors": 1, "jobs": []})",
      R"({"processors": 1, "jobs": [{"pmf": [0.5, 0.4], "decay": {"kind": "step", "params": {"b": 1, "c": 1}}}]})",
      R"({"processors": 1, "jobs": [{"pmf": [1.0], "decay": {"kind": "cubic", "params": {}}}]})",
      R"({"processors": 1, "jobs": [{"pmf": [1.0], "decay": {"kind": "step"}}]})",
      R"({"processors": "two", "jobs": [{"pmf": [1.0], "decay": {"kind": "step", "params": {"b": 1, "c": 1}}}]})",
      R"({"processors": 1, "horizon": 1, "jobs": [{"pmf": [1.0], "decay": {"kind": "step", "params": {"b": 1, "c": 3}}}]})",
  };
  for (const char* text : bad) CHECK_THROWS_AS(instance_from_json(json::parse(text)), InvalidInput);
}

TEST_CASE("scenario round trip") {
  ScenarioSpec spec = patient_scenario(75);
  spec.seed = 123;
  const ScenarioSpec back = scenario_from_json(to_json(spec));
  CHECK(back.name == spec.name);
  CHECK(back.num_jobs == 75);
  CHECK(back.num_processors == 6);
  CHECK(back.slots == 144);
  CHECK(back.pmf_mode == PmfMode::Lognormal);
  CHECK(back.decay_mode == DecayMode::PiecewiseLinear);
  CHECK(back.seed == 123);
  CHECK(back.lognormal.ell == spec.lognormal.ell);
  CHECK(back.lognormal.s_hi == spec.lognormal.s_hi);

  const ScenarioSpec minimal = scenario_from_json(json::parse(R"({"J": 4, "N": 2, "T": 6,
      "pmf_mode": "geometric", "decay_mode": "heterogeneous", "a_mode": "random"})"));
  CHECK(minimal.pmf_mode == PmfMode::Decreasing);
  CHECK(minimal.decay_mode == DecayMode::Heterogeneous);
  CHECK(minimal.a_mode == AMode::Random);

  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"J": 4, "N": 2})")), InvalidInput);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"J": 4, "N": 2, "T": 3, "pmf_mode": "x"})")),
                  InvalidInput);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"J": 0, "N": 2, "T": 3})")), InvalidInput);
}

TEST_CASE("bound report and tables") {
  const Instance inst = testing::deadline_pair(0.5);
  const json report = to_json(compute_bounds(inst));
  CHECK(report.at("iid") == true);
  CHECK(report.at("edf_alpha").get<double>() == doctest::Approx(3.0));
  CHECK(report.at("ordering_holds") == true);
  const json no_edf = to_json(compute_bounds(testing::short_vs_long_pair(0.1)));
  CHECK(no_edf.at("edf_alpha").is_null());

  const json tables = tables_to_json(solve_optimal(inst));
  CHECK(tables.at("optimal_value").get<double>() == doctest::Approx(1.0));
  CHECK(tables.at("values").size() == tables.at("states_visited").get<std::size_t>());
  CHECK(tables.at("policy").size() > 0);
}

TEST_CASE("json files") {
  const auto dir = std::filesystem::temp_directory_path() / "decaysched_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "broken.json") << "{ not json";
    std::ofstream(dir / "ok.json") << to_json(testing::two_approx_pair(0.3)).dump();
  }
  CHECK_THROWS_AS(read_json_file(dir / "broken.json"), InvalidInput);
  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), InvalidInput);
  CHECK(instance_from_json(read_json_file(dir / "ok.json")).num_jobs() == 2);
  std::filesystem::remove_all(dir);
}
