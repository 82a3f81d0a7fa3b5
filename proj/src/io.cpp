#include "decaysched/io.hpp"

#include <algorithm>
#include <fstream>

#include "decaysched/error.hpp"

namespace decaysched {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  return doc.contains(key) ? doc.at(key).get<T>() : fallback;
}

// Converts nlohmann parse/type errors into InvalidInput with context.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const DecayFunction& decay) {
  json params;
  if (decay.kind() == DecayKind::PiecewiseLinear) {
    json knots = json::array();
    for (const Knot& k : decay.knots()) knots.push_back({k.slot, k.value});
    params = {{"knots", knots}, {"hold_until", decay.hold_until()}};
  } else {
    params = {{"b", decay.height()}, {"c", decay.cutoff()}};
  }
  return {{"kind", std::string(to_string(decay.kind()))}, {"params", params}};
}

DecayFunction decay_from_json(const json& doc) {
  return guarded("decay", [&] {
    const std::string name = doc.at("kind").get<std::string>();
    const auto kind = decay_kind_from_string(name);
    if (!kind) throw InvalidInput("decay: unknown kind '" + name + "'");
    const json& params = doc.at("params");
    switch (*kind) {
      case DecayKind::Step:
        return DecayFunction::step(params.at("b").get<double>(), params.at("c").get<int>());
      case DecayKind::Linear:
        return DecayFunction::linear(params.at("b").get<double>(), params.at("c").get<int>());
      case DecayKind::Exponential:
        return DecayFunction::exponential(params.at("b").get<double>(),
                                          params.at("c").get<int>());
      case DecayKind::PiecewiseLinear: {
        std::vector<Knot> knots;
        for (const json& k : params.at("knots"))
          knots.push_back({k.at(0).get<int>(), k.at(1).get<double>()});
        return DecayFunction::piecewise_linear(std::move(knots),
                                               params.at("hold_until").get<int>());
      }
    }
    throw InvalidInput("decay: unknown kind");
  });
}

json to_json(const Instance& instance) {
  json jobs = json::array();
  for (const Job& job : instance.jobs()) {
    const auto probs = job.pmf.probs();
    jobs.push_back({{"pmf", std::vector<double>(probs.begin(), probs.end())},
                    {"decay", to_json(job.decay)}});
  }
  return {{"processors", instance.num_processors()},
          {"horizon", instance.horizon()},
          {"jobs", jobs}};
}

Instance instance_from_json(const json& doc) {
  return guarded("instance", [&] {
    std::vector<Job> jobs;
    int id = 0;
    for (const json& j : doc.at("jobs")) {
      Pmf pmf(j.at("pmf").get<std::vector<double>>());
      jobs.push_back(Job{id++, std::move(pmf), decay_from_json(j.at("decay"))});
    }
    const int processors = doc.at("processors").get<int>();
    if (doc.contains("horizon"))
      return Instance(std::move(jobs), processors, doc.at("horizon").get<int>());
    return Instance(std::move(jobs), processors);
  });
}

json to_json(const ScenarioSpec& spec) {
  return {{"name", spec.name},
          {"J", spec.num_jobs},
          {"N", spec.num_processors},
          {"T", spec.slots},
          {"pmf_mode", std::string(to_string(spec.pmf_mode))},
          {"decay_mode", std::string(to_string(spec.decay_mode))},
          {"a_mode", std::string(to_string(spec.a_mode))},
          {"a", spec.fixed_a},
          {"seed", spec.seed},
          {"lognormal",
           {{"ell", spec.lognormal.ell},
            {"m_min", spec.lognormal.m_lo},
            {"m_max", spec.lognormal.m_hi},
            {"s_min", spec.lognormal.s_lo},
            {"s_max", spec.lognormal.s_hi},
            {"delta", spec.lognormal.delta}}}};
}

ScenarioSpec scenario_from_json(const json& doc) {
  return guarded("scenario", [&] {
    ScenarioSpec spec;
    spec.name = get_or<std::string>(doc, "name", spec.name);
    spec.num_jobs = doc.at("J").get<int>();
    spec.num_processors = doc.at("N").get<int>();
    spec.slots = doc.at("T").get<int>();
    const std::string pmf = get_or<std::string>(doc, "pmf_mode", "uniform");
    const std::string decay = get_or<std::string>(doc, "decay_mode", "step");
    const std::string amode = get_or<std::string>(doc, "a_mode", "fixed");
    const auto pm = pmf_mode_from_string(pmf);
    const auto dm = decay_mode_from_string(decay);
    const auto am = a_mode_from_string(amode);
    if (!pm) throw InvalidInput("scenario: unknown pmf_mode '" + pmf + "'");
    if (!dm) throw InvalidInput("scenario: unknown decay_mode '" + decay + "'");
    if (!am) throw InvalidInput("scenario: unknown a_mode '" + amode + "'");
    spec.pmf_mode = *pm;
    spec.decay_mode = *dm;
    spec.a_mode = *am;
    spec.fixed_a = get_or<double>(doc, "a", spec.fixed_a);
    spec.seed = get_or<std::uint64_t>(doc, "seed", spec.seed);
    if (doc.contains("lognormal")) {
      const json& ln = doc.at("lognormal");
      LognormalParams& p = spec.lognormal;
      p.ell = get_or<double>(ln, "ell", p.ell);
      p.m_lo = get_or<double>(ln, "m_min", p.m_lo);
      p.m_hi = get_or<double>(ln, "m_max", p.m_hi);
      p.s_lo = get_or<double>(ln, "s_min", p.s_lo);
      p.s_hi = get_or<double>(ln, "s_max", p.s_hi);
      p.delta = get_or<double>(ln, "delta", p.delta);
    }
    validate(spec);
    return spec;
  });
}

json to_json(const BoundReport& r) {
  json doc = {{"iid", r.iid},
              {"expected_max_min_ratio", r.expected_max_min_ratio},
              {"expected_max_min_ratio_se", r.ratio_std_error},
              {"ratio_exact", r.ratio_exact},
              {"expected_max", r.expected_max},
              {"min_mean", r.min_mean},
              {"delta", r.delta},
              {"M", r.max_expected_reward},
              {"m", r.min_positive_expected_reward},
              {"greedy_alpha", r.greedy_alpha},
              {"rate_greedy_alpha", r.rate_greedy_alpha},
              {"edf_alpha", nullptr},
              {"edf_step_alpha", nullptr},
              {"p_min", nullptr},
              {"ordering_holds", check_bound_ordering(r)}};
  if (r.edf_alpha) doc["edf_alpha"] = *r.edf_alpha;
  if (r.edf_step_alpha) doc["edf_step_alpha"] = *r.edf_step_alpha;
  if (r.p_min) doc["p_min"] = *r.p_min;
  return doc;
}

json to_json(const CanonicalState& state) {
  json in_service = json::array();
  for (auto [j, age] : state.in_service) in_service.push_back({j, age});
  return {{"t", state.t}, {"not_started", state.not_started}, {"in_service", in_service}};
}

json tables_to_json(const SolveResult& result) {
  // Sort for stable output.
  std::vector<std::pair<json, double>> values;
  for (const auto& [state, v] : result.value_table) values.emplace_back(to_json(state), v);
  std::sort(values.begin(), values.end(),
            [](const auto& a, const auto& b) { return a.first.dump() < b.first.dump(); });
  json value_rows = json::array();
  for (auto& [state, v] : values) value_rows.push_back({{"state", state}, {"value", v}});

  std::vector<std::pair<json, std::vector<int>>> actions;
  for (const auto& [state, a] : result.policy_table) actions.emplace_back(to_json(state), a.jobs());
  std::sort(actions.begin(), actions.end(),
            [](const auto& a, const auto& b) { return a.first.dump() < b.first.dump(); });
  json policy_rows = json::array();
  for (auto& [state, jobs] : actions)
    policy_rows.push_back({{"state", state}, {"schedule", jobs}});

  return {{"optimal_value", result.optimal_value},
          {"states_visited", result.states_visited},
          {"values", value_rows},
          {"policy", policy_rows}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

}  // namespace decaysched
