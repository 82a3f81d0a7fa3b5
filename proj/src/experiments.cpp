#include "decaysched/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "decaysched/error.hpp"
#include "decaysched/policies.hpp"
#include "decaysched/rng.hpp"

namespace decaysched {

namespace fs = std::filesystem;

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      std::string(kTableSmallFixedA), std::string(kTableSmallRandomA),
      std::string(kFigureLarge), std::string(kPatient)};
  return names;
}

const std::vector<std::string>& heuristic_names() {
  static const std::vector<std::string> names = {
      std::string(kGreedy), std::string(kRateGreedy), std::string(kEdf)};
  return names;
}

namespace {

std::string_view variant_name(TableVariant v) {
  return v == TableVariant::FixedA ? "fixed-a" : "random-a";
}

template <typename T>
const T& find_policy(const std::vector<T>& stats, std::string_view policy) {
  const std::string name = canonical_policy_name(policy);
  for (const T& s : stats)
    if (s.policy == name) return s;
  throw InvalidInput("no results for policy '" + name + "'");
}

std::uint64_t as_u64(auto e) { return static_cast<std::uint64_t>(e); }

void write_file(const fs::path& path, auto&& writer,
                std::vector<fs::path>& written) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  writer(out);
  written.push_back(path);
}

std::string panel_name(DecayMode decay, PmfMode pmf, AMode a_mode) {
  std::ostringstream s;
  s << kFigureLarge << '_' << to_string(decay) << '_' << to_string(pmf) << '_'
    << (a_mode == AMode::Fixed ? "a1" : "random-a");
  return s.str();
}

}  // namespace

const AlphaStats& TableCell::alpha(std::string_view policy) const {
  return find_policy(alphas, policy);
}

const TableCell& TableResult::cell(PmfMode pmf, DecayMode decay) const {
  for (const TableCell& c : cells)
    if (c.pmf == pmf && c.decay == decay) return c;
  throw InvalidInput("no such table cell");
}

ScenarioSpec table_small_scenario(TableVariant variant, PmfMode pmf, DecayMode decay) {
  ScenarioSpec spec;
  spec.num_jobs = 5;
  spec.num_processors = 2;
  spec.slots = 5;
  spec.pmf_mode = pmf;
  spec.decay_mode = decay;
  spec.a_mode = variant == TableVariant::FixedA ? AMode::Fixed : AMode::Random;
  spec.fixed_a = 1.0;
  std::ostringstream name;
  name << "table-small-" << variant_name(variant) << '_' << to_string(pmf) << '_'
       << to_string(decay);
  spec.name = name.str();
  return spec;
}

TableResult run_table_small(TableVariant variant, std::size_t reps, std::uint64_t seed) {
  TableResult table{variant, reps, seed, {}};
  for (PmfMode pmf : kTableRows) {
    for (DecayMode decay : kTableColumns) {
      const ScenarioSpec spec = table_small_scenario(variant, pmf, decay);
      const std::uint64_t cell_seed =
          derive_seed(seed, {as_u64(variant), as_u64(pmf), as_u64(decay)});
      table.cells.push_back(
          {pmf, decay, estimate_alphas(spec, heuristic_names(), reps, cell_seed)});
    }
  }
  return table;
}

void write_table_csv(std::ostream& out, const TableResult& table) {
  out << "variant,pmf,decay,policy,reps,finite_reps,zero_value_count,alpha_mean,alpha_se\n";
  out << std::setprecision(10);
  for (const TableCell& c : table.cells) {
    for (const AlphaStats& a : c.alphas) {
      out << variant_name(table.variant) << ',' << to_string(c.pmf) << ','
          << to_string(c.decay) << ',' << a.policy << ',' << a.reps << ','
          << a.ratio.n << ',' << a.zero_value_count << ',' << a.ratio.mean << ','
          << a.ratio.std_error << '\n';
    }
  }
}

void write_table_text(std::ostream& out, const TableResult& table) {
  out << "alpha = V*/V^pi, J=5 N=2 T=5, " << variant_name(table.variant)
      << ", reps=" << table.reps << ", seed=" << table.seed << '\n';
  out << "cells: mean (standard error) over finite ratios; [z] = replications with V^pi = 0\n";
  out << std::fixed << std::setprecision(5);
  for (const std::string& policy : heuristic_names()) {
    out << '\n' << policy << '\n' << std::setw(14) << "";
    for (DecayMode d : kTableColumns) out << std::setw(26) << to_string(d);
    out << '\n';
    for (PmfMode p : kTableRows) {
      out << std::setw(14) << to_string(p);
      for (DecayMode d : kTableColumns) {
        const AlphaStats& a = table.cell(p, d).alpha(policy);
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(5) << a.ratio.mean << " ("
             << a.ratio.std_error << ")";
        if (a.zero_value_count > 0) cell << " [" << a.zero_value_count << "]";
        out << std::setw(26) << cell.str();
      }
      out << '\n';
    }
  }
}

const PolicyStats& CurvePoint::policy(std::string_view name) const {
  return find_policy(stats, name);
}

const CurvePoint& CurvePanel::at(int num_jobs) const {
  for (const CurvePoint& p : points)
    if (p.num_jobs == num_jobs) return p;
  throw InvalidInput("no curve point for J=" + std::to_string(num_jobs));
}

ScenarioSpec figure_large_scenario(DecayMode decay, PmfMode pmf, AMode a_mode,
                                   int num_jobs) {
  ScenarioSpec spec;
  spec.name = panel_name(decay, pmf, a_mode);
  spec.num_jobs = num_jobs;
  spec.num_processors = 5;
  spec.slots = 50;
  spec.pmf_mode = pmf;
  spec.decay_mode = decay;
  spec.a_mode = a_mode;
  spec.fixed_a = 1.0;
  return spec;
}

CurvePanel run_figure_large(DecayMode decay, PmfMode pmf, AMode a_mode,
                            std::size_t reps, std::uint64_t seed) {
  CurvePanel panel{panel_name(decay, pmf, a_mode),
                   figure_large_scenario(decay, pmf, a_mode, kFigureJobs[0]),
                   reps, seed, {}};
  for (int jobs : kFigureJobs) {
    const ScenarioSpec spec = figure_large_scenario(decay, pmf, a_mode, jobs);
    const std::uint64_t s =
        derive_seed(seed, {as_u64(decay), as_u64(pmf), as_u64(a_mode), as_u64(jobs)});
    panel.points.push_back({jobs, monte_carlo(spec, heuristic_names(), reps, s)});
  }
  return panel;
}

std::vector<CurvePanel> run_figure_large_all(std::size_t reps, std::uint64_t seed) {
  std::vector<CurvePanel> panels;
  for (AMode a : {AMode::Fixed, AMode::Random})
    for (DecayMode d : {DecayMode::Step, DecayMode::Heterogeneous})
      for (PmfMode p : {PmfMode::Decreasing, PmfMode::Heterogeneous})
        panels.push_back(run_figure_large(d, p, a, reps, seed));
  return panels;
}

CurvePanel run_patient(std::size_t reps, std::uint64_t seed) {
  CurvePanel panel{std::string(kPatient), patient_scenario(kPatientJobs[0]), reps, seed, {}};
  for (int jobs : kPatientJobs) {
    ScenarioSpec spec = patient_scenario(jobs);
    spec.name = std::string(kPatient);
    panel.points.push_back(
        {jobs, monte_carlo(spec, heuristic_names(), reps, derive_seed(seed, {as_u64(jobs)}))});
  }
  return panel;
}

void write_curve_csv(std::ostream& out, const CurvePanel& panel) {
  std::vector<ResultRow> rows;
  for (const CurvePoint& p : panel.points) {
    for (const PolicyStats& s : p.stats) {
      rows.push_back({panel.name, s.policy, p.num_jobs, panel.base.num_processors,
                      panel.base.slots, panel.reps, s.value, s.served_fraction,
                      panel.seed});
    }
  }
  write_results_csv(out, rows);
}

void write_curve_dat(std::ostream& out, const CurvePanel& panel) {
  out << "# " << panel.name << " N=" << panel.base.num_processors
      << " T=" << panel.base.slots << " reps=" << panel.reps << " seed=" << panel.seed
      << "\n# J";
  for (const std::string& policy : heuristic_names())
    out << ' ' << policy << "_mean " << policy << "_se " << policy << "_served "
        << policy << "_served_se";
  out << '\n' << std::setprecision(10);
  for (const CurvePoint& p : panel.points) {
    out << p.num_jobs;
    for (const std::string& policy : heuristic_names()) {
      const PolicyStats& s = p.policy(policy);
      out << ' ' << s.value.mean << ' ' << s.value.std_error << ' '
          << s.served_fraction.mean << ' ' << s.served_fraction.std_error;
    }
    out << '\n';
  }
}

std::vector<fs::path> run_experiment(const ExperimentDef& def) {
  if (std::find(experiment_names().begin(), experiment_names().end(), def.name) ==
      experiment_names().end())
    throw InvalidInput("unknown experiment '" + def.name + "'");
  if (def.reps == 0) throw InvalidInput("reps must be positive");
  std::error_code ec;
  fs::create_directories(def.out_dir, ec);
  if (ec) throw InvalidInput("cannot create " + def.out_dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  if (def.name == kTableSmallFixedA || def.name == kTableSmallRandomA) {
    const auto variant =
        def.name == kTableSmallFixedA ? TableVariant::FixedA : TableVariant::RandomA;
    const TableResult table = run_table_small(variant, def.reps, def.seed);
    write_file(def.out_dir / (def.name + ".csv"),
               [&](std::ostream& o) { write_table_csv(o, table); }, written);
    write_file(def.out_dir / (def.name + ".txt"),
               [&](std::ostream& o) { write_table_text(o, table); }, written);
    return written;
  }
  std::vector<CurvePanel> panels;
  if (def.name == kFigureLarge)
    panels = run_figure_large_all(def.reps, def.seed);
  else
    panels.push_back(run_patient(def.reps, def.seed));
  for (const CurvePanel& panel : panels) {
    write_file(def.out_dir / (panel.name + ".csv"),
               [&](std::ostream& o) { write_curve_csv(o, panel); }, written);
    write_file(def.out_dir / (panel.name + ".dat"),
               [&](std::ostream& o) { write_curve_dat(o, panel); }, written);
  }
  return written;
}

}  // namespace decaysched
