#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "decaysched/generators.hpp"
#include "decaysched/simulator.hpp"

namespace decaysched {

inline constexpr std::string_view kTableSmallFixedA = "table-small-fixed-a";
inline constexpr std::string_view kTableSmallRandomA = "table-small-random-a";
inline constexpr std::string_view kFigureLarge = "figure-large";
inline constexpr std::string_view kPatient = "patient";
inline constexpr std::size_t kDefaultReps = 1000;

struct ExperimentDef {
  std::string name;
  std::size_t reps = kDefaultReps;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
};

const std::vector<std::string>& experiment_names();
// The three heuristics, canonical names.
const std::vector<std::string>& heuristic_names();

// ---------------------------------------------------------------------------
// Small instances (J = 5, N = 2, T = 5): alpha = V* / V^pi per cell.

enum class TableVariant { FixedA, RandomA };

inline constexpr PmfMode kTableRows[] = {PmfMode::Uniform, PmfMode::Decreasing,
                                         PmfMode::Increasing, PmfMode::Bathtub,
                                         PmfMode::Heterogeneous};
inline constexpr DecayMode kTableColumns[] = {DecayMode::Step, DecayMode::Linear,
                                              DecayMode::Exponential,
                                              DecayMode::Heterogeneous};

struct TableCell {
  PmfMode pmf;
  DecayMode decay;
  std::vector<AlphaStats> alphas;  // in heuristic_names() order

  const AlphaStats& alpha(std::string_view policy) const;
};

struct TableResult {
  TableVariant variant;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<TableCell> cells;  // row-major over kTableRows x kTableColumns

  const TableCell& cell(PmfMode pmf, DecayMode decay) const;
};

ScenarioSpec table_small_scenario(TableVariant variant, PmfMode pmf, DecayMode decay);
TableResult run_table_small(TableVariant variant, std::size_t reps, std::uint64_t seed);

// variant,pmf,decay,policy,reps,finite_reps,zero_value_count,alpha_mean,alpha_se
void write_table_csv(std::ostream& out, const TableResult& table);
// Human-readable grid, one block per policy, cells as "mean (se)".
void write_table_text(std::ostream& out, const TableResult& table);

// ---------------------------------------------------------------------------
// J sweeps.

struct CurvePoint {
  int num_jobs = 0;
  std::vector<PolicyStats> stats;  // in heuristic_names() order

  const PolicyStats& policy(std::string_view name) const;
};

struct CurvePanel {
  std::string name;
  ScenarioSpec base;  // num_jobs varies across points
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<CurvePoint> points;

  const CurvePoint& at(int num_jobs) const;
};

inline constexpr int kFigureJobs[] = {10, 20, 30, 40, 50, 60};
inline constexpr int kPatientJobs[] = {50, 75, 100, 125, 150, 175, 200};

// T = 50, N = 5.
ScenarioSpec figure_large_scenario(DecayMode decay, PmfMode pmf, AMode a_mode, int num_jobs);
CurvePanel run_figure_large(DecayMode decay, PmfMode pmf, AMode a_mode,
                            std::size_t reps, std::uint64_t seed);
// Step/heterogeneous decay x geometric/heterogeneous PMFs, for a = 1 and
// random a.
std::vector<CurvePanel> run_figure_large_all(std::size_t reps, std::uint64_t seed);

CurvePanel run_patient(std::size_t reps, std::uint64_t seed);

// Long format, one row per (J, policy), using kResultsCsvHeader.
void write_curve_csv(std::ostream& out, const CurvePanel& panel);
// Whitespace-separated, one row per J:
//   J <policy>_mean <policy>_se <policy>_served <policy>_served_se ...
void write_curve_dat(std::ostream& out, const CurvePanel& panel);

// Runs a named experiment and writes its artifacts into def.out_dir.
// Returns the files written.
std::vector<std::filesystem::path> run_experiment(const ExperimentDef& def);

}  // namespace decaysched
