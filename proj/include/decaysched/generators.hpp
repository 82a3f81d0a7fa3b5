#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "decaysched/decay.hpp"
#include "decaysched/model.hpp"
#include "decaysched/pmf.hpp"
#include "decaysched/rng.hpp"

namespace decaysched {

// ---------------------------------------------------------------------------
// Service-time PMF families on {1, ..., T}, each shaped by a in [0, 1].

// Uniform on {1, ..., ceil(a T)}.
Pmf make_uniform_pmf(double a, int T);
// Truncated geometric with success probability 1 - exp(-a); a in (0, 1].
Pmf make_decreasing_pmf(double a, int T);
// p(t) proportional to exp(a (t - 1)); the index-wise mirror of the
// decreasing family.
Pmf make_increasing_pmf(double a, int T);
// p(t) proportional to exp(-a (t - 1)) + exp(-a (T - t)).
Pmf make_bathtub_pmf(double a, int T);

enum class PmfFamily { Uniform, Decreasing, Increasing, Bathtub };
inline constexpr PmfFamily kPmfFamilies[] = {
    PmfFamily::Uniform, PmfFamily::Decreasing, PmfFamily::Increasing,
    PmfFamily::Bathtub};

Pmf make_pmf(PmfFamily family, double a, int T);

// CDF of ell + exp(m + s Z), Z standard normal.
double shifted_lognormal_cdf(double x, double ell, double m, double s);

// Slot t receives F(t delta) - F((t - 1) delta), renormalized over
// {1, ..., T}. Throws if no slot receives mass (ell >= T delta).
Pmf discretize_lognormal(double ell, double m, double s, double delta, int T);

// ---------------------------------------------------------------------------
// Decay families parameterized by an initial value b in [0, 1] and a
// deadline c in {1, ..., T}.

DecayFunction make_step_decay(double b, int c);
DecayFunction make_linear_decay(double b, int c);
DecayFunction make_exp_decay(double b, int c);

inline constexpr DecayKind kDecayFamilies[] = {
    DecayKind::Step, DecayKind::Linear, DecayKind::Exponential};

DecayFunction make_decay(DecayKind kind, double b, int c);

// Random continuous piecewise-linear curve on [0, T] with breakpoints every
// kPiecewiseSpacing slots: v(0) ~ U[0, 1] and each breakpoint drops by
// (3 / T) u_k with a fresh u_k ~ U[0, 1], floored at zero. The value of the
// last breakpoint is held through slot T.
inline constexpr int kPiecewiseSpacing = 3;
DecayFunction gen_piecewise_linear_decay(int T, Rng& rng);
// Same construction from explicit draws; `drops` needs floor(T / 3) entries.
DecayFunction piecewise_linear_from_draws(int T, double v0,
                                          std::span<const double> drops);

// ---------------------------------------------------------------------------
// Random scenario instances.

enum class PmfMode { Uniform, Decreasing, Increasing, Bathtub, Heterogeneous, Lognormal };
enum class DecayMode { Step, Linear, Exponential, Heterogeneous, PiecewiseLinear };
enum class AMode { Fixed, Random };

std::string_view to_string(PmfMode mode);
std::string_view to_string(DecayMode mode);
std::string_view to_string(AMode mode);
std::optional<PmfMode> pmf_mode_from_string(std::string_view name);
std::optional<DecayMode> decay_mode_from_string(std::string_view name);
std::optional<AMode> a_mode_from_string(std::string_view name);

struct LognormalParams {
  double ell = 60.0;    // minutes
  double m_lo = 1.0;
  double m_hi = 4.0;
  double s_lo = 1.0;
  double s_hi = 1.25;
  double delta = 10.0;  // minutes per slot
};

struct ScenarioSpec {
  std::string name = "scenario";
  int num_jobs = 5;
  int num_processors = 2;
  int slots = 5;  // T: PMF support and deadline range
  PmfMode pmf_mode = PmfMode::Uniform;
  DecayMode decay_mode = DecayMode::Step;
  AMode a_mode = AMode::Fixed;
  double fixed_a = 1.0;
  LognormalParams lognormal;
  std::uint64_t seed = 1;
};

// Throws InvalidInput on inconsistent settings.
void validate(const ScenarioSpec& spec);

// Operating-room triage scenario: lognormal procedures, piecewise-linear
// health decay, N = 6, T = 144 slots of 10 minutes.
ScenarioSpec patient_scenario(int num_jobs);

// Draws one instance. Per job, in order: PMF family (heterogeneous mode),
// a (random mode), decay family (heterogeneous mode), b ~ U[0, 1],
// c ~ U{1..T}. Lognormal mode draws m, s instead of family and a; piecewise
// decay draws its own breakpoints. The horizon is T + 1.
Instance sample_instance(const ScenarioSpec& spec, Rng& rng);

}  // namespace decaysched
