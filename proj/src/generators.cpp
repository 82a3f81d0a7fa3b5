#include "decaysched/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "decaysched/error.hpp"

namespace decaysched {

namespace {

void check_a(double a, int T) {
  if (!(a >= 0.0 && a <= 1.0)) throw InvalidInput("pmf: a must lie in [0, 1]");
  if (T < 1) throw InvalidInput("pmf: T must be >= 1");
}

// Weights exp(-rate (t - 1)) for t = 1..T.
std::vector<double> geometric_weights(double rate, int T) {
  std::vector<double> w(T);
  for (int t = 1; t <= T; ++t) w[t - 1] = std::exp(-rate * (t - 1));
  return w;
}

}  // namespace

Pmf make_uniform_pmf(double a, int T) {
  check_a(a, T);
  // Guard against a*T landing just above an integer.
  const int upper = static_cast<int>(std::ceil(a * T - 1e-12));
  if (upper < 1) throw InvalidInput("uniform pmf: ceil(a T) must be >= 1");
  std::vector<double> w(T, 0.0);
  std::fill(w.begin(), w.begin() + upper, 1.0);
  return Pmf::from_weights(std::move(w));
}

Pmf make_decreasing_pmf(double a, int T) {
  check_a(a, T);
  if (a == 0.0) throw InvalidInput("decreasing pmf: a must be > 0");
  return Pmf::from_weights(geometric_weights(a, T));
}

Pmf make_increasing_pmf(double a, int T) {
  check_a(a, T);
  std::vector<double> w = geometric_weights(a, T);
  std::reverse(w.begin(), w.end());
  return Pmf::from_weights(std::move(w));
}

Pmf make_bathtub_pmf(double a, int T) {
  check_a(a, T);
  std::vector<double> w = geometric_weights(a, T);
  std::vector<double> mirrored(w.rbegin(), w.rend());
  for (int i = 0; i < T; ++i) w[i] += mirrored[i];
  return Pmf::from_weights(std::move(w));
}

Pmf make_pmf(PmfFamily family, double a, int T) {
  switch (family) {
    case PmfFamily::Uniform: return make_uniform_pmf(a, T);
    case PmfFamily::Decreasing: return make_decreasing_pmf(a, T);
    case PmfFamily::Increasing: return make_increasing_pmf(a, T);
    case PmfFamily::Bathtub: return make_bathtub_pmf(a, T);
  }
  throw InvalidInput("unknown pmf family");
}

double shifted_lognormal_cdf(double x, double ell, double m, double s) {
  if (x <= ell) return 0.0;
  return 0.5 * (1.0 + std::erf((std::log(x - ell) - m) / (s * std::sqrt(2.0))));
}

Pmf discretize_lognormal(double ell, double m, double s, double delta, int T) {
  if (!(s > 0.0)) throw InvalidInput("lognormal: s must be > 0");
  if (!(delta > 0.0)) throw InvalidInput("lognormal: delta must be > 0");
  if (!(ell >= 0.0)) throw InvalidInput("lognormal: ell must be >= 0");
  if (T < 1) throw InvalidInput("lognormal: T must be >= 1");
  std::vector<double> w(T);
  double prev = shifted_lognormal_cdf(0.0, ell, m, s);
  double total = 0.0;
  for (int t = 1; t <= T; ++t) {
    const double cur = shifted_lognormal_cdf(t * delta, ell, m, s);
    w[t - 1] = std::max(0.0, cur - prev);
    total += w[t - 1];
    prev = cur;
  }
  if (!(total > 0.0))
    throw InvalidInput("lognormal: no probability mass within T slots");
  return Pmf::from_weights(std::move(w));
}

DecayFunction make_step_decay(double b, int c) {
  if (c < 1) throw InvalidInput("decay: deadline c must be >= 1");
  return DecayFunction::step(b, c);
}

DecayFunction make_linear_decay(double b, int c) {
  if (c < 1) throw InvalidInput("decay: deadline c must be >= 1");
  return DecayFunction::linear(b, c);
}

DecayFunction make_exp_decay(double b, int c) {
  if (c < 1) throw InvalidInput("decay: deadline c must be >= 1");
  return DecayFunction::exponential(b, c);
}

DecayFunction make_decay(DecayKind kind, double b, int c) {
  if (!(b >= 0.0 && b <= 1.0)) throw InvalidInput("decay: b must lie in [0, 1]");
  switch (kind) {
    case DecayKind::Step: return make_step_decay(b, c);
    case DecayKind::Linear: return make_linear_decay(b, c);
    case DecayKind::Exponential: return make_exp_decay(b, c);
    case DecayKind::PiecewiseLinear: break;
  }
  throw InvalidInput("make_decay: piecewise-linear curves are generated randomly");
}

DecayFunction piecewise_linear_from_draws(int T, double v0,
                                          std::span<const double> drops) {
  if (T < kPiecewiseSpacing) throw InvalidInput("piecewise decay: T must be >= 3");
  const int segments = T / kPiecewiseSpacing;
  if (static_cast<int>(drops.size()) < segments)
    throw InvalidInput("piecewise decay: not enough segment draws");
  std::vector<Knot> knots;
  knots.reserve(segments + 1);
  knots.push_back({0, v0});
  double v = v0;
  for (int k = 1; k <= segments; ++k) {
    v = std::max(v - (static_cast<double>(kPiecewiseSpacing) / T) * drops[k - 1], 0.0);
    knots.push_back({k * kPiecewiseSpacing, v});
  }
  return DecayFunction::piecewise_linear(std::move(knots), T);
}

DecayFunction gen_piecewise_linear_decay(int T, Rng& rng) {
  if (T < kPiecewiseSpacing) throw InvalidInput("piecewise decay: T must be >= 3");
  const double v0 = rng.uniform();
  std::vector<double> drops(T / kPiecewiseSpacing);
  for (double& u : drops) u = rng.uniform();
  return piecewise_linear_from_draws(T, v0, drops);
}

std::string_view to_string(PmfMode mode) {
  switch (mode) {
    case PmfMode::Uniform: return "uniform";
    case PmfMode::Decreasing: return "decreasing";
    case PmfMode::Increasing: return "increasing";
    case PmfMode::Bathtub: return "bathtub";
    case PmfMode::Heterogeneous: return "heterogeneous";
    case PmfMode::Lognormal: return "lognormal";
  }
  return "unknown";
}

std::string_view to_string(DecayMode mode) {
  switch (mode) {
    case DecayMode::Step: return "step";
    case DecayMode::Linear: return "linear";
    case DecayMode::Exponential: return "exponential";
    case DecayMode::Heterogeneous: return "heterogeneous";
    case DecayMode::PiecewiseLinear: return "piecewise_linear";
  }
  return "unknown";
}

std::string_view to_string(AMode mode) {
  return mode == AMode::Fixed ? "fixed" : "random";
}

std::optional<PmfMode> pmf_mode_from_string(std::string_view name) {
  if (name == "uniform") return PmfMode::Uniform;
  if (name == "decreasing" || name == "geometric") return PmfMode::Decreasing;
  if (name == "increasing") return PmfMode::Increasing;
  if (name == "bathtub") return PmfMode::Bathtub;
  if (name == "heterogeneous") return PmfMode::Heterogeneous;
  if (name == "lognormal") return PmfMode::Lognormal;
  return std::nullopt;
}

std::optional<DecayMode> decay_mode_from_string(std::string_view name) {
  if (name == "step") return DecayMode::Step;
  if (name == "linear") return DecayMode::Linear;
  if (name == "exponential" || name == "exp") return DecayMode::Exponential;
  if (name == "heterogeneous") return DecayMode::Heterogeneous;
  if (name == "piecewise_linear" || name == "piecewise-linear")
    return DecayMode::PiecewiseLinear;
  return std::nullopt;
}

std::optional<AMode> a_mode_from_string(std::string_view name) {
  if (name == "fixed") return AMode::Fixed;
  if (name == "random") return AMode::Random;
  return std::nullopt;
}

void validate(const ScenarioSpec& spec) {
  if (spec.num_jobs < 1) throw InvalidInput("scenario: J must be >= 1");
  if (spec.num_processors < 1) throw InvalidInput("scenario: N must be >= 1");
  if (spec.slots < 1) throw InvalidInput("scenario: T must be >= 1");
  if (spec.a_mode == AMode::Fixed &&
      !(spec.fixed_a > 0.0 && spec.fixed_a <= 1.0))
    throw InvalidInput("scenario: fixed a must lie in (0, 1]");
  if (spec.decay_mode == DecayMode::PiecewiseLinear &&
      spec.slots < kPiecewiseSpacing)
    throw InvalidInput("scenario: piecewise-linear decay needs T >= 3");
  if (spec.pmf_mode == PmfMode::Lognormal) {
    const LognormalParams& p = spec.lognormal;
    if (!(p.s_lo > 0.0 && p.s_lo <= p.s_hi) || !(p.m_lo <= p.m_hi) ||
        !(p.delta > 0.0) || !(p.ell >= 0.0))
      throw InvalidInput("scenario: invalid lognormal parameters");
    if (p.ell >= spec.slots * p.delta)
      throw InvalidInput("scenario: lognormal shift exceeds the horizon");
  }
}

ScenarioSpec patient_scenario(int num_jobs) {
  ScenarioSpec spec;
  spec.name = "patient";
  spec.num_jobs = num_jobs;
  spec.num_processors = 6;
  spec.slots = 144;
  spec.pmf_mode = PmfMode::Lognormal;
  spec.decay_mode = DecayMode::PiecewiseLinear;
  spec.a_mode = AMode::Fixed;
  return spec;
}

Instance sample_instance(const ScenarioSpec& spec, Rng& rng) {
  validate(spec);
  const int T = spec.slots;
  std::vector<Job> jobs;
  jobs.reserve(spec.num_jobs);
  for (int j = 0; j < spec.num_jobs; ++j) {
    std::optional<Pmf> pmf;
    if (spec.pmf_mode == PmfMode::Lognormal) {
      const LognormalParams& p = spec.lognormal;
      const double m = rng.uniform(p.m_lo, p.m_hi);
      const double s = rng.uniform(p.s_lo, p.s_hi);
      pmf = discretize_lognormal(p.ell, m, s, p.delta, T);
    } else {
      PmfFamily family;
      switch (spec.pmf_mode) {
        case PmfMode::Uniform: family = PmfFamily::Uniform; break;
        case PmfMode::Decreasing: family = PmfFamily::Decreasing; break;
        case PmfMode::Increasing: family = PmfFamily::Increasing; break;
        case PmfMode::Bathtub: family = PmfFamily::Bathtub; break;
        default: family = kPmfFamilies[rng.uniform_int(0, 3)]; break;
      }
      const double a = spec.a_mode == AMode::Fixed ? spec.fixed_a
                                                   : rng.uniform_open_closed();
      pmf = make_pmf(family, a, T);
    }

    std::optional<DecayFunction> decay;
    if (spec.decay_mode == DecayMode::PiecewiseLinear) {
      decay = gen_piecewise_linear_decay(T, rng);
    } else {
      DecayKind kind;
      switch (spec.decay_mode) {
        case DecayMode::Step: kind = DecayKind::Step; break;
        case DecayMode::Linear: kind = DecayKind::Linear; break;
        case DecayMode::Exponential: kind = DecayKind::Exponential; break;
        default: kind = kDecayFamilies[rng.uniform_int(0, 2)]; break;
      }
      const double b = rng.uniform();
      const int c = rng.uniform_int(1, T);
      decay = make_decay(kind, b, c);
    }
    jobs.push_back(Job{j, std::move(*pmf), std::move(*decay)});
  }
  return Instance(std::move(jobs), spec.num_processors, T + 1);
}

}  // namespace decaysched
