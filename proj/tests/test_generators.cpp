#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "decaysched/error.hpp"
#include "decaysched/generators.hpp"

using namespace decaysched;

namespace {

double total_mass(const Pmf& p) {
  const auto probs = p.probs();
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

}  // namespace

TEST_CASE("uniform pmf") {
  const Pmf full = make_uniform_pmf(1.0, 4);
  for (int k = 1; k <= 4; ++k) CHECK(full.prob(k) == 0.25);
  const Pmf half = make_uniform_pmf(0.5, 4);
  CHECK(half.prob(1) == 0.5);
  CHECK(half.prob(2) == 0.5);
  CHECK(half.prob(3) == 0.0);
  CHECK(half.max_support() == 4);
  CHECK(make_uniform_pmf(1.0 / 7, 7).prob(1) == 1.0);
  CHECK(make_uniform_pmf(0.3, 10).max_positive() == 3);
  CHECK_THROWS_AS(make_uniform_pmf(0.0, 5), InvalidInput);
}

TEST_CASE("decreasing pmf") {
  const Pmf p = make_decreasing_pmf(1.0, 12);
  for (int k = 1; k < 12; ++k)
    CHECK(std::abs(p.prob(k + 1) / p.prob(k) - std::exp(-1.0)) <= 1e-12);
  CHECK(make_decreasing_pmf(1.0, 200).prob(1) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(make_decreasing_pmf(0.4, 1).prob(1) == 1.0);
  CHECK_THROWS_AS(make_decreasing_pmf(0.0, 5), InvalidInput);
}

TEST_CASE("increasing and bathtub pmfs") {
  const Pmf flat = make_increasing_pmf(0.0, 6);
  for (int k = 1; k <= 6; ++k) CHECK(flat.prob(k) == doctest::Approx(1.0 / 6));
  for (double a : {0.2, 0.7, 1.0}) {
    const Pmf inc = make_increasing_pmf(a, 9);
    const Pmf dec = make_decreasing_pmf(a, 9);
    for (int k = 1; k <= 9; ++k) CHECK(std::abs(inc.prob(k) - dec.prob(10 - k)) <= 1e-12);
  }
  const Pmf tub = make_bathtub_pmf(1.0, 5);
  CHECK(std::abs(tub.prob(1) - tub.prob(5)) <= 1e-12);
  CHECK(std::abs(tub.prob(2) - tub.prob(4)) <= 1e-12);
  CHECK(tub.prob(3) < tub.prob(2));
  const Pmf tub0 = make_bathtub_pmf(0.0, 4);
  for (int k = 1; k <= 4; ++k) CHECK(tub0.prob(k) == doctest::Approx(0.25));
}

TEST_CASE("every family normalizes") {
  for (PmfFamily f : kPmfFamilies)
    for (double a : {0.05, 0.3, 0.5, 1.0})
      for (int T : {1, 2, 5, 50}) CHECK(std::abs(total_mass(make_pmf(f, a, T)) - 1.0) <= 1e-12);
}

TEST_CASE("lognormal discretization") {
  const Pmf p = discretize_lognormal(60.0, 2.5, 1.1, 10.0, 144);
  CHECK(std::abs(total_mass(p) - 1.0) <= 1e-12);
  for (int k = 1; k <= 6; ++k) CHECK(p.prob(k) == 0.0);
  CHECK(p.prob(7) > 0.0);
  CHECK(p.max_support() == 144);

  const Pmf median = discretize_lognormal(0.0, std::log(30.0), 0.5, 10.0, 144);
  CHECK(std::abs(median.cdf(3) - 0.5) <= 0.03);

  CHECK(shifted_lognormal_cdf(60.0, 60.0, 1.0, 1.0) == 0.0);
  CHECK(shifted_lognormal_cdf(60.0 + std::exp(2.0), 60.0, 2.0, 0.7) == doctest::Approx(0.5));
  CHECK_THROWS_AS(discretize_lognormal(1440.0, 1.0, 1.0, 10.0, 144), InvalidInput);
  CHECK_THROWS_AS(discretize_lognormal(0.0, 1.0, 0.0, 10.0, 144), InvalidInput);
  CHECK_THROWS_AS(discretize_lognormal(0.0, 1.0, 1.0, 0.0, 144), InvalidInput);
}

TEST_CASE("family decay curves") {
  CHECK(make_step_decay(1.0, 1)(1) == 1.0);
  CHECK(make_step_decay(1.0, 1)(2) == 0.0);
  CHECK(make_linear_decay(1.0, 3)(0) == 1.0);
  CHECK(make_linear_decay(1.0, 3)(3) == doctest::Approx(0.25));
  CHECK(make_linear_decay(1.0, 3)(4) == 0.0);
  CHECK(make_exp_decay(0.7, 6)(0) == doctest::Approx(0.7));
  CHECK(make_exp_decay(0.7, 6)(6) == doctest::Approx(0.7 * std::exp(-3.0)));
  for (DecayKind k : kDecayFamilies) {
    CHECK(make_decay(k, 0.5, 4).deadline() == 4);
    CHECK_THROWS_AS(make_decay(k, 1.5, 4), InvalidInput);
    CHECK_THROWS_AS(make_decay(k, 0.5, 0), InvalidInput);
  }
}

TEST_CASE("random piecewise-linear decay") {
  Rng rng(99);
  const int T = 144;
  for (int draw = 0; draw < 1000; ++draw) {
    const DecayFunction v = gen_piecewise_linear_decay(T, rng);
    CHECK(v.kind() == DecayKind::PiecewiseLinear);
    const auto& knots = v.knots();
    for (std::size_t k = 0; k < knots.size(); ++k) {
      CHECK(knots[k].slot == static_cast<int>(k) * kPiecewiseSpacing);
      if (k > 0) {
        CHECK(knots[k].value <= knots[k - 1].value);
        CHECK(knots[k - 1].value - knots[k].value <= 3.0 / T + 1e-15);
      }
    }
    for (int t = 1; t <= T + 2; ++t) {
      CHECK(v(t) <= v(t - 1));
      CHECK(v(t) >= 0.0);
      // Continuity: consecutive slots differ by at most one slot's worth of
      // the steepest segment.
      if (t <= v.deadline()) CHECK(v(t - 1) - v(t) <= 1.0 / T + 1e-12);
    }
    CHECK(v(T + 1) == 0.0);
  }
}

TEST_CASE("piecewise-linear telescoping with unit drops") {
  const int T = 30;
  const std::vector<double> drops(T / kPiecewiseSpacing, 1.0);
  const DecayFunction v = piecewise_linear_from_draws(T, 1.0, drops);
  for (int k = 0; 3 * k <= T; ++k)
    CHECK(v(3 * k) == doctest::Approx(std::max(1.0 - 3.0 * k / T, 0.0)));
  for (int t = 0; t <= T; ++t) CHECK(v(t) == doctest::Approx(std::max(1.0 - double(t) / T, 0.0)));
}

TEST_CASE("instance sampling") {
  ScenarioSpec spec;
  spec.num_jobs = 5;
  spec.num_processors = 2;
  spec.slots = 5;
  Rng a(17), b(17);
  const Instance x = sample_instance(spec, a);
  const Instance y = sample_instance(spec, b);
  CHECK(x.num_jobs() == 5);
  CHECK(x.num_processors() == 2);
  CHECK(x.horizon() == 6);
  for (int j = 0; j < 5; ++j) {
    CHECK(approx_equal(x.job(j).pmf, make_uniform_pmf(1.0, 5), 0.0));
    CHECK(x.job(j).decay.kind() == DecayKind::Step);
    CHECK(x.job(j).pmf.probs().size() == y.job(j).pmf.probs().size());
    CHECK(approx_equal(x.job(j).pmf, y.job(j).pmf, 0.0));
    CHECK(x.job(j).decay.height() == y.job(j).decay.height());
    CHECK(x.job(j).decay.deadline() == y.job(j).decay.deadline());
    CHECK(x.job(j).decay.deadline() >= 1);
    CHECK(x.job(j).decay.deadline() <= 5);
  }

  for (PmfMode pm : {PmfMode::Uniform, PmfMode::Decreasing, PmfMode::Increasing,
                     PmfMode::Bathtub, PmfMode::Heterogeneous})
    for (DecayMode dm : {DecayMode::Step, DecayMode::Linear, DecayMode::Exponential,
                         DecayMode::Heterogeneous, DecayMode::PiecewiseLinear})
      for (AMode am : {AMode::Fixed, AMode::Random}) {
        ScenarioSpec s{"grid", 6, 2, 8, pm, dm, am, 1.0, {}, 1};
        Rng rng(derive_seed(5, {static_cast<std::uint64_t>(pm), static_cast<std::uint64_t>(dm),
                                static_cast<std::uint64_t>(am)}));
        for (int rep = 0; rep < 20; ++rep) {
          const Instance inst = sample_instance(s, rng);
          for (const Job& job : inst.jobs()) {
            CHECK(std::abs(total_mass(job.pmf) - 1.0) <= 1e-12);
            for (int t = 1; t <= inst.horizon(); ++t) CHECK(job.decay(t) <= job.decay(t - 1));
          }
        }
      }
}

TEST_CASE("patient scenario") {
  const ScenarioSpec spec = patient_scenario(20);
  CHECK(spec.num_processors == 6);
  CHECK(spec.slots == 144);
  Rng rng(3);
  const Instance inst = sample_instance(spec, rng);
  for (const Job& job : inst.jobs()) {
    for (int k = 1; k <= 6; ++k) CHECK(job.pmf.prob(k) == 0.0);
    CHECK(job.decay.kind() == DecayKind::PiecewiseLinear);
  }
}

TEST_CASE("scenario validation and names") {
  ScenarioSpec bad;
  bad.num_jobs = 0;
  CHECK_THROWS_AS(validate(bad), InvalidInput);
  ScenarioSpec bad_a;
  bad_a.fixed_a = 1.5;
  CHECK_THROWS_AS(validate(bad_a), InvalidInput);
  CHECK(pmf_mode_from_string("geometric") == PmfMode::Decreasing);
  for (PmfMode m : {PmfMode::Uniform, PmfMode::Lognormal, PmfMode::Heterogeneous})
    CHECK(pmf_mode_from_string(to_string(m)) == m);
  for (DecayMode m : {DecayMode::Step, DecayMode::PiecewiseLinear, DecayMode::Heterogeneous})
    CHECK(decay_mode_from_string(to_string(m)) == m);
  CHECK(a_mode_from_string(to_string(AMode::Random)) == AMode::Random);
  CHECK_FALSE(pmf_mode_from_string("weibull").has_value());
}
