#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "decaysched/decay.hpp"
#include "decaysched/error.hpp"

using namespace decaysched;

namespace {

void check_shape(const DecayFunction& v, int horizon) {
  for (int t = 0; t <= horizon; ++t) {
    CHECK(v(t) >= 0.0);
    if (t > 0) CHECK(v(t) <= v(t - 1) + 1e-15);
    if (t > v.deadline()) CHECK(v(t) == 0.0);
  }
  if (v.deadline() >= 0) CHECK(v(v.deadline()) > 0.0);
}

}  // namespace

TEST_CASE("step decay") {
  const auto v = DecayFunction::step(1.0, 1);
  CHECK(v(0) == 1.0);
  CHECK(v(1) == 1.0);
  CHECK(v(2) == 0.0);
  CHECK(v.deadline() == 1);
  check_shape(v, 10);
}

TEST_CASE("linear decay") {
  const auto v = DecayFunction::linear(1.0, 3);
  CHECK(v(0) == 1.0);
  CHECK(v(3) == doctest::Approx(0.25));
  CHECK(v(4) == 0.0);
  CHECK(v.deadline() == 3);
  check_shape(v, 10);
}

TEST_CASE("exponential decay") {
  const auto v = DecayFunction::exponential(0.6, 4);
  CHECK(v(0) == doctest::Approx(0.6));
  CHECK(v(4) == doctest::Approx(0.6 * std::exp(-3.0)));
  CHECK(v(5) == 0.0);
  CHECK(v.deadline() == 4);
  check_shape(v, 10);
}

TEST_CASE("zero curves have no deadline") {
  CHECK(DecayFunction::step(0.0, 4).deadline() == -1);
  CHECK(DecayFunction::linear(0.0, 4)(0) == 0.0);
  CHECK(DecayFunction::step(0.5, 3).scaled(0.0).deadline() == -1);
}

TEST_CASE("piecewise linear decay") {
  const auto v = DecayFunction::piecewise_linear({{0, 0.9}, {3, 0.6}, {6, 0.6}, {9, 0.3}}, 12);
  CHECK(v(0) == doctest::Approx(0.9));
  CHECK(v(1) == doctest::Approx(0.8));
  CHECK(v(4) == doctest::Approx(0.6));
  CHECK(v(8) == doctest::Approx(0.4));
  CHECK(v(12) == doctest::Approx(0.3));
  CHECK(v(13) == 0.0);
  CHECK(v.deadline() == 12);
  check_shape(v, 20);

  const auto w = DecayFunction::piecewise_linear({{0, 0.3}, {3, 0.0}}, 10);
  CHECK(w(2) == doctest::Approx(0.1));
  CHECK(w.deadline() == 2);

  CHECK_THROWS_AS(DecayFunction::piecewise_linear({{1, 0.5}}, 3), InvalidInput);
  CHECK_THROWS_AS(DecayFunction::piecewise_linear({{0, 0.5}, {3, 0.6}}, 3), InvalidInput);
  CHECK_THROWS_AS(DecayFunction::piecewise_linear({{0, 0.5}, {0, 0.4}}, 3), InvalidInput);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(DecayFunction::step(-0.1, 3), InvalidInput);
  CHECK_THROWS_AS(DecayFunction::step(0.5, -1), InvalidInput);
  CHECK(DecayFunction::exponential(0.5, 0)(0) == 0.5);
  CHECK(DecayFunction::exponential(0.5, 0).deadline() == 0);
}

TEST_CASE("scaling") {
  const auto v = DecayFunction::linear(0.8, 5).scaled(2.5);
  CHECK(v(2) == doctest::Approx(2.0 * (1.0 - 2.0 / 6.0)));
  CHECK(v.deadline() == 5);
}

TEST_CASE("kind names") {
  for (DecayKind k : {DecayKind::Step, DecayKind::Linear, DecayKind::Exponential,
                      DecayKind::PiecewiseLinear})
    CHECK(decay_kind_from_string(to_string(k)) == k);
  CHECK_FALSE(decay_kind_from_string("cubic").has_value());
}
