#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace decaysched {

enum class DecayKind { Step, Linear, Exponential, PiecewiseLinear };

std::string_view to_string(DecayKind kind);
std::optional<DecayKind> decay_kind_from_string(std::string_view name);

// Breakpoint of a piecewise-linear curve.
struct Knot {
  int slot = 0;
  double value = 0.0;
};

// Deterministic, non-negative, non-increasing value v(t) earned by a job that
// completes at slot t. Every curve reaches zero in finite time; deadline() is
// the last slot with v > 0, or -1 if the curve is identically zero.
class DecayFunction {
 public:
  // v(t) = b for t <= c, else 0.
  static DecayFunction step(double b, int c);
  // v(t) = b (1 - t / (c + 1)) for t <= c, else 0.
  static DecayFunction linear(double b, int c);
  // v(t) = b exp(-3 t / c) for t <= c, else 0.
  static DecayFunction exponential(double b, int c);
  // Linear interpolation between knots (slots strictly increasing, first
  // knot at slot 0, values non-increasing); the last knot's value is held
  // through hold_until, and v(t) = 0 afterwards.
  static DecayFunction piecewise_linear(std::vector<Knot> knots, int hold_until);

  double value(int t) const;
  double operator()(int t) const { return value(t); }

  int deadline() const { return deadline_; }
  DecayKind kind() const { return kind_; }

  // Parameters of the Step/Linear/Exponential families.
  double height() const { return height_; }
  int cutoff() const { return cutoff_; }

  // Parameters of PiecewiseLinear.
  const std::vector<Knot>& knots() const { return knots_; }
  int hold_until() const { return cutoff_; }

  // The same curve multiplied by factor >= 0.
  DecayFunction scaled(double factor) const;

 private:
  DecayFunction(DecayKind kind, double height, int cutoff,
                std::vector<Knot> knots);
  double raw_value(int t) const;

  DecayKind kind_;
  double height_ = 0.0;
  int cutoff_ = 0;
  std::vector<Knot> knots_;
  int deadline_ = -1;
};

}  // namespace decaysched
