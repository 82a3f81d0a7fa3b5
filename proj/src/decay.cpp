#include "decaysched/decay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "decaysched/error.hpp"

namespace decaysched {

namespace {

void check_family_params(double b, int c) {
  if (!std::isfinite(b) || b < 0.0)
    throw InvalidInput("decay: initial value must be finite and >= 0");
  if (c < 0) throw InvalidInput("decay: cutoff slot must be >= 0");
}

}  // namespace

std::string_view to_string(DecayKind kind) {
  switch (kind) {
    case DecayKind::Step: return "step";
    case DecayKind::Linear: return "linear";
    case DecayKind::Exponential: return "exponential";
    case DecayKind::PiecewiseLinear: return "piecewise_linear";
  }
  return "unknown";
}

std::optional<DecayKind> decay_kind_from_string(std::string_view name) {
  if (name == "step") return DecayKind::Step;
  if (name == "linear") return DecayKind::Linear;
  if (name == "exponential" || name == "exp") return DecayKind::Exponential;
  if (name == "piecewise_linear" || name == "piecewise-linear")
    return DecayKind::PiecewiseLinear;
  return std::nullopt;
}

DecayFunction::DecayFunction(DecayKind kind, double height, int cutoff,
                             std::vector<Knot> knots)
    : kind_(kind), height_(height), cutoff_(cutoff), knots_(std::move(knots)) {
  // All families are zero after cutoff_, so the deadline is found by a
  // backwards scan from there.
  deadline_ = -1;
  for (int t = cutoff_; t >= 0; --t) {
    if (raw_value(t) > 0.0) {
      deadline_ = t;
      break;
    }
  }
}

DecayFunction DecayFunction::step(double b, int c) {
  check_family_params(b, c);
  return DecayFunction(DecayKind::Step, b, c, {});
}

DecayFunction DecayFunction::linear(double b, int c) {
  check_family_params(b, c);
  return DecayFunction(DecayKind::Linear, b, c, {});
}

DecayFunction DecayFunction::exponential(double b, int c) {
  check_family_params(b, c);
  return DecayFunction(DecayKind::Exponential, b, c, {});
}

DecayFunction DecayFunction::piecewise_linear(std::vector<Knot> knots,
                                              int hold_until) {
  if (knots.empty()) throw InvalidInput("decay: piecewise-linear needs knots");
  if (knots.front().slot != 0)
    throw InvalidInput("decay: first knot must be at slot 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const Knot& k = knots[i];
    if (!std::isfinite(k.value) || k.value < 0.0)
      throw InvalidInput("decay: knot values must be finite and >= 0");
    if (i > 0) {
      if (k.slot <= knots[i - 1].slot)
        throw InvalidInput("decay: knot slots must be strictly increasing");
      if (k.value > knots[i - 1].value)
        throw InvalidInput("decay: knot values must be non-increasing");
    }
  }
  if (hold_until < 0) throw InvalidInput("decay: hold_until must be >= 0");
  const double height = knots.front().value;
  return DecayFunction(DecayKind::PiecewiseLinear, height, hold_until,
                       std::move(knots));
}

double DecayFunction::raw_value(int t) const {
  if (t < 0) t = 0;
  if (t > cutoff_) return 0.0;
  switch (kind_) {
    case DecayKind::Step:
      return height_;
    case DecayKind::Linear:
      return height_ * (1.0 - static_cast<double>(t) / (cutoff_ + 1));
    case DecayKind::Exponential:
      return cutoff_ == 0 ? height_
                          : height_ * std::exp(-3.0 * t / cutoff_);
    case DecayKind::PiecewiseLinear: {
      if (t >= knots_.back().slot) return knots_.back().value;
      auto hi = std::upper_bound(
          knots_.begin(), knots_.end(), t,
          [](int slot, const Knot& k) { return slot < k.slot; });
      auto lo = hi - 1;
      const double w = static_cast<double>(t - lo->slot) / (hi->slot - lo->slot);
      return std::max(0.0, lo->value + w * (hi->value - lo->value));
    }
  }
  return 0.0;
}

double DecayFunction::value(int t) const {
  if (t > deadline_) return 0.0;
  return raw_value(t);
}

DecayFunction DecayFunction::scaled(double factor) const {
  if (!std::isfinite(factor) || factor < 0.0)
    throw InvalidInput("decay: scale factor must be finite and >= 0");
  if (kind_ == DecayKind::PiecewiseLinear) {
    std::vector<Knot> knots = knots_;
    for (Knot& k : knots) k.value *= factor;
    return piecewise_linear(std::move(knots), cutoff_);
  }
  return DecayFunction(kind_, height_ * factor, cutoff_, {});
}

}  // namespace decaysched
