#include "decaysched/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "decaysched/error.hpp"

namespace decaysched {

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidInput("pmf: empty support");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0)
      throw InvalidInput("pmf: probabilities must be finite and non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance)
    throw InvalidInput("pmf: probabilities sum to " + std::to_string(total));
  for (double& p : probs_) p /= total;

  const int n = max_support();
  cdf_.resize(n);
  tail_.resize(n);
  std::partial_sum(probs_.begin(), probs_.end(), cdf_.begin());
  double acc = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    acc += probs_[i];
    tail_[i] = acc;
  }
  for (int k = 1; k <= n; ++k) mean_ += k * probs_[k - 1];
  min_positive_ = 0;
  for (int k = 1; k <= n; ++k) {
    if (probs_[k - 1] > 0.0) {
      if (min_positive_ == 0) min_positive_ = k;
      max_positive_ = k;
    }
  }
}

Pmf Pmf::from_weights(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw InvalidInput("pmf: weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidInput("pmf: all weights are zero");
  for (double& w : weights) w /= total;
  return Pmf(std::move(weights));
}

Pmf Pmf::point_mass(int duration) {
  if (duration < 1) throw InvalidInput("pmf: durations start at 1");
  std::vector<double> probs(duration, 0.0);
  probs.back() = 1.0;
  return Pmf(std::move(probs));
}

double Pmf::prob(int k) const {
  if (k < 1 || k > max_support()) return 0.0;
  return probs_[k - 1];
}

double Pmf::cdf(int k) const {
  if (k < 1) return 0.0;
  if (k >= max_support()) return 1.0;
  return cdf_[k - 1];
}

double Pmf::survival(int k) const {
  if (k <= 1) return 1.0;
  if (k > max_support()) return 0.0;
  return tail_[k - 1];
}

double Pmf::variance() const {
  double second = 0.0;
  for (int k = 1; k <= max_support(); ++k) second += double(k) * k * probs_[k - 1];
  return std::max(0.0, second - mean_ * mean_);
}

double Pmf::hazard(int age) const {
  if (age < 0) throw InvalidInput("hazard: negative age");
  const double alive = survival(age + 1);
  if (!(alive > 0.0))
    throw InvalidInput("hazard: job cannot still be in service at age " +
                       std::to_string(age));
  return std::min(1.0, prob(age + 1) / alive);
}

int Pmf::quantile(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  int k = static_cast<int>(it - cdf_.begin()) + 1;
  // Rounding in the cumulative sum can leave u above the final entry.
  return std::clamp(k, min_positive_, max_positive_);
}

bool approx_equal(const Pmf& a, const Pmf& b, double tol) {
  const int n = std::max(a.max_support(), b.max_support());
  for (int k = 1; k <= n; ++k)
    if (std::abs(a.prob(k) - b.prob(k)) > tol) return false;
  return true;
}

}  // namespace decaysched
