#pragma once

#include <span>
#include <vector>

namespace decaysched {

// Probability mass function of a service duration on {1, ..., Tmax} slots.
// probs()[k - 1] is P(sigma = k); duration 0 is impossible.
class Pmf {
 public:
  // Tolerance on the sum of the supplied probabilities. Accepted input is
  // renormalized, so the stored masses sum to 1 to rounding.
  static constexpr double kSumTolerance = 1e-9;

  explicit Pmf(std::vector<double> probs);

  // Normalizes non-negative weights with a positive total.
  static Pmf from_weights(std::vector<double> weights);
  static Pmf point_mass(int duration);

  // Tmax: the largest representable duration.
  int max_support() const { return static_cast<int>(probs_.size()); }
  // Smallest / largest duration with positive mass.
  int min_positive() const { return min_positive_; }
  int max_positive() const { return max_positive_; }

  double prob(int k) const;
  // P(sigma <= k).
  double cdf(int k) const;
  // P(sigma >= k), accumulated from the tail so the last positive point has
  // survival equal to its own mass.
  double survival(int k) const;

  double mean() const { return mean_; }
  double variance() const;

  // P(sigma = age + 1 | sigma >= age + 1). Throws InvalidInput when the
  // conditioning event has probability zero.
  double hazard(int age) const;

  // Inverse CDF: smallest k with P(sigma <= k) > u, for u in [0, 1).
  int quantile(double u) const;

  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
  std::vector<double> tail_;
  double mean_ = 0.0;
  int min_positive_ = 0;
  int max_positive_ = 0;
};

// Element-wise comparison, treating missing trailing entries as zero.
bool approx_equal(const Pmf& a, const Pmf& b, double tol = 1e-12);

}  // namespace decaysched
