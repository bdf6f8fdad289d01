#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwve/rng.h"

namespace gwve {

enum class LawFamily { kPoisson, kBinomial, kLinearFractional, kExplicitFinite };

// One generation's offspring distribution with exact pgf, derivatives and
// moments.  Value type; all queries are pure.
//
// The linear-fractional family is parametrized as
//   q(0) = 1 - b/(1-c),   q(k) = b c^{k-1}  (k >= 1),
// which covers the geometric law q(k) = p(1-p)^k via b = p(1-p), c = 1-p.
class OffspringLaw {
 public:
  static OffspringLaw poisson(double rate);
  static OffspringLaw binomial(int trials, double success_prob);
  static OffspringLaw linear_fractional(double b, double c);
  static OffspringLaw geometric(double p);
  static OffspringLaw explicit_finite(std::vector<double> probs);

  LawFamily family() const { return family_; }

  // f(s) = sum_k s^k q(k) for s in [0,1].  Throws std::domain_error outside.
  double pgf(double s) const;

  // d^g f / ds^g at s, closed form per family.  g = 0 returns pgf(s).
  // Orders above kMaxDerivativeOrder throw UnsupportedOrderError.
  double pgf_derivative(int order, double s) const;

  double pmf(int k) const;

  double mean() const;      // f'(1)
  double variance() const;  // f''(1) + f'(1) - f'(1)^2
  double nu() const;        // f''(1) / f'(1)^2

  // Inclusive upper end of the support, or -1 when unbounded.
  int support_bound() const;

  // Law with pmf proportional to q(l) x^l, x in (0,1].  Closed within the
  // family; this is the per-generation law of particles off the spines.
  OffspringLaw discounted(double x) const;

  // One draw of the sum of `count` iid copies (closed-form family sums:
  // Poisson -> Poisson, binomial -> binomial, linear-fractional ->
  // binomial + negative binomial, finite table -> sequential binomials).
  long long sample_sum(long long count, Philox& rng) const;

  // Cumulative probabilities P(X <= k) for k = 0.. until the tail mass drops
  // below tail_eps (finite supports are emitted whole).
  std::vector<double> cumulative_table(double tail_eps = 1e-15) const;

  nlohmann::json to_json() const;
  static OffspringLaw from_json(const nlohmann::json& j);

  bool operator==(const OffspringLaw& other) const = default;

  static constexpr int kMaxDerivativeOrder = 12;

 private:
  OffspringLaw() = default;

  LawFamily family_ = LawFamily::kPoisson;
  double a_ = 0.0;                // poisson rate / binomial p / LF b
  double b_ = 0.0;                // LF c (unused otherwise)
  int trials_ = 0;                // binomial only
  std::vector<double> table_;     // explicit-finite only
};

}  // namespace gwve
