#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwve/offspring_law.h"

namespace gwve {

// The sequence e = (q_1, q_2, ...) of offspring laws.  law(m) is deterministic
// and reproducible for every m >= 1, including for parametric environments
// (derived from the seed and the generation index alone), so shifted copies
// never need to store the full sequence.
class Environment {
 public:
  enum class Kind { kExplicit, kCyclic, kParametric };

  static Environment constant(OffspringLaw law, int horizon_hint = 0);
  static Environment explicit_list(std::vector<OffspringLaw> laws);
  static Environment cyclic(std::vector<OffspringLaw> laws, int horizon_hint = 0);
  // Deterministic per-generation jitter: generation m draws u = u(seed, m)
  // uniform on [0,1) and uses families[h(seed,m) % |families|] with its rate
  // parameter scaled by exp(amplitude * (2u - 1)) around `center`.
  static Environment parametric(std::uint64_t seed, double center, double amplitude,
                                std::vector<std::string> families, int horizon_hint = 0);

  Kind kind() const { return kind_; }
  int horizon_hint() const { return horizon_hint_; }

  // Offspring law of generation m (1-based, matching q_m).
  OffspringLaw law(int m) const;

  // Shift e_m: law(j) of the result equals law(m + j) of *this.
  Environment shifted(int m) const;

  nlohmann::json to_json() const;
  static Environment from_json(const nlohmann::json& j);

 private:
  Environment() = default;

  Kind kind_ = Kind::kExplicit;
  std::shared_ptr<const std::vector<OffspringLaw>> laws_;
  int offset_ = 0;  // shift applied to generation indices
  int horizon_hint_ = 0;
  // parametric parameters
  std::uint64_t seed_ = 0;
  double center_ = 1.0;
  double amplitude_ = 0.0;
  std::shared_ptr<const std::vector<std::string>> families_;
};

// Per-generation tables mu_m, nu_m, rho_m, a_m for m = 0..n and the
// remaining-variance ratios A_{n,m}.
struct EnvSummary {
  int n = 0;
  std::vector<double> mu;   // mu[m], m = 0..n; mu[0] = 1
  std::vector<double> nu;   // nu[m], m = 1..n; nu[0] unused (0)
  std::vector<double> rho;  // rho[m], m = 0..n; rho[0] = 0
  std::vector<double> a;    // a[m], m = 0..n; a[0] = 1

  // A_{n,m} = 1 - rho_{m+1}/rho_n for -1 <= m < n, indexed by m+1:
  // A(m) == big_a[m+1], so big_a[0] = A_{n,-1} = 1 and big_a[n] = A_{n,n-1} = 0.
  std::vector<double> big_a;

  double big_a_at(int m) const { return big_a[m + 1]; }
};

// Tables of mu, nu, rho, a and A_{n,.} for generations 0..n.
// Throws DegenerateEnvironmentError when some law has zero mean.
EnvSummary env_summary(const Environment& env, int n);

// S_n(t) = max{m in [0,n] : rho_m <= t rho_n}; the time change that maps
// limit time t in [0,1] to a generation.
int time_change(const EnvSummary& summary, double t);
int time_change(const Environment& env, int n, double t);

// Finite-horizon criticality diagnostics.  The criterion itself is a double
// limit (a_n -> inf and a_n/mu_n -> inf), so this reports monotone-growth
// evidence and never certifies a classification.
struct ClassifyResult {
  std::vector<double> a_trajectory;          // a_m, m = 0..horizon
  std::vector<double> a_over_mu_trajectory;  // a_m / mu_m
  bool a_unbounded_evidence = false;
  bool a_over_mu_unbounded_evidence = false;
  bool likely_critical = false;
  // Condition (A): f'''(1) <= c f''(1)(1 + f'(1)) per generation; smallest
  // admissible constant over the horizon, and whether it is finite.
  double condition_a_constant = 0.0;
  bool condition_a_holds = true;
  std::vector<std::string> warnings;
};

ClassifyResult classify(const Environment& env, int horizon);

}  // namespace gwve
