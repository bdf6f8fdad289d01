#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "gwve/environment.h"
#include "gwve/pgf.h"
#include "gwve/rng.h"
#include "gwve/tree.h"

namespace gwve {

struct SamplerLimits {
  long long population_cap = 100'000'000;  // total individuals per tree
  long long attempt_cap = 10'000'000;      // rejection attempts
};

// Offspring law of one generation under the spine change of measure:
// probabilities proportional to q_{m+1}(l) l^[g] x^{l-g} with
// x = f_{m+1,n}(e^-theta), normalized by d^g f_{m+1}(x).
// g = 0 is the off-spine law, g = 1 the spine carrier between splits,
// g >= 2 the law at a split into g groups.
struct TiltedLaw {
  int base_generation = 0;  // m (the parent's generation)
  int group_count = 0;      // g
  double theta = 0.0;
  double tail_value = 1.0;  // x = f_{m+1,n}(e^-theta)
  int support_start = 0;    // g for g >= 1, else 0
  std::vector<double> cumulative;  // over l = support_start, support_start+1, ...

  int sample(Philox& rng) const;
  double prob(int l) const;  // probability of offspring count l
};

TiltedLaw tilted_offspring(const Environment& env, int m, int n, int g, double theta);

// One admissible first-split outcome: at generation split_generation the
// spines are last all together; the following generation they form
// group_sizes.size() groups of the given sizes.
struct SplitPlan {
  int split_generation = 0;      // psi_1
  std::vector<int> group_sizes;  // non-increasing, sums to k
  double probability = 0.0;
};

// Full table over split generation, group count and sizes; masses sum to 1
// (ConsistencyError beyond 1e-9).  Requires k >= 2.
std::vector<SplitPlan> split_plan_distribution(const Environment& env, int n, int k, double theta);

// ---------------------------------------------------------------------------
// Plain GWVE forward sampling under the original measure.

namespace detail {
struct GenTable;
}

class GwSampler {
 public:
  GwSampler(Environment env, int n, SamplerLimits limits = {});

  // Generation-by-generation sampling; extinction before n returns the
  // truncated genealogy (height < n).
  Genealogy sample(Philox& rng) const;

  struct Surviving {
    Genealogy tree;
    long long attempts = 0;
  };
  // Rejection until census(n) >= min_pop; BudgetError past the attempt cap.
  Surviving sample_surviving(Philox& rng, int min_pop) const;

  const Environment& env() const { return env_; }
  int n() const { return n_; }

 private:
  Environment env_;
  int n_ = 0;
  SamplerLimits limits_;
  std::vector<std::shared_ptr<const detail::GenTable>> tables_;  // per generation 1..n
};

Genealogy sample_gw(const Environment& env, int n, Philox& rng, const SamplerLimits& limits = {});
GwSampler::Surviving sample_gw_surviving(const Environment& env, int n, Philox& rng, int min_pop,
                                         const SamplerLimits& limits = {});

// Population counts only (one closed-form sum draw per generation); the
// trajectory stops at extinction.
class PopulationSampler {
 public:
  PopulationSampler(Environment env, int n, SamplerLimits limits = {});

  std::vector<long long> sample(Philox& rng) const;

  struct Surviving {
    std::vector<long long> counts;
    long long attempts = 0;
  };
  Surviving sample_surviving(Philox& rng, long long min_pop) const;

 private:
  Environment env_;
  int n_ = 0;
  SamplerLimits limits_;
  std::vector<OffspringLaw> laws_;  // per generation 1..n
  std::vector<std::shared_ptr<const detail::GenTable>> tables_;
};

// ---------------------------------------------------------------------------
// The k-spine tree under the size-biased, discounted measure.

// The spine forest without its off-spine bushes: every split event in
// depth-first creation order.  Sufficient for all split-time statistics.
struct SpineSkeleton {
  struct Split {
    int generation = 0;           // last generation the group was together
    std::vector<int> sizes;       // the g >= 2 group sizes created
  };
  int n = 0;
  int k = 1;
  std::vector<Split> splits;
};

class QSampler {
 public:
  QSampler(Environment env, int n, int k, double theta, SamplerLimits limits = {});

  // Forward construction of the full spined tree; the k spine leaves are
  // always distinct and at height n.
  SpinedTree sample_tree(Philox& rng) const;

  // Split structure only; no off-spine offspring are materialized.
  SpineSkeleton sample_skeleton(Philox& rng) const;

  // Skeleton plus the final population size, with all off-spine bushes
  // merged into one aggregated unmarked-population trajectory.
  struct SkeletonWithPopulation {
    SpineSkeleton skeleton;
    long long z_n = 0;
  };
  SkeletonWithPopulation sample_population(Philox& rng) const;

  // Exact tail Q(psi_1 >= m) of the first split for a subgroup of j spines
  // whose lineage starts at generation p (absolute indices).
  double first_split_tail(int p, int j, int m) const;

  // log E[e^{-theta Z_n} Z_n^[k]] (the change-of-measure normalizer).
  double log_normalizer() const { return log_moment(k_, 0); }
  double log_moment(int j, int m) const { return log_d_[j][m]; }

  int n() const { return n_; }
  int k() const { return k_; }
  double theta() const { return theta_; }
  const Environment& env() const { return env_; }

 private:
  struct SplitChoice {
    std::vector<int> sizes;
    double probability = 0.0;  // conditional on the split generation
  };

  int draw_split_generation(int p, int j, Philox& rng) const;
  const std::vector<SplitChoice>& split_choices(int m, int j) const;

  Environment env_;
  int n_ = 0;
  int k_ = 1;
  double theta_ = 0.0;
  SamplerLimits limits_;
  std::vector<std::vector<double>> log_d_;      // log_d_[j][m], j = 0..k
  std::vector<double> x_;                       // x_[m] = f_{m,n}(e^-theta)
  std::vector<TiltedLaw> off_spine_;            // per generation m = 0..n-1, g = 0
  std::vector<TiltedLaw> carrier_;              // per generation m = 0..n-1, g = 1
  std::vector<OffspringLaw> off_spine_agg_;     // discounted laws for sum draws
  // split_[j-2][m] = conditional (sizes | psi_1 = m) table for j spines
  std::vector<std::vector<std::vector<SplitChoice>>> split_;
  // split-generation offspring tables, built for every (m, g) with g >= 2
  std::vector<std::vector<TiltedLaw>> split_offspring_;
};

SpinedTree sample_q_tree(const Environment& env, int n, int k, double theta, Philox& rng,
                         const SamplerLimits& limits = {});

// Samples a plain tree conditioned on Z_n >= k by rejection, draws the k
// spines uniformly without replacement at height n, and returns the
// importance weight e^{-theta Z_n} Z_n^[k] against the spined measure.
struct WeightedSpinedTree {
  SpinedTree tree;
  double weight = 0.0;
  long long attempts = 0;
};
WeightedSpinedTree importance_sample_q(const Environment& env, int n, int k, double theta,
                                       Philox& rng, const SamplerLimits& limits = {});

}  // namespace gwve
