#pragma once

#include <vector>

#include "gwve/environment.h"
#include "gwve/offspring_law.h"

namespace gwve {

// Truncated jet of a pgf composition at a base point s in [0,1]:
// derivs[g] = d^g f_{m,n} / ds^g evaluated at s.
struct Jet {
  double base = 0.0;
  std::vector<double> derivs;

  int order() const { return static_cast<int>(derivs.size()) - 1; }
  double value() const { return derivs[0]; }
};

double pgf_eval(const OffspringLaw& law, double s);
double pgf_derivative(const OffspringLaw& law, int order, double s);

// f_{m,n}(s) = f_{m+1} o ... o f_n (s), right-to-left; f_{n,n}(s) = s.
double compose_pgf(const Environment& env, int m, int n, double s);

// Propagates a truncated Taylor jet of the identity at s through each f_j
// using the exact per-family derivative formulas; exact up to roundoff.
Jet compose_pgf_jet(const Environment& env, int m, int n, double s, int order);

// Jets of f_{m,n} at s for every m = n, n-1, ..., 0 from one backward sweep;
// result[m] is the jet of f_{m,n}.  This is how the samplers obtain every
// factorial moment E[e^{-theta Z} Z^[j]] they need in O(n K^2).
std::vector<Jet> compose_pgf_jet_sweep(const Environment& env, int n, double s, int order);

// log E^{(e_m)}[e^{-theta Z_{n-m}} Z_{n-m}^[j]] = -theta j + log d^j f_{m,n}(e^{-theta}),
// derived from a sweep at s = e^{-theta}.  -inf where the moment vanishes.
std::vector<std::vector<double>> log_discounted_factorial_moments(const std::vector<Jet>& sweep,
                                                                  double theta, int k_max);

}  // namespace gwve
