#pragma once

#include <functional>
#include <vector>

#include "gwve/environment.h"

namespace gwve {

// A limit-law evaluation request: k sampled particles, discount theta >= 0,
// times in (0,1), and the quadrature tolerance for integral evaluators.
struct LimitQuery {
  int k = 2;
  double theta = 0.0;
  std::vector<double> times;
  double tolerance = 1e-10;
};

// Adaptive Gauss-Legendre quadrature of f over [a,b] (32-point panels,
// bisection to `tol`); throws QuadratureError past the subdivision cap.
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int max_depth = 48);

// The canonical limit of the joint tail of the permuted coalescent times,
//   int_0^inf k/(1+x)^2 prod_i (1 - 1/(1+x(1-t_i))) dx,
// evaluated after mapping x = u/(1-u) onto (0,1).  theta must be 0.
double limit_joint_tail_integral(const LimitQuery& query);

// The displayed closed form
//   k ( prod (1-t_i)/t_i - sum_j (1-t_j)/t_j prod_{i != j} t_i/(t_i - t_j) log(1-t_j) )
// taken literally; requires pairwise distinct times.  Known to disagree with
// the integral representation (see consistency_report), so the integral is
// the canonical evaluator.
double limit_joint_tail_closed(const LimitQuery& query);

struct ClosedFormConsistency {
  double integral = 0.0;
  double closed_form = 0.0;
  double discrepancy = 0.0;
  bool consistent = false;
};

// Evaluates both routes and reports; never silently prefers the closed form.
ClosedFormConsistency joint_tail_consistency(const LimitQuery& query, double tol = 1e-6);

// lim Q(psi_1 >= S_n(t)) = ((1+theta)(1-t) / (1+theta(1-t)))^{k-1}.
double limit_psi1_tail(int k, double theta, double t);

// Limiting first-split group sizes: (1{k1=k2} + 2 * 1{k1!=k2}) / (k-1).
double limit_group_split(int k, int k1, int k2);

// Common limit law of the permuted split times: F(t) = t / (1+theta(1-t)).
double limit_split_marginal_cdf(double theta, double t);

// Standard exponential CDF (the Yaglom limit of Z_n / a_n given survival).
double yaglom_cdf(double x);

// Laplace transform of the off-spine bush size Y_n(u) for a spine node at
// generation m with g marked children:
//   d^g f_{m+1}(f_{m+1,n}(e^-lambda)) / d^g f_{m+1}(f_{m+1,n}(e^-theta)).
double bush_laplace(const Environment& env, int n, int m, int g, double theta, double lambda);

// lim Q[e^{-(lambda-theta) Z_n / a_n} | split times at t_1..t_{k-1}]
//   = (1+theta)^2/(1+lambda)^2 * prod (1+theta(1-t_i))/(1+lambda(1-t_i)).
double limit_q_laplace(int k, double theta, const std::vector<double>& times, double lambda);

}  // namespace gwve
