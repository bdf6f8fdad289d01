#include "gwve/theory.h"

#include <cmath>
#include <stdexcept>

#include "gwve/errors.h"
#include "gwve/pgf.h"

namespace gwve {

namespace {

// 32-point Gauss-Legendre nodes/weights on [-1,1] (positive half; mirrored).
constexpr int kGL = 16;
constexpr double kGLNode[kGL] = {
    0.0483076656877383162348126, 0.1444719615827964934851864, 0.2392873622521370745446032,
    0.3318686022821276497799168, 0.4213512761306353453641194, 0.5068999089322293900237475,
    0.5877157572407623290407455, 0.6630442669302152009751152, 0.7321821187402896803874267,
    0.7944837959679424069630973, 0.8493676137325699701336930, 0.8963211557660521239653072,
    0.9349060759377396891709191, 0.9647622555875064307738119, 0.9856115115452683354001750,
    0.9972638618494815635449811};
constexpr double kGLWeight[kGL] = {
    0.0965400885147278005667648, 0.0956387200792748594190820, 0.0938443990808045656391802,
    0.0911738786957638847128686, 0.0876520930044038111427715, 0.0833119242269467552221991,
    0.0781938957870703064717409, 0.0723457941088485062253994, 0.0658222227763618468376501,
    0.0586840934785355471452836, 0.0509980592623761761961632, 0.0428358980222266806568786,
    0.0342738629130214331026877, 0.0253920653092620594557526, 0.0162743947309056706051706,
    0.0070186100094700966004071};

double gl32(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kGL; ++i) {
    const double dx = half * kGLNode[i];
    acc += kGLWeight[i] * (f(mid - dx) + f(mid + dx));
  }
  return acc * half;
}

double integrate_rec(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
  if (depth <= 0) throw QuadratureError("adaptive quadrature exceeded its subdivision cap");
  const double mid = 0.5 * (a + b);
  const double left = gl32(f, a, mid);
  const double right = gl32(f, mid, b);
  if (std::abs(left + right - whole) <= tol) return left + right;
  return integrate_rec(f, a, mid, left, 0.5 * tol, depth - 1) +
         integrate_rec(f, mid, b, right, 0.5 * tol, depth - 1);
}

void check_times(const std::vector<double>& times, int k) {
  if (static_cast<int>(times.size()) != k - 1)
    throw std::invalid_argument("need exactly k-1 times");
  for (double t : times)
    if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("times must lie in [0,1)");
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int max_depth) {
  return integrate_rec(f, a, b, gl32(f, a, b), tol, max_depth);
}

double limit_joint_tail_integral(const LimitQuery& query) {
  if (query.k < 2) throw std::domain_error("joint tail limit requires k >= 2");
  if (query.theta != 0.0)
    throw std::domain_error("the joint tail limit is stated for theta = 0");
  if (!(query.tolerance > 0.0 && query.tolerance <= 1e-4))
    throw std::domain_error("tolerance must lie in (0, 1e-4]");
  check_times(query.times, query.k);

  const int k = query.k;
  const auto& ts = query.times;
  // lambda = u/(1-u) maps (0,1) onto (0,inf); k/(1+lambda)^2 dlambda = k du,
  // so the integrand in u is k * prod_i lambda(1-t_i) / (1 + lambda(1-t_i)).
  auto f = [&](double u) {
    const double lam = u / (1.0 - u);
    double prod = 1.0;
    for (double t : ts) {
      const double z = lam * (1.0 - t);
      prod *= z / (1.0 + z);
    }
    return k * prod;
  };
  return integrate(f, 0.0, 1.0, query.tolerance);
}

double limit_joint_tail_closed(const LimitQuery& query) {
  if (query.k < 2) throw std::domain_error("joint tail limit requires k >= 2");
  check_times(query.times, query.k);
  const auto& ts = query.times;
  const int m = static_cast<int>(ts.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (ts[i] == ts[j])
        throw std::domain_error("the closed form requires pairwise distinct times");

  double prod_all = 1.0;
  for (double t : ts) prod_all *= (1.0 - t) / t;
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    const double tj = ts[j];
    double partial = (1.0 - tj) / tj;
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      partial *= ts[i] / (ts[i] - tj);
    }
    // (1-t) log(1-t) -> 0 as t -> 1; below 1e-8 the term is already under
    // 2e-7 in magnitude and log1p keeps it finite, no special casing needed.
    sum += partial * std::log1p(-tj);
  }
  return query.k * (prod_all - sum);
}

ClosedFormConsistency joint_tail_consistency(const LimitQuery& query, double tol) {
  ClosedFormConsistency r;
  r.integral = limit_joint_tail_integral(query);
  r.closed_form = limit_joint_tail_closed(query);
  r.discrepancy = std::abs(r.integral - r.closed_form);
  r.consistent = r.discrepancy <= tol;
  return r;
}

double limit_psi1_tail(int k, double theta, double t) {
  if (k < 2) throw std::domain_error("psi_1 tail limit requires k >= 2");
  if (theta < 0.0) throw std::domain_error("theta must be >= 0");
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("t must lie in [0,1)");
  const double base = (1.0 + theta) * (1.0 - t) / (1.0 + theta * (1.0 - t));
  return std::pow(base, k - 1);
}

double limit_group_split(int k, int k1, int k2) {
  if (k1 < 1 || k2 < 1 || k1 + k2 != k)
    throw std::domain_error("group sizes must be >= 1 and sum to k");
  return (k1 == k2 ? 1.0 : 2.0) / (k - 1);
}

double limit_split_marginal_cdf(double theta, double t) {
  if (theta < 0.0) throw std::domain_error("theta must be >= 0");
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("t must lie in [0,1]");
  return t / (1.0 + theta * (1.0 - t));
}

double yaglom_cdf(double x) {
  if (x < 0.0) throw std::domain_error("x must be >= 0");
  return -std::expm1(-x);
}

double bush_laplace(const Environment& env, int n, int m, int g, double theta, double lambda) {
  if (!(m >= 0 && m < n)) throw std::domain_error("bush transform requires 0 <= m < n");
  if (g < 1) throw std::domain_error("bush transform requires g >= 1");
  if (!(theta >= 0.0 && lambda >= theta))
    throw std::domain_error("bush transform requires lambda >= theta >= 0");
  const OffspringLaw law = env.law(m + 1);
  const double x_lam = compose_pgf(env, m + 1, n, std::exp(-lambda));
  const double x_th = compose_pgf(env, m + 1, n, std::exp(-theta));
  const double denom = law.pgf_derivative(g, x_th);
  if (denom <= 0.0) throw DegenerateTiltError("bush transform denominator vanished");
  return law.pgf_derivative(g, x_lam) / denom;
}

double limit_q_laplace(int k, double theta, const std::vector<double>& times, double lambda) {
  if (k < 1) throw std::domain_error("k must be >= 1");
  if (theta < 0.0 || lambda < 0.0) throw std::domain_error("theta and lambda must be >= 0");
  check_times(times, k);
  double r = (1.0 + theta) * (1.0 + theta) / ((1.0 + lambda) * (1.0 + lambda));
  for (double t : times) r *= (1.0 + theta * (1.0 - t)) / (1.0 + lambda * (1.0 - t));
  return r;
}

}  // namespace gwve
