#include "gwve/pgf.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gwve/errors.h"

namespace gwve {

namespace {

// Truncated power series arithmetic on Taylor coefficients (c[g] = f^(g)/g!).
using Series = std::vector<double>;

Series mul(const Series& a, const Series& b, int order) {
  Series c(order + 1, 0.0);
  for (int i = 0; i <= order; ++i) {
    if (a[i] == 0.0) continue;
    const int top = order - i;
    for (int j = 0; j <= top; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// f o g where g's constant term has been split off: given Taylor coefficients
// `outer` of f at g(0) and the fractional part `w` of g (w[0] == 0), returns
// the Taylor coefficients of the composition via Horner.
Series compose(const Series& outer, const Series& w, int order) {
  Series r(order + 1, 0.0);
  r[0] = outer[order];
  for (int i = order - 1; i >= 0; --i) {
    r = mul(r, w, order);
    r[0] += outer[i];
  }
  return r;
}

void check_range(int m, int n) {
  if (m < 0 || m > n) throw std::domain_error("pgf composition requires 0 <= m <= n");
}

}  // namespace

double pgf_eval(const OffspringLaw& law, double s) { return law.pgf(s); }

double pgf_derivative(const OffspringLaw& law, int order, double s) {
  return law.pgf_derivative(order, s);
}

double compose_pgf(const Environment& env, int m, int n, double s) {
  check_range(m, n);
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("pgf argument s must lie in [0,1]");
  double v = s;
  for (int j = n; j > m; --j) v = env.law(j).pgf(v);
  return v;
}

Jet compose_pgf_jet(const Environment& env, int m, int n, double s, int order) {
  check_range(m, n);
  auto sweep = compose_pgf_jet_sweep(env, n, s, order);
  // The sweep computes all of them; keep the requested one.  Callers that
  // need several m values should use the sweep directly.
  Jet jet = std::move(sweep[m]);
  return jet;
}

std::vector<Jet> compose_pgf_jet_sweep(const Environment& env, int n, double s, int order) {
  if (n < 0) throw std::domain_error("composition horizon must be >= 0");
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("pgf argument s must lie in [0,1]");
  if (order < 0) throw std::domain_error("jet order must be >= 0");
  if (order > OffspringLaw::kMaxDerivativeOrder)
    throw UnsupportedOrderError("jet order " + std::to_string(order) +
                                " exceeds the supported maximum");

  std::vector<Jet> out(n + 1);
  Series cur(order + 1, 0.0);
  cur[0] = s;
  if (order >= 1) cur[1] = 1.0;

  double factorial = 1.0;
  auto emit = [&](int m) {
    Jet& jet = out[m];
    jet.base = s;
    jet.derivs.resize(order + 1);
    factorial = 1.0;
    for (int g = 0; g <= order; ++g) {
      jet.derivs[g] = cur[g] * factorial;
      factorial *= (g + 1);
    }
  };

  emit(n);
  for (int j = n; j >= 1; --j) {
    const OffspringLaw law = env.law(j);
    const double v = cur[0];
    Series outer(order + 1);
    double fact = 1.0;
    for (int g = 0; g <= order; ++g) {
      outer[g] = law.pgf_derivative(g, v) / fact;
      fact *= (g + 1);
    }
    Series w = cur;
    w[0] = 0.0;
    cur = compose(outer, w, order);
    emit(j - 1);
  }
  return out;
}

std::vector<std::vector<double>> log_discounted_factorial_moments(const std::vector<Jet>& sweep,
                                                                  double theta, int k_max) {
  const int n = static_cast<int>(sweep.size()) - 1;
  std::vector<std::vector<double>> logd(k_max + 1, std::vector<double>(n + 1));
  for (int m = 0; m <= n; ++m) {
    if (sweep[m].order() < k_max)
      throw std::invalid_argument("jet sweep order is below the requested moment order");
    for (int j = 0; j <= k_max; ++j) {
      const double d = sweep[m].derivs[j];
      logd[j][m] = d > 0.0 ? std::log(d) - theta * j
                           : -std::numeric_limits<double>::infinity();
    }
  }
  return logd;
}

}  // namespace gwve
