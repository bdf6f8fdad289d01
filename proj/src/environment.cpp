#include "gwve/environment.h"

#include <cmath>
#include <stdexcept>

#include "gwve/errors.h"

namespace gwve {

Environment Environment::constant(OffspringLaw law, int horizon_hint) {
  return cyclic({std::move(law)}, horizon_hint);
}

Environment Environment::explicit_list(std::vector<OffspringLaw> laws) {
  if (laws.empty()) throw std::invalid_argument("explicit environment needs at least one law");
  Environment e;
  e.kind_ = Kind::kExplicit;
  e.horizon_hint_ = static_cast<int>(laws.size());
  e.laws_ = std::make_shared<const std::vector<OffspringLaw>>(std::move(laws));
  return e;
}

Environment Environment::cyclic(std::vector<OffspringLaw> laws, int horizon_hint) {
  if (laws.empty()) throw std::invalid_argument("cyclic environment needs at least one law");
  Environment e;
  e.kind_ = Kind::kCyclic;
  e.horizon_hint_ = horizon_hint;
  e.laws_ = std::make_shared<const std::vector<OffspringLaw>>(std::move(laws));
  return e;
}

Environment Environment::parametric(std::uint64_t seed, double center, double amplitude,
                                    std::vector<std::string> families, int horizon_hint) {
  if (families.empty()) families = {"poisson"};
  Environment e;
  e.kind_ = Kind::kParametric;
  e.horizon_hint_ = horizon_hint;
  e.seed_ = seed;
  e.center_ = center;
  e.amplitude_ = amplitude;
  e.families_ = std::make_shared<const std::vector<std::string>>(std::move(families));
  return e;
}

OffspringLaw Environment::law(int m) const {
  if (m < 1) throw std::domain_error("environment generation index must be >= 1");
  const long long idx = static_cast<long long>(m) + offset_;
  switch (kind_) {
    case Kind::kExplicit: {
      if (idx > static_cast<long long>(laws_->size()))
        throw std::domain_error("generation index beyond explicit environment length");
      return (*laws_)[idx - 1];
    }
    case Kind::kCyclic:
      return (*laws_)[(idx - 1) % laws_->size()];
    case Kind::kParametric: {
      const std::uint64_t h = mix64(seed_ ^ mix64(static_cast<std::uint64_t>(idx)));
      const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
      const double rate = center_ * std::exp(amplitude_ * (2.0 * u - 1.0));
      const std::uint64_t pick = mix64(h + 1) % families_->size();
      const std::string& fam = (*families_)[pick];
      if (fam == "poisson") return OffspringLaw::poisson(rate);
      if (fam == "binomial") {
        // two trials with success probability rate/2 keeps the mean at `rate`
        double p = rate / 2.0;
        if (p > 1.0) p = 1.0;
        return OffspringLaw::binomial(2, p);
      }
      if (fam == "geometric") {
        // mean (1-p)/p = rate  =>  p = 1/(1+rate)
        return OffspringLaw::geometric(1.0 / (1.0 + rate));
      }
      throw std::invalid_argument("unknown parametric family: " + fam);
    }
  }
  throw std::logic_error("unreachable");
}

Environment Environment::shifted(int m) const {
  if (m < 0) throw std::domain_error("environment shift must be >= 0");
  Environment e = *this;
  e.offset_ += m;
  if (e.horizon_hint_ > 0) e.horizon_hint_ = std::max(0, e.horizon_hint_ - m);
  return e;
}

nlohmann::json Environment::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::kExplicit:
    case Kind::kCyclic: {
      j["kind"] = kind_ == Kind::kExplicit ? "explicit" : "cyclic";
      nlohmann::json laws = nlohmann::json::array();
      for (const auto& law : *laws_) laws.push_back(law.to_json());
      j["laws"] = laws;
      break;
    }
    case Kind::kParametric: {
      j["kind"] = "parametric";
      j["seed"] = seed_;
      j["center"] = center_;
      j["amplitude"] = amplitude_;
      j["families"] = *families_;
      break;
    }
  }
  j["horizon"] = horizon_hint_;
  if (offset_ != 0) j["offset"] = offset_;
  return j;
}

Environment Environment::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  Environment e;
  if (kind == "explicit" || kind == "cyclic") {
    std::vector<OffspringLaw> laws;
    for (const auto& lj : j.at("laws")) laws.push_back(OffspringLaw::from_json(lj));
    e = kind == "explicit" ? explicit_list(std::move(laws))
                           : cyclic(std::move(laws), j.value("horizon", 0));
  } else if (kind == "parametric") {
    e = parametric(j.at("seed").get<std::uint64_t>(), j.value("center", 1.0),
                   j.value("amplitude", 0.0),
                   j.value("families", std::vector<std::string>{"poisson"}),
                   j.value("horizon", 0));
  } else {
    throw std::invalid_argument("unknown environment kind: " + kind);
  }
  if (j.contains("horizon")) e.horizon_hint_ = j["horizon"].get<int>();
  if (j.contains("offset")) e.offset_ = j["offset"].get<int>();
  return e;
}

EnvSummary env_summary(const Environment& env, int n) {
  if (n < 0) throw std::domain_error("summary horizon must be >= 0");
  EnvSummary s;
  s.n = n;
  s.mu.assign(n + 1, 1.0);
  s.nu.assign(n + 1, 0.0);
  s.rho.assign(n + 1, 0.0);
  s.a.assign(n + 1, 1.0);
  for (int m = 1; m <= n; ++m) {
    const OffspringLaw law = env.law(m);
    const double mean = law.mean();
    if (!(mean > 0.0))
      throw DegenerateEnvironmentError("generation " + std::to_string(m) + " has zero mean");
    s.mu[m] = s.mu[m - 1] * mean;
    s.nu[m] = law.nu();
    s.rho[m] = s.rho[m - 1] + s.nu[m] / s.mu[m - 1];
    s.a[m] = s.mu[m] * s.rho[m] / 2.0;
  }
  s.big_a.assign(n + 1, 0.0);
  s.big_a[0] = 1.0;  // A_{n,-1}
  for (int m = 0; m < n; ++m)
    s.big_a[m + 1] = s.rho[n] > 0.0 ? 1.0 - s.rho[m + 1] / s.rho[n] : 0.0;
  return s;
}

int time_change(const EnvSummary& summary, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("time-change argument t must lie in [0,1]");
  const double target = t * summary.rho[summary.n];
  // rho is non-decreasing; find the last m with rho_m <= target.
  int lo = 0, hi = summary.n;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (summary.rho[mid] <= target)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

int time_change(const Environment& env, int n, double t) {
  return time_change(env_summary(env, n), t);
}

ClassifyResult classify(const Environment& env, int horizon) {
  if (horizon < 2) throw std::domain_error("classification horizon must be >= 2");
  const EnvSummary s = env_summary(env, horizon);
  ClassifyResult r;
  r.a_trajectory = s.a;
  r.a_over_mu_trajectory.resize(horizon + 1);
  for (int m = 0; m <= horizon; ++m) r.a_over_mu_trajectory[m] = s.a[m] / s.mu[m];

  // Growth evidence: the second half keeps growing and roughly doubles.
  auto growth = [&](const std::vector<double>& traj) {
    const int half = horizon / 2;
    bool monotone = true;
    for (int m = half; m < horizon; ++m)
      if (traj[m + 1] < traj[m] * (1.0 - 1e-12)) monotone = false;
    const bool grew = traj[horizon] >= 1.5 * traj[half];
    return monotone && grew;
  };
  r.a_unbounded_evidence = growth(r.a_trajectory);
  r.a_over_mu_unbounded_evidence = growth(r.a_over_mu_trajectory);
  r.likely_critical = r.a_unbounded_evidence && r.a_over_mu_unbounded_evidence;
  if (!r.likely_critical) {
    if (r.a_over_mu_unbounded_evidence && !r.a_unbounded_evidence)
      r.warnings.push_back("a_n growth stalls while a_n/mu_n grows: subcritical-looking trend");
    else if (r.a_unbounded_evidence && !r.a_over_mu_unbounded_evidence)
      r.warnings.push_back("a_n/mu_n growth stalls while a_n grows: supercritical-looking trend");
    else
      r.warnings.push_back("no unbounded-growth evidence at this horizon; trend inconclusive");
  }

  double c_best = 0.0;
  bool c_finite = true;
  for (int m = 1; m <= horizon; ++m) {
    const OffspringLaw law = env.law(m);
    const double f3 = law.pgf_derivative(3, 1.0);
    const double denom = law.pgf_derivative(2, 1.0) * (1.0 + law.pgf_derivative(1, 1.0));
    if (f3 == 0.0) continue;
    if (denom <= 0.0) {
      c_finite = false;
      continue;
    }
    c_best = std::max(c_best, f3 / denom);
  }
  r.condition_a_constant = c_best;
  r.condition_a_holds = c_finite;
  if (!c_finite)
    r.warnings.push_back("condition (A) has no finite constant on this horizon");
  return r;
}

}  // namespace gwve
