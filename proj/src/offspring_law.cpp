#include "gwve/offspring_law.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "gwve/errors.h"

namespace gwve {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("pgf argument s must lie in [0,1]");
}

double falling_factorial(double x, int g) {
  double r = 1.0;
  for (int i = 0; i < g; ++i) r *= (x - i);
  return r;
}

}  // namespace

OffspringLaw OffspringLaw::poisson(double rate) {
  require(rate >= 0.0 && std::isfinite(rate), "poisson rate must be finite and >= 0");
  OffspringLaw law;
  law.family_ = LawFamily::kPoisson;
  law.a_ = rate;
  return law;
}

OffspringLaw OffspringLaw::binomial(int trials, double success_prob) {
  require(trials >= 0, "binomial trials must be >= 0");
  require(success_prob >= 0.0 && success_prob <= 1.0, "binomial success prob must lie in [0,1]");
  OffspringLaw law;
  law.family_ = LawFamily::kBinomial;
  law.a_ = success_prob;
  law.trials_ = trials;
  return law;
}

OffspringLaw OffspringLaw::linear_fractional(double b, double c) {
  require(c >= 0.0 && c < 1.0, "linear-fractional c must lie in [0,1)");
  require(b >= 0.0 && b <= 1.0 - c + 1e-15, "linear-fractional b must lie in [0, 1-c]");
  OffspringLaw law;
  law.family_ = LawFamily::kLinearFractional;
  law.a_ = b;
  law.b_ = c;
  return law;
}

OffspringLaw OffspringLaw::geometric(double p) {
  require(p > 0.0 && p <= 1.0, "geometric p must lie in (0,1]");
  return linear_fractional(p * (1.0 - p), 1.0 - p);
}

OffspringLaw OffspringLaw::explicit_finite(std::vector<double> probs) {
  require(!probs.empty(), "explicit law needs a nonempty table");
  double sum = 0.0;
  for (double p : probs) {
    require(p >= 0.0 && std::isfinite(p), "explicit law probabilities must be finite and >= 0");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "explicit law probabilities must sum to 1 within 1e-12");
  OffspringLaw law;
  law.family_ = LawFamily::kExplicitFinite;
  law.table_ = std::move(probs);
  return law;
}

double OffspringLaw::pgf(double s) const {
  check_s(s);
  switch (family_) {
    case LawFamily::kPoisson:
      return std::exp(a_ * (s - 1.0));
    case LawFamily::kBinomial:
      return std::pow(1.0 - a_ + a_ * s, trials_);
    case LawFamily::kLinearFractional:
      return 1.0 - a_ / (1.0 - b_) + a_ * s / (1.0 - b_ * s);
    case LawFamily::kExplicitFinite: {
      double r = 0.0;
      for (auto it = table_.rbegin(); it != table_.rend(); ++it) r = r * s + *it;
      return r;
    }
  }
  return 0.0;
}

double OffspringLaw::pgf_derivative(int order, double s) const {
  if (order < 0) throw std::domain_error("derivative order must be >= 0");
  if (order > kMaxDerivativeOrder)
    throw UnsupportedOrderError("pgf derivative order " + std::to_string(order) +
                                " exceeds the supported maximum " +
                                std::to_string(kMaxDerivativeOrder));
  check_s(s);
  if (order == 0) return pgf(s);
  switch (family_) {
    case LawFamily::kPoisson:
      return std::pow(a_, order) * std::exp(a_ * (s - 1.0));
    case LawFamily::kBinomial: {
      if (order > trials_) return 0.0;
      return falling_factorial(trials_, order) * std::pow(a_, order) *
             std::pow(1.0 - a_ + a_ * s, trials_ - order);
    }
    case LawFamily::kLinearFractional: {
      // d^g/ds^g [b s / (1 - c s)] = b g! c^{g-1} / (1 - c s)^{g+1}
      double g_fact = 1.0;
      for (int i = 2; i <= order; ++i) g_fact *= i;
      const double c_pow = order >= 2 ? std::pow(b_, order - 1) : 1.0;
      return a_ * g_fact * c_pow / std::pow(1.0 - b_ * s, order + 1);
    }
    case LawFamily::kExplicitFinite: {
      double r = 0.0;
      const int top = static_cast<int>(table_.size()) - 1;
      for (int k = top; k >= order; --k) r = r * s + table_[k] * falling_factorial(k, order);
      return r;
    }
  }
  return 0.0;
}

double OffspringLaw::pmf(int k) const {
  if (k < 0) return 0.0;
  switch (family_) {
    case LawFamily::kPoisson: {
      if (a_ == 0.0) return k == 0 ? 1.0 : 0.0;
      return std::exp(-a_ + k * std::log(a_) - std::lgamma(k + 1.0));
    }
    case LawFamily::kBinomial: {
      if (k > trials_) return 0.0;
      if (a_ == 0.0) return k == 0 ? 1.0 : 0.0;
      if (a_ == 1.0) return k == trials_ ? 1.0 : 0.0;
      const double log_choose = std::lgamma(trials_ + 1.0) - std::lgamma(k + 1.0) -
                                std::lgamma(trials_ - k + 1.0);
      return std::exp(log_choose + k * std::log(a_) + (trials_ - k) * std::log1p(-a_));
    }
    case LawFamily::kLinearFractional: {
      if (k == 0) return 1.0 - a_ / (1.0 - b_);
      return a_ * std::pow(b_, k - 1);
    }
    case LawFamily::kExplicitFinite:
      return k < static_cast<int>(table_.size()) ? table_[k] : 0.0;
  }
  return 0.0;
}

double OffspringLaw::mean() const { return pgf_derivative(1, 1.0); }

double OffspringLaw::variance() const {
  const double m = mean();
  return pgf_derivative(2, 1.0) + m - m * m;
}

double OffspringLaw::nu() const {
  const double m = mean();
  return pgf_derivative(2, 1.0) / (m * m);
}

int OffspringLaw::support_bound() const {
  switch (family_) {
    case LawFamily::kPoisson:
      return a_ == 0.0 ? 0 : -1;
    case LawFamily::kBinomial:
      return trials_;
    case LawFamily::kLinearFractional:
      return b_ == 0.0 ? (a_ == 0.0 ? 0 : 1) : -1;
    case LawFamily::kExplicitFinite: {
      int top = static_cast<int>(table_.size()) - 1;
      while (top > 0 && table_[top] == 0.0) --top;
      return top;
    }
  }
  return -1;
}

OffspringLaw OffspringLaw::discounted(double x) const {
  require(x > 0.0 && x <= 1.0, "discount factor must lie in (0,1]");
  if (x == 1.0) return *this;
  switch (family_) {
    case LawFamily::kPoisson:
      return poisson(a_ * x);
    case LawFamily::kBinomial:
      return binomial(trials_, a_ * x / (1.0 - a_ + a_ * x));
    case LawFamily::kLinearFractional: {
      const double norm = pgf(x);
      if (norm <= 0.0) throw DegenerateTiltError("linear-fractional discount normalizer vanished");
      return linear_fractional(a_ * x / norm, b_ * x);
    }
    case LawFamily::kExplicitFinite: {
      std::vector<double> t(table_.size());
      double sum = 0.0;
      double xk = 1.0;
      for (std::size_t k = 0; k < table_.size(); ++k) {
        t[k] = table_[k] * xk;
        sum += t[k];
        xk *= x;
      }
      if (sum <= 0.0) throw DegenerateTiltError("explicit-law discount normalizer vanished");
      for (double& p : t) p /= sum;
      return explicit_finite(std::move(t));
    }
  }
  return *this;
}

long long OffspringLaw::sample_sum(long long count, Philox& rng) const {
  if (count <= 0) return 0;
  switch (family_) {
    case LawFamily::kPoisson: {
      if (a_ == 0.0) return 0;
      std::poisson_distribution<long long> d(a_ * static_cast<double>(count));
      return d(rng);
    }
    case LawFamily::kBinomial: {
      if (trials_ == 0 || a_ == 0.0) return 0;
      std::binomial_distribution<long long> d(count * trials_, a_);
      return d(rng);
    }
    case LawFamily::kLinearFractional: {
      const double succ = a_ / (1.0 - b_);  // P(X >= 1)
      if (succ == 0.0) return 0;
      long long positive;
      if (succ == 1.0) {
        positive = count;
      } else {
        std::binomial_distribution<long long> d(count, succ);
        positive = d(rng);
      }
      if (positive == 0 || b_ == 0.0) return positive;
      std::negative_binomial_distribution<long long> nb(positive, 1.0 - b_);
      return positive + nb(rng);
    }
    case LawFamily::kExplicitFinite: {
      long long remaining = count;
      double mass_left = 1.0;
      long long total = 0;
      for (std::size_t k = 0; k + 1 < table_.size() && remaining > 0; ++k) {
        const double p = table_[k];
        if (p <= 0.0) continue;
        double frac = p / mass_left;
        if (frac > 1.0) frac = 1.0;
        long long n_k;
        if (frac >= 1.0) {
          n_k = remaining;
        } else {
          std::binomial_distribution<long long> d(remaining, frac);
          n_k = d(rng);
        }
        total += n_k * static_cast<long long>(k);
        remaining -= n_k;
        mass_left -= p;
      }
      total += remaining * (static_cast<long long>(table_.size()) - 1);
      return total;
    }
  }
  return 0;
}

std::vector<double> OffspringLaw::cumulative_table(double tail_eps) const {
  std::vector<double> cum;
  const int bound = support_bound();
  double acc = 0.0;
  for (int k = 0;; ++k) {
    acc += pmf(k);
    cum.push_back(acc);
    if (bound >= 0 && k >= bound) break;
    if (bound < 0 && acc >= 1.0 - tail_eps) break;
    if (k > 100000) throw ResourceError("offspring law cumulative table did not converge");
  }
  return cum;
}

nlohmann::json OffspringLaw::to_json() const {
  nlohmann::json j;
  switch (family_) {
    case LawFamily::kPoisson:
      j["family"] = "poisson";
      j["rate"] = a_;
      break;
    case LawFamily::kBinomial:
      j["family"] = "binomial";
      j["trials"] = trials_;
      j["p"] = a_;
      break;
    case LawFamily::kLinearFractional:
      j["family"] = "linear_fractional";
      j["b"] = a_;
      j["c"] = b_;
      break;
    case LawFamily::kExplicitFinite:
      j["family"] = "explicit";
      j["probs"] = table_;
      break;
  }
  return j;
}

OffspringLaw OffspringLaw::from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "poisson") return poisson(j.at("rate").get<double>());
  if (family == "binomial")
    return binomial(j.at("trials").get<int>(), j.at("p").get<double>());
  if (family == "linear_fractional")
    return linear_fractional(j.at("b").get<double>(), j.at("c").get<double>());
  if (family == "geometric") return geometric(j.at("p").get<double>());
  if (family == "explicit") return explicit_finite(j.at("probs").get<std::vector<double>>());
  throw std::invalid_argument("unknown offspring law family: " + family);
}

}  // namespace gwve
