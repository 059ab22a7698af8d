#include "bandit/reward_models.hpp"

#include <cmath>
#include <stdexcept>

namespace bandit {

ArmDistribution ArmDistribution::normal_known(double mu) {
  ArmDistribution d;
  d.family = Family::NormalKnownVar;
  d.mu = mu;
  d.sigma2 = 1.0;
  return d;
}

ArmDistribution ArmDistribution::normal_unknown(double mu, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("ArmDistribution: sigma2 must be > 0");
  ArmDistribution d;
  d.family = Family::NormalUnknownVar;
  d.mu = mu;
  d.sigma2 = sigma2;
  return d;
}

ArmDistribution ArmDistribution::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("ArmDistribution: p must be in [0,1]");
  ArmDistribution d;
  d.family = Family::Bernoulli;
  d.p = p;
  return d;
}

double draw_reward(const ArmDistribution& dist, RngStream& rng) {
  switch (dist.family) {
    case Family::NormalKnownVar:
      return dist.mu + rng.normal();
    case Family::NormalUnknownVar:
      return dist.mu + std::sqrt(dist.sigma2) * rng.normal();
    case Family::Bernoulli:
      return rng.uniform01() < dist.p ? 1.0 : 0.0;
  }
  throw std::logic_error("draw_reward: bad family");
}

double dist_mean(const ArmDistribution& dist) {
  return dist.family == Family::Bernoulli ? dist.p : dist.mu;
}

double rate_normal_known(double u, double x) {
  const double d = u - x;
  return 0.5 * d * d;
}

double rate_bernoulli(double u, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("rate_bernoulli: x must be in [0,1]");
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("rate_bernoulli: u must be in [0,1]");
  double r = 0.0;
  if (x > 0.0) {
    if (u == 0.0) return kInfiniteRate;
    r += x * std::log(x / u);
  }
  if (x < 1.0) {
    if (u == 1.0) return kInfiniteRate;
    r += (1.0 - x) * std::log((1.0 - x) / (1.0 - u));
  }
  return r;
}

double m_function(double z) { return 0.5 * std::log1p(z * z); }

}  // namespace bandit
