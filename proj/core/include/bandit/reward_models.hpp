#pragma once
/*
Arm reward distributions and their large-deviations rate kernels.

Three reward families are supported: normal with unit variance, normal with
unknown (per-arm) variance, and Bernoulli. The rate kernels measure, for a
candidate mean u, how unlikely a sample mean x is under an arm with mean u;
confidence bounds invert them.
*/

#include <limits>

#include "bandit/rng.hpp"

namespace bandit {

enum class Family { NormalKnownVar, NormalUnknownVar, Bernoulli };

struct ArmDistribution {
  Family family = Family::NormalKnownVar;
  double mu = 0.0;      // mean, normal families
  double sigma2 = 1.0;  // variance, NormalUnknownVar only
  double p = 0.0;       // success probability, Bernoulli only

  static ArmDistribution normal_known(double mu);
  static ArmDistribution normal_unknown(double mu, double sigma2);  // sigma2 > 0
  static ArmDistribution bernoulli(double p);                       // 0 <= p <= 1
};

/// One reward draw. Consumes a fixed number of engine words per family
/// (two uniforms for the normal families, one for Bernoulli).
double draw_reward(const ArmDistribution& dist, RngStream& rng);

double dist_mean(const ArmDistribution& dist);

/// (u - x)^2 / 2.
double rate_normal_known(double u, double x);

/// x log(x/u) + (1-x) log((1-x)/(1-u)), with 0 log 0 = 0.
/// Returns +infinity when u is 0 or 1 and x lies strictly inside (0,1),
/// so bound inversion can treat the constraint as satisfied there.
/// Throws std::domain_error unless both arguments are in [0,1].
double rate_bernoulli(double u, double x);

/// (1/2) log(1 + z^2); the rate kernel for normal rewards of unknown variance.
double m_function(double z);

inline constexpr double kInfiniteRate = std::numeric_limits<double>::infinity();

}  // namespace bandit
