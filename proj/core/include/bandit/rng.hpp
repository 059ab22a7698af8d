#pragma once
/*
Seeded random streams.

Every stochastic quantity in the library is drawn from an RngStream, a
mersenne-twister (mt19937_64) wrapped behind fixed sampling transforms so
that a given seed reproduces the same draw sequence on every platform:

  uniform01()    one engine word,  u = (x >> 11) * 2^-53, in [0,1)
  normal()       two uniforms, Box-Muller: sqrt(-2 log(1-u1)) * cos(2 pi u2)
  exponential()  one uniform, inverse CDF: -log(1-u)
  gamma(shape)   Marsaglia-Tsang squeeze for shape >= 1 (rejection; the
                 number of engine words consumed varies, the sequence of
                 accepted values does not, for a fixed stream position)
  beta(a,b)      two gamma draws, g1 / (g1 + g2)

Stream seeds are derived from (base_seed, run, policy, role) with a
murmur-style 64-bit finalizer so that distinct runs, policies and roles get
decorrelated streams. Environment streams pass policy = 0 regardless of the
policy being evaluated; that is what pairs all policies of a batch onto the
same simulated environment within a run.
*/

#include <cstdint>
#include <cmath>
#include <random>

namespace bandit {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xFF51AFD7ED558CCDull;
  z ^= z >> 33;
  z *= 0xC4CEB9FE1A85EC53ull;
  z ^= z >> 33;
  return z;
}

enum class StreamRole : std::uint64_t {
  Environment = 1,  // arm-parameter draws; shared by all policies of a run
  Rewards = 2,      // reward realizations
  PolicyNoise = 3,  // policy-internal randomness (posterior sampling)
};

inline std::uint64_t derive_stream_seed(std::uint64_t base_seed,
                                        std::uint64_t run,
                                        std::uint64_t policy,
                                        StreamRole role) {
  std::uint64_t h = base_seed;
  h = mix64(h ^ (run + 0x9E3779B97F4A7C15ull));
  h = mix64(h ^ (policy + 0x9E3779B97F4A7C15ull));
  h = mix64(h ^ (static_cast<std::uint64_t>(role) + 0x9E3779B97F4A7C15ull));
  return h;
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1); 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; always consumes exactly two uniforms.
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * kPi * u2);
  }

  /// Exp(1) via inverse CDF; consumes one uniform.
  double exponential() { return -std::log(1.0 - uniform01()); }

  /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang).
  double gamma(double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double z, v;
      do {
        z = normal();
        v = 1.0 + c * z;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
      if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Beta(a, b) for a, b >= 1, as a gamma ratio.
  double beta(double a, double b) {
    const double g1 = gamma(a);
    const double g2 = gamma(b);
    return g1 / (g1 + g2);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace bandit
