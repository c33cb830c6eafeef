#pragma once

#include <cstdint>
#include <random>

#include "nagumo/radial_field.hpp"

namespace nagumo {

// Seeded generator with platform-independent draws (distributions from
// <random> are implementation-defined, so reductions use raw bits).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin(double p_true = 0.5) { return uniform() < p_true; }

 private:
  std::mt19937_64 engine_;
};

// Random radial step function with a window inside [window_lo, window_hi]
// and values in [-scale, scale]; occasionally sparse.
inline RadialField random_field(Rng& rng, const Prime& p, int window_lo = -8, int window_hi = 8, double scale = 2.0) {
  const int a = rng.uniform_int(window_lo, window_hi);
  const int b = rng.uniform_int(a, window_hi);
  const bool sparse = rng.coin(0.2);
  return RadialField::from_profile(p, a, b, [&](int) {
    if (sparse && rng.coin(0.5)) return 0.0;
    return rng.uniform(-scale, scale);
  });
}

inline RadialField random_nonzero_field(Rng& rng, const Prime& p, int window_lo = -8, int window_hi = 8, double scale = 2.0) {
  for (int i = 0; i < 64; ++i) {
    RadialField f = random_field(rng, p, window_lo, window_hi, scale);
    if (f.norm_l2() > 1e-6) return f;
  }
  return RadialField::ball_indicator(p, 0);
}

inline Prime random_prime(Rng& rng) {
  static const long long primes[] = {2, 3, 5, 7};
  return Prime(primes[rng.uniform_int(0, 3)]);
}

inline Prime random_odd_prime(Rng& rng) {
  static const long long primes[] = {3, 5, 7};
  return Prime(primes[rng.uniform_int(0, 2)]);
}

}  // namespace nagumo
