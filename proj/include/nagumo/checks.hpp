#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nagumo/solver.hpp"

namespace nagumo {

inline constexpr std::uint64_t kDefaultCheckSeed = 0x9a0a2c1d5ull;

struct CheckResult {
  std::string name;
  long long cases = 0;
  long long violations = 0;
  double worst = 0.0;  // largest violation magnitude (0 when clean)
  double elapsed_seconds = 0.0;
  std::string note;

  bool passed() const { return violations == 0; }
};

// Exact-arithmetic and floating-point property suites. Each function draws
// its own deterministic stream from the seed.
CheckResult check_haar_identities(std::uint64_t seed);
CheckResult check_character_properties(std::uint64_t seed);
CheckResult check_fourier_exactness(std::uint64_t seed, int cases = 500);
CheckResult check_sobolev_norms(std::uint64_t seed, int cases = 400);
CheckResult check_interpolation(std::uint64_t seed, int cases = 1000);
CheckResult check_banach_algebra(std::uint64_t seed, int cases = 1000);
CheckResult check_taibleson_equivalence(std::uint64_t seed, int cases = 100);
CheckResult check_semigroup_contraction(std::uint64_t seed, int cases = 1000);
CheckResult check_smoothing_bound(std::uint64_t seed, int cases = 1000);
CheckResult check_semigroup_law(std::uint64_t seed, int cases = 300);
CheckResult check_strong_continuity(std::uint64_t seed, int cases = 40);
CheckResult check_multiplier_positivity(std::uint64_t seed, int cases = 400);
CheckResult check_error_bound_overestimate(std::uint64_t seed, int cases = 200);
CheckResult check_lipschitz_domination(std::uint64_t seed, int cases = 1000);
CheckResult check_pd_product_bound(std::uint64_t seed, int cases = 1000);
CheckResult check_gronwall_envelope(std::uint64_t seed, int cases = 1000);
CheckResult check_wavelet_square_identity(std::uint64_t seed);
CheckResult check_wavelet_fourier_support(std::uint64_t seed);
CheckResult check_wavelet_eigenrelation(std::uint64_t seed, int points = 50);
CheckResult check_weight_tables(std::uint64_t seed);
CheckResult check_pairing_identities(std::uint64_t seed, int cases = 200);
CheckResult check_euler_determinism(std::uint64_t seed);
CheckResult check_blowup_bracket(std::uint64_t seed);
CheckResult check_existence_substitution(std::uint64_t seed, int cases = 20);
CheckResult check_picard_contraction(std::uint64_t seed, int cases = 6);

std::vector<CheckResult> run_all_checks(std::uint64_t seed);

}  // namespace nagumo
