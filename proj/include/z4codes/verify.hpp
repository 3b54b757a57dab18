#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "z4codes/correlation.hpp"

// Oracle-equivalence suites shared by the CLI and the acceptance harness.
// Randomized suites draw MFD2 index pairs from a seeded mt19937_64.

namespace z4codes::verify {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2046ULL;

struct Result {
  std::string name;
  bool passed = true;
  std::uint64_t checks = 0;
  std::vector<std::string> counterexamples;  // first few only
  std::string summary;

  void fail(std::string detail);
};

std::string format(GaussInt z);

// Pairs (i, j) of MFD2 positions, i == j allowed.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::uint64_t seed, std::size_t count,
                                                              std::size_t family_size);

Result theorem1(std::uint64_t seed, std::size_t pairs);
Result binary_identities(std::uint64_t seed, std::size_t pairs);
Result dual_basis();
Result graeffe();
Result sr_equivalence();

struct ValueScan {
  std::uint64_t phi_values = 0, delta_values = 0;
  std::uint64_t phi_outside = 0, delta_outside = 0;
  std::int64_t max_phi_norm = 0, max_delta_norm = 0;
  // out-of-set value -> count, keyed "phi|Delta tau-parity x1 x2 value"
  std::map<std::string, std::uint64_t> outside;
};
bool in_corollary_set(GaussInt z);
ValueScan scan_value_sets(std::uint64_t seed, std::size_t pairs);
// Literal membership in {+-32(1+-i), -2+-32(1+-i)} at every nondegenerate shift.
Result value_sets(std::uint64_t seed, std::size_t pairs);
// |phi|^2, |Delta|^2 <= 2180 and |rho| <= 66 at every nondegenerate shift.
Result bounds(std::uint64_t seed, std::size_t pairs);

// Random (pair, tau, kind) spot checks of the accelerated kernel against direct
// sums, plus sum_tau |phi|^2 equality between the two modes.
Result accelerated_vs_exact(std::uint64_t seed, std::size_t spot_checks, std::size_t parseval_pairs);

}  // namespace z4codes::verify
