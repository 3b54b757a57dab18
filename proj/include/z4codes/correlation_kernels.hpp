#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "z4codes/correlation.hpp"

// Bulk correlation over a code family.
//
// Three kernels compute the same per-pair arrays (one Gaussian integer per shift
// tau = 0..N-1):
//   reference   - direct O(N^2) symbol loop, serial, kept for testing
//   exact       - bit-sliced Z4 planes with popcounts, exact integers
//   accelerated - FFT linear correlation, rounded to Gaussian integers; any
//                 output whose residual exceeds kRoundingTolerance is redone
//                 with the exact kernel
//
// bulk_correlate visits unordered pairs (a <= b) in row-major order and calls
// the sink in that order whatever the thread count.

namespace z4codes::kernels {

enum class Mode : std::uint8_t { exact, accelerated };

inline constexpr double kRoundingTolerance = 0.25;

struct PackedZ4 {
  std::size_t length = 0;
  std::vector<std::uint64_t> lo;  // bit t = Q(t) & 1
  std::vector<std::uint64_t> hi;  // bit t = Q(t) >> 1
};
PackedZ4 pack(Z4Span z4);

// out[tau] for tau = 0..N-1.
void correlate_reference(Z4Span a, Z4Span b, CorrelationKind kind, std::span<GaussInt> out);
void correlate_exact(Z4Span a, Z4Span b, CorrelationKind kind, std::span<GaussInt> out);
// Returns the largest rounding residual seen. Outputs above tolerance are
// recomputed exactly; `fallbacks` (if given) counts such pairs.
double correlate_accelerated(Z4Span a, Z4Span b, CorrelationKind kind, std::span<GaussInt> out,
                             std::size_t* fallbacks = nullptr);

struct PairCorrelation {
  std::size_t first = 0;
  std::size_t second = 0;
  CorrelationKind kind = CorrelationKind::even;
  std::span<const GaussInt> values;  // indexed by tau
};

using Sink = std::function<void(const PairCorrelation&)>;

struct BulkOptions {
  bool include_auto = true;
  bool include_cross = true;
  int threads = 0;  // 0: OpenMP default
};

struct BulkReport {
  std::size_t pairs = 0;
  std::size_t fallbacks = 0;
  double max_residual = 0.0;
};

BulkReport bulk_correlate(const std::vector<std::vector<std::uint8_t>>& codes, std::span<const CorrelationKind> kinds,
                          Mode mode, const Sink& sink, const BulkOptions& options = {});

// Z4 symbol view of a family (binary codes become 2b).
std::vector<std::vector<std::uint8_t>> z4_sequences(const FamilySet& fam);

BulkReport bulk_correlate(const FamilySet& fam, std::span<const CorrelationKind> kinds, Mode mode, const Sink& sink,
                          const BulkOptions& options = {});

}  // namespace z4codes::kernels
