#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "z4codes/codegen.hpp"
#include "z4codes/correlation_kernels.hpp"

// Family statistics. Conventions:
//   - dB = 20 log10(|rho| / N), N the code length
//   - the auto-correlation peak at tau = 0 is excluded everywhere
//   - cross pairs are counted as ordered pairs (a,b) and (b,a); the streamed
//     unordered pair is weighted twice, which gives the same multiset
//   - percentiles are nearest-rank on |rho|

namespace z4codes::stats {

// 20 log10(magnitude / length); -infinity for magnitude 0.
double to_db(double magnitude, std::size_t length);

// Counts keyed by |rho|^2, which is an integer for Gaussian-integer sums.
class MagnitudeHistogram {
 public:
  void add(std::uint64_t norm, std::uint64_t weight = 1);
  void merge(const MagnitudeHistogram& other);

  std::uint64_t total() const { return total_; }
  std::uint64_t sum_norm() const { return sum_norm_; }
  std::uint64_t max_norm() const { return max_norm_; }
  bool empty() const { return total_ == 0; }

  // Norm of the value at 1-based rank r in ascending order.
  std::uint64_t norm_at_rank(std::uint64_t rank) const;
  // Nearest rank: ceil(p * total), p in (0, 1].
  std::uint64_t percentile_norm(double p) const;
  std::uint64_t count_at_most(std::uint64_t norm) const;
  // (norm, count) ascending.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries() const;

 private:
  static constexpr std::uint64_t kDense = 1U << 18;
  std::vector<std::uint64_t> dense_ = std::vector<std::uint64_t>(kDense, 0);
  std::map<std::uint64_t, std::uint64_t> sparse_;
  std::uint64_t total_ = 0;
  std::uint64_t sum_norm_ = 0;
  std::uint64_t max_norm_ = 0;
};

struct Extreme {
  std::uint64_t norm = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  int tau = 0;
  double magnitude() const;
};

struct Distribution {
  std::uint64_t count = 0;
  double rms_magnitude = 0.0;
  std::uint64_t p99_norm = 0;
  std::uint64_t p999_norm = 0;
  std::uint64_t max_norm = 0;
};

struct CdfPoint {
  double magnitude = 0.0;
  double percent = 0.0;
};

struct FamilyProfile {
  std::size_t family_size = 0;
  std::size_t length = 0;
  bool include_odd = false;
  std::optional<Extreme> even_acr, even_ccr, odd_acr, odd_ccr;
  Extreme max_all;
  Distribution all;         // auto sidelobes and cross values
  Distribution cross_only;  // cross values only
  MagnitudeHistogram histogram;
  MagnitudeHistogram cross_histogram;
  std::map<int, std::size_t> balance_histogram;  // binary families only
  kernels::BulkReport bulk;
  double seconds = 0.0;
};

struct ProfileOptions {
  bool include_odd = true;
  kernels::Mode mode = kernels::Mode::accelerated;
  int threads = 0;
};

FamilyProfile family_profile(const FamilySet& fam, const ProfileOptions& options = {});

// Percent of values with |rho| <= magnitude.
double cdf_percent_at(const MagnitudeHistogram& h, double magnitude);
// One point per distinct magnitude; percent in [0, 100], last point is 100.
std::vector<CdfPoint> cdf_points(const MagnitudeHistogram& h);
std::vector<CdfPoint> cdf_points(const std::vector<double>& magnitudes);

// sum_t (-1)^pilot(t) (-1)^data(t / 5) over the 10230 pilot chips.
std::int64_t paired_orthogonality(const BinaryCode& pilot, const BinaryCode& data);

// Drop codes whose nonzero-shift odd autocorrelation exceeds `magnitude`, then
// repeatedly drop the code involved in the most odd cross-correlation
// violations (earliest index on ties) until no pair exceeds it.
FamilySet screen_odd_correlation(const FamilySet& fam, int magnitude, kernels::Mode mode = kernels::Mode::accelerated,
                                 int threads = 0);

nlohmann::json to_json(const FamilyProfile& p);
std::string cdf_csv(const MagnitudeHistogram& h);

}  // namespace z4codes::stats
