#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <random>

#include "z4codes/stats.hpp"

using namespace z4codes;

namespace {

const FamilySet& small_binary_family() {
  static const FamilySet f = [] {
    FamilySet full = build_family(FamilyKind::IZ4_2);
    FamilySet s;
    s.kind = FamilyKind::IZ4_2;
    for (std::size_t k : {0, 3, 300, 512, 700, 1000}) s.binary.push_back(full.binary[k]);
    return s;
  }();
  return f;
}

BinaryCode upsampled(const BinaryCode& data, bool complement) {
  BinaryCode p;
  p.bits.resize(10230);
  for (std::size_t t = 0; t < p.bits.size(); ++t) p.bits[t] = static_cast<std::uint8_t>(data.bits[t / 5] ^ complement);
  return p;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("decibel conversion") {
    CHECK(stats::to_db(80, 2046) == doctest::Approx(-28.16).epsilon(0.0002));
    CHECK(stats::to_db(66, 2046) == doctest::Approx(-29.827).epsilon(0.0001));
    CHECK(stats::to_db(2046, 2046) == 0.0);
    CHECK(std::isinf(stats::to_db(0, 2046)));
    CHECK(stats::to_db(0, 2046) < 0);
    CHECK_THROWS_AS(stats::to_db(1, 0), std::invalid_argument);
  }

  TEST_CASE("histogram percentiles agree with sorting") {
    std::mt19937 rng(67);
    stats::MagnitudeHistogram h;
    std::vector<std::uint64_t> all;
    for (int k = 0; k < 20000; ++k) {
      const std::uint64_t v = (k % 50 == 0) ? (1U << 20) + rng() % 1000 : rng() % 5000;  // some in the sparse range
      h.add(v);
      all.push_back(v);
    }
    std::sort(all.begin(), all.end());
    for (double p : {0.01, 0.5, 0.9, 0.99, 0.999, 1.0}) {
      const auto rank = static_cast<std::size_t>(std::ceil(p * all.size() - 1e-9));
      CHECK(h.percentile_norm(p) == all[rank - 1]);
    }
    CHECK(h.max_norm() == all.back());
    CHECK(h.count_at_most(2500) == static_cast<std::uint64_t>(std::upper_bound(all.begin(), all.end(), 2500) - all.begin()));
    CHECK_THROWS(h.percentile_norm(0.0));
    stats::MagnitudeHistogram merged;
    merged.merge(h);
    merged.merge(h);
    CHECK(merged.total() == 2 * h.total());
    CHECK(merged.percentile_norm(0.5) == h.percentile_norm(0.5));
  }

  TEST_CASE("CDF points") {
    const auto pts = stats::cdf_points(std::vector<double>{3, 3, 3});
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].percent == 100.0);
    stats::MagnitudeHistogram h;
    for (std::uint64_t v : {0, 4, 4, 9, 16, 16, 16, 25}) h.add(v);
    const auto c = stats::cdf_points(h);
    CHECK(c.back().percent == 100.0);
    CHECK(c.back().magnitude == 5.0);
    for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k].percent >= c[k - 1].percent);
    CHECK(stats::cdf_percent_at(h, 3.0) == doctest::Approx(50.0));
    CHECK(stats::cdf_percent_at(h, 2.5) == doctest::Approx(37.5));
    CHECK_THROWS(stats::cdf_points(std::vector<double>{}));
  }

  TEST_CASE("paired zero-shift orthogonality") {
    const BinaryCode& data = small_binary_family().binary[0];
    CHECK(stats::paired_orthogonality(upsampled(data, false), data) == 10230);
    CHECK(stats::paired_orthogonality(upsampled(data, true), data) == -10230);
    BinaryCode alt = upsampled(data, false);
    for (std::size_t t = 0; t < alt.bits.size(); t += 2) alt.bits[t] ^= 1U;
    CHECK(stats::paired_orthogonality(alt, data) == 0);
    CHECK_THROWS_AS(stats::paired_orthogonality(data, data), std::invalid_argument);
  }

  TEST_CASE("profile matches an independent single-threaded pass") {
    const FamilySet& fam = small_binary_family();
    stats::ProfileOptions opt;
    opt.threads = 3;
    const auto p = stats::family_profile(fam, opt);
    std::uint64_t count = 0, sum = 0;
    std::int64_t even_acr = 0, even_ccr = 0, odd_acr = 0, odd_ccr = 0;
    for (std::size_t a = 0; a < fam.size(); ++a) {
      for (std::size_t b = 0; b < fam.size(); ++b) {
        const auto sa = as_z4(fam.binary[a]), sb = as_z4(fam.binary[b]);
        for (int tau = 0; tau < 2046; ++tau) {
          if (a == b && tau == 0) continue;
          const std::int64_t e = std::llabs(binary_corr_brute(fam.binary[a], fam.binary[b], tau));
          const std::int64_t o = std::llabs(odd_corr(sa, sb, tau).value.re);
          count += 2;
          sum += static_cast<std::uint64_t>(e * e + o * o);
          auto& em = a == b ? even_acr : even_ccr;
          auto& om = a == b ? odd_acr : odd_ccr;
          em = std::max(em, e);
          om = std::max(om, o);
        }
      }
    }
    CHECK(p.all.count == count);
    CHECK(p.histogram.sum_norm() == sum);
    CHECK(p.all.rms_magnitude == doctest::Approx(std::sqrt(static_cast<double>(sum) / count)));
    CHECK(p.even_acr->magnitude() == even_acr);
    CHECK(p.even_ccr->magnitude() == even_ccr);
    CHECK(p.odd_acr->magnitude() == odd_acr);
    CHECK(p.odd_ccr->magnitude() == odd_ccr);
    CHECK(p.max_all.norm == std::max({p.even_acr->norm, p.even_ccr->norm, p.odd_acr->norm, p.odd_ccr->norm}));
    CHECK(p.all.p99_norm <= p.all.p999_norm);
    CHECK(p.all.p999_norm <= p.max_all.norm);
    CHECK(p.balance_histogram.size() >= 1);
  }

  TEST_CASE("profile is the same for any thread count and engine") {
    const FamilySet& fam = small_binary_family();
    stats::ProfileOptions a, b;
    a.threads = 1;
    b.threads = 4;
    b.mode = kernels::Mode::exact;
    auto ja = stats::to_json(stats::family_profile(fam, a));
    auto jb = stats::to_json(stats::family_profile(fam, b));
    ja.erase("seconds");
    jb.erase("seconds");
    ja.erase("engine");
    jb.erase("engine");
    CHECK(ja == jb);
  }

  TEST_CASE("single-code family has no cross rows") {
    FamilySet one;
    one.kind = FamilyKind::IZ4_2;
    one.binary.push_back(small_binary_family().binary[1]);
    stats::ProfileOptions opt;
    opt.include_odd = false;
    const auto p = stats::family_profile(one, opt);
    CHECK(p.even_acr.has_value());
    CHECK_FALSE(p.even_ccr.has_value());
    CHECK_FALSE(p.odd_acr.has_value());
    CHECK(p.cross_only.count == 0);
    const auto j = stats::to_json(p);
    CHECK_FALSE(j["categories"].contains("even_ccr"));
    CHECK_THROWS(stats::family_profile(FamilySet{}, opt));
  }

  TEST_CASE("odd screening leaves no pair above the bound") {
    const FamilySet& fam = small_binary_family();
    const FamilySet s = stats::screen_odd_correlation(fam, 150);
    CHECK(s.metadata.odd_screen_magnitude == 150);
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = 0; b < s.size(); ++b) {
        const auto sa = as_z4(s.binary[a]), sb = as_z4(s.binary[b]);
        for (int tau = (a == b ? 1 : 0); tau < 2046; ++tau) CHECK(std::llabs(odd_corr(sa, sb, tau).value.re) <= 150);
      }
    }
    CHECK(stats::screen_odd_correlation(fam, 2046).size() == fam.size());
  }
}
