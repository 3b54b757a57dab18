#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>
#include <set>

#include "z4codes/codegen.hpp"

using namespace z4codes;
using gf2m::FieldElement;

namespace {

// Q(t) = x 3^t + T(nu^t) + 2 tr(alpha^t (y + [t odd] theta)), from expanding
// (1 + 2y) nu^t (1 + 2 theta)^t without any ring multiplication by beta.
std::uint8_t q_oracle(int x, FieldElement y, int t) {
  const int three = (t % 2 == 0) ? 1 : 3;
  const int lin = gr4m::ring_trace(gr4m::teichmuller_lift(gf2m::alpha_pow(t)));
  const FieldElement z = (t % 2 == 0) ? y : y + gf2m::theta();
  const int quad = 2 * gf2m::trace(gf2m::alpha_pow(t) * z);
  return static_cast<std::uint8_t>((x * three + lin + quad) % 4);
}

// Linear complexity over GF(2).
int berlekamp_massey(const std::vector<std::uint8_t>& s) {
  const std::size_t n = s.size();
  std::vector<std::uint8_t> c(n + 1, 0), b(n + 1, 0);
  c[0] = b[0] = 1;
  std::size_t l = 0, m = 1;
  for (std::size_t i = 0; i < n; ++i) {
    int d = s[i];
    for (std::size_t j = 1; j <= l; ++j) d ^= c[j] & s[i - j];
    if (!d) {
      ++m;
      continue;
    }
    const auto t = c;
    for (std::size_t j = 0; j + m <= n; ++j) c[j + m] ^= b[j];
    if (2 * l <= i) {
      l = i + 1 - l;
      b = t;
      m = 1;
    } else {
      ++m;
    }
  }
  return static_cast<int>(l);
}

std::size_t brute_least_rotation(const std::vector<std::uint8_t>& s) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < s.size(); ++r) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto a = s[(r + k) % s.size()], b = s[(best + k) % s.size()];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("codegen") {
  TEST_CASE("generated codes match the field-trace expansion") {
    std::mt19937 rng(17);
    for (int k = 0; k < 16; ++k) {
      const int x = static_cast<int>(rng() % 2);
      const FieldElement y(static_cast<std::uint16_t>(rng() & 0x3FF));
      const auto q = gen_quaternary(CodeIndex{static_cast<std::uint8_t>(x), y});
      REQUIRE(q.symbols.size() == 2046);
      for (int t = 0; t < kPeriod; ++t) CHECK(q.symbols[t] == q_oracle(x, y, t));
    }
    CHECK_THROWS_AS(gen_quaternary(CodeIndex{2, gf2m::kZero}), std::invalid_argument);
  }

  TEST_CASE("index set J: size, order and safeguards") {
    const auto& J = index_set_J();
    REQUIRE(J.size() == 256);
    std::set<std::uint16_t> members;
    for (std::size_t h = 0; h < J.size(); ++h) {
      CHECK(gf2m::dual_coords(J[h]) == h);
      members.insert(J[h].bits());
    }
    for (auto y : J) {
      CHECK(members.count((y + gf2m::kOne).bits()) == 0);
      CHECK(members.count((y + gf2m::theta()).bits()) == 0);
      CHECK(members.count((y + gf2m::theta() + gf2m::kOne).bits()) == 0);
    }
  }

  TEST_CASE("index set H is maximal with respect to +theta") {
    const auto& H = index_set_H();
    REQUIRE(H.size() == 512);
    std::set<std::uint16_t> members;
    for (auto y : H) members.insert(y.bits());
    for (std::uint16_t v = 0; v < 1024; ++v) {
      const FieldElement y(v);
      const bool in = members.count(v) == 1;
      const bool partner = members.count((y + gf2m::theta()).bits()) == 1;
      CHECK(in != partner);
    }
  }

  TEST_CASE("family sizes and canonical order") {
    const FamilySet mfd2 = build_family(FamilyKind::MFD2);
    REQUIRE(mfd2.size() == 512);
    CHECK(mfd2.quaternary[0].index.x == 0);
    CHECK(mfd2.quaternary[255].index.x == 0);
    CHECK(mfd2.quaternary[256].index.x == 1);
    CHECK(gf2m::dual_coords(mfd2.quaternary[257].index.y) == 1);
    const FamilySet iz4 = build_family(FamilyKind::IZ4_2);
    REQUIRE(iz4.size() == 1024);
    CHECK(iz4.binary[0].phase == Phase::QP);
    CHECK(iz4.binary[511].phase == Phase::QP);
    CHECK(iz4.binary[512].phase == Phase::IP);
    CHECK(code_id(iz4.binary[512 + 256 + 9]) == "IP-1-009");
    CHECK(code_id(mfd2.quaternary[3]) == "Q-0-003");
    CHECK(build_family(FamilyKind::D).size() == 1024);
    CHECK_THROWS_AS(build_family(FamilyKind::External), std::invalid_argument);
  }

  TEST_CASE("components and balance") {
    const auto q = gen_quaternary(CodeIndex{1, index_set_J()[42]});
    const Components c = components(q);
    int zeros = 0;
    for (std::size_t t = 0; t < q.symbols.size(); ++t) {
      CHECK(c.qp.bits[t] == q.symbols[t] / 2);
      CHECK(c.ip.bits[t] == ((q.symbols[t] & 1) ^ (q.symbols[t] / 2)));
      zeros += c.qp.bits[t] == 0;
    }
    CHECK(balance(c.qp) == zeros - (2046 - zeros));
    const auto counts = quaternary_balance(q);
    CHECK(counts[0] + counts[1] + counts[2] + counts[3] == 2046);
  }

  TEST_CASE("upper bit stream has linear complexity 10 or 11") {
    for (int x = 0; x < 2; ++x) {
      const auto q = gen_quaternary(CodeIndex{static_cast<std::uint8_t>(x), index_set_J()[7]});
      std::vector<std::uint8_t> u(q.symbols.size());
      for (std::size_t t = 0; t < u.size(); ++t) u[t] = q.symbols[t] & 1;
      CHECK(berlekamp_massey(u) == (x == 0 ? 10 : 11));
    }
  }

  TEST_CASE("least rotation agrees with brute force") {
    std::mt19937 rng(23);
    for (int k = 0; k < 400; ++k) {
      std::vector<std::uint8_t> s(1 + rng() % 40);
      for (auto& v : s) v = static_cast<std::uint8_t>(rng() % 2);
      CHECK(least_rotation(s) == brute_least_rotation(s));
    }
    CHECK(least_rotation({1, 1, 0, 1}) == 2);
  }

  TEST_CASE("balanced subset keeps order and only near-balanced codes") {
    const FamilySet iz4 = build_family(FamilyKind::IZ4_2);
    const FamilySet s = select_balanced_subset(iz4, 2);
    CHECK(s.kind == FamilyKind::IZ4_2S);
    CHECK(s.metadata.balance_threshold == 2);
    CHECK(s.size() == 512);
    for (const auto& c : s.binary) CHECK(std::abs(balance(c)) <= 2);
    for (std::size_t k = 1; k < s.size(); ++k) {
      const bool ordered = std::make_tuple(s.binary[k - 1].phase, s.binary[k - 1].index.x,
                                           gf2m::dual_coords(s.binary[k - 1].index.y)) <
                           std::make_tuple(s.binary[k].phase, s.binary[k].index.x, gf2m::dual_coords(s.binary[k].index.y));
      CHECK(ordered);
    }
    // A rotated duplicate is removed.
    FamilySet dup = iz4;
    dup.binary.resize(2);
    const BinaryCode b0 = s.binary[0];
    dup.binary[0] = b0;
    dup.binary[1] = b0;
    std::rotate(dup.binary[1].bits.begin(), dup.binary[1].bits.begin() + 100, dup.binary[1].bits.end());
    CHECK(select_balanced_subset(dup, 2).size() == 1);
    CHECK_THROWS_AS(select_balanced_subset(build_family(FamilyKind::MFD2), 2), std::invalid_argument);
  }

  TEST_CASE("family kind names round trip") {
    for (auto k : {FamilyKind::D, FamilyKind::MFD2, FamilyKind::IZ4_2, FamilyKind::IZ4_2S, FamilyKind::External}) {
      CHECK(parse_family_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_family_kind("Gold"), std::invalid_argument);
  }
}
