#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

#include "z4codes/gf2m.hpp"

using namespace z4codes;
using gf2m::FieldElement;

namespace {

// Carry-less product followed by long division, bit by bit.
std::uint16_t slow_mul(std::uint16_t a, std::uint16_t b) {
  std::uint32_t p = 0;
  for (int i = 0; i < 10; ++i) {
    if ((b >> i) & 1U) p ^= static_cast<std::uint32_t>(a) << i;
  }
  for (int d = 18; d >= 10; --d) {
    if ((p >> d) & 1U) p ^= gf2m::kModulus << (d - 10);
  }
  return static_cast<std::uint16_t>(p);
}

int slow_trace(FieldElement a) {
  FieldElement s = a, x = a;
  for (int i = 1; i < 10; ++i) {
    x = FieldElement(slow_mul(x.bits(), x.bits()));
    s = s + x;
  }
  REQUIRE((s.bits() == 0 || s.bits() == 1));
  return s.bits();
}

}  // namespace

TEST_SUITE("gf2m") {
  TEST_CASE("multiplication agrees with carry-less product and long division") {
    std::mt19937 rng(7);
    for (int k = 0; k < 5000; ++k) {
      const auto a = static_cast<std::uint16_t>(rng() & 0x3FF), b = static_cast<std::uint16_t>(rng() & 0x3FF);
      CHECK((FieldElement(a) * FieldElement(b)).bits() == slow_mul(a, b));
    }
  }

  TEST_CASE("alpha is primitive of order 1023") {
    CHECK(gf2m::alpha_pow(1023) == gf2m::kOne);
    for (int d : {3, 11, 31, 33, 93, 341}) CHECK(gf2m::alpha_pow(d) != gf2m::kOne);
    CHECK(gf2m::alpha_pow(-1) * gf2m::alpha_pow(1) == gf2m::kOne);
    std::set<std::uint16_t> seen;
    for (int k = 0; k < 1023; ++k) seen.insert(gf2m::alpha_pow(k).bits());
    CHECK(seen.size() == 1023);
  }

  TEST_CASE("inverse, square root and discrete log over the whole field") {
    for (std::uint16_t v = 1; v < 1024; ++v) {
      const FieldElement a(v);
      CHECK(a * gf2m::inverse(a) == gf2m::kOne);
      const FieldElement r = gf2m::square_root(a);
      CHECK(r * r == a);
      CHECK(gf2m::alpha_pow(gf2m::discrete_log(a)) == a);
    }
    CHECK(gf2m::square_root(gf2m::kZero) == gf2m::kZero);
    CHECK_THROWS_AS(gf2m::discrete_log(gf2m::kZero), std::domain_error);
    CHECK_THROWS_AS(gf2m::pow(gf2m::kZero, -1), std::domain_error);
  }

  TEST_CASE("trace is linear, Frobenius invariant and balanced") {
    int ones = 0;
    for (std::uint16_t v = 0; v < 1024; ++v) {
      const FieldElement a(v);
      CHECK(gf2m::trace(a) == slow_trace(a));
      CHECK(gf2m::trace(a * a) == gf2m::trace(a));
      ones += gf2m::trace(a);
    }
    CHECK(ones == 512);
    std::mt19937 rng(3);
    for (int k = 0; k < 200; ++k) {
      const FieldElement a(rng() & 0x3FF), b(rng() & 0x3FF);
      CHECK(gf2m::trace(a + b) == (gf2m::trace(a) ^ gf2m::trace(b)));
    }
  }

  TEST_CASE("trace-dual basis found by exhaustive search matches the table") {
    for (int j = 0; j < 10; ++j) {
      int found = -1;
      for (std::uint16_t c = 1; c < 1024 && found < 0; ++c) {
        bool ok = true;
        for (int i = 0; i < 10 && ok; ++i) ok = slow_trace(FieldElement(slow_mul(gf2m::alpha_pow(i).bits(), c))) == (i == j);
        if (ok) found = c;
      }
      REQUIRE(found > 0);
      CHECK(gf2m::discrete_log(FieldElement(static_cast<std::uint16_t>(found))) == gf2m::kDualBasisLogs[j]);
      CHECK(gf2m::dual_basis()[j].bits() == found);
    }
  }

  TEST_CASE("dual coordinates round trip and the expansions of 1 and theta") {
    for (std::uint16_t v = 0; v < 1024; ++v) CHECK(gf2m::from_dual_coords(gf2m::dual_coords(FieldElement(v))).bits() == v);
    CHECK(gf2m::dual_coords(gf2m::kOne) == ((1 << 1) | (1 << 2) | (1 << 4) | (1 << 7) | (1 << 8)));
    CHECK(gf2m::dual_coords(gf2m::theta()) == ((1 << 0) | (1 << 9)));
    CHECK(gf2m::theta() == gf2m::alpha_pow(64) + gf2m::alpha_pow(65));
    CHECK(gf2m::trace(gf2m::theta()) == 1);
  }
}
