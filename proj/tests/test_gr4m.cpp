#include <doctest.h>

#include <stdexcept>

#include <random>

#include "z4codes/gr4m.hpp"

using namespace z4codes;
using gr4m::RingElement;

namespace {

const gr4m::Z4Poly kMnu = {1, 2, 1, 1, 0, 0, 1, 2, 3, 1, 1};

// Schoolbook product of coefficient vectors reduced by m_nu.
std::array<int, 10> slow_mul(const std::array<std::uint8_t, 10>& a, const std::array<std::uint8_t, 10>& b) {
  std::array<int, 19> p{};
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) p[i + j] += a[i] * b[j];
  }
  for (int d = 18; d >= 10; --d) {
    const int c = ((p[d] % 4) + 4) % 4;
    for (int k = 0; k <= 10; ++k) p[d - 10 + k] -= c * kMnu[k];
  }
  std::array<int, 10> out{};
  for (int i = 0; i < 10; ++i) out[i] = ((p[i] % 4) + 4) % 4;
  return out;
}

RingElement random_element(std::mt19937& rng) {
  return RingElement(static_cast<std::uint16_t>(rng() & 0x3FF), static_cast<std::uint16_t>(rng() & 0x3FF));
}

}  // namespace

TEST_SUITE("gr4m") {
  TEST_CASE("bit-plane arithmetic agrees with coefficient arithmetic") {
    std::mt19937 rng(11);
    for (int k = 0; k < 2000; ++k) {
      const RingElement a = random_element(rng), b = random_element(rng);
      const auto ca = a.coeffs(), cb = b.coeffs();
      const auto prod = slow_mul(ca, cb);
      const RingElement ab = a * b, sum = a + b, neg = -a;
      for (int i = 0; i < 10; ++i) {
        CHECK(ab.coeff(i) == prod[i]);
        CHECK(sum.coeff(i) == (ca[i] + cb[i]) % 4);
        CHECK(neg.coeff(i) == (4 - ca[i]) % 4);
      }
      CHECK(a - a == gr4m::kRingZero);
      CHECK(a.twice() == a + a);
    }
  }

  TEST_CASE("Graeffe lift of small and degree-10 polynomials") {
    // x^3 + x + 1 lifts to x^3 + 2x^2 + x + 3.
    CHECK(gr4m::graeffe_lift(0b1011) == gr4m::Z4Poly{3, 1, 2, 1});
    CHECK(gr4m::graeffe_lift(gf2m::kModulus) == kMnu);
    CHECK(gr4m::min_poly_nu() == kMnu);
    CHECK_THROWS_AS(gr4m::graeffe_lift(0), std::invalid_argument);
    CHECK_THROWS_AS(gr4m::graeffe_lift(0b101), std::invalid_argument);  // (x + 1)^2
    CHECK(gr4m::evaluate(kMnu, gr4m::kNu) == gr4m::kRingZero);
  }

  TEST_CASE("nu generates the Teichmuller group of order 1023") {
    CHECK(gr4m::pow(gr4m::kNu, 1023) == gr4m::kRingOne);
    for (int d : {3, 11, 31, 93, 341}) CHECK(gr4m::pow(gr4m::kNu, d) != gr4m::kRingOne);
    for (std::uint16_t v = 0; v < 1024; ++v) {
      const gf2m::FieldElement a(v);
      const RingElement t = gr4m::teichmuller_lift(a);
      CHECK(gr4m::mod2_reduce(t) == a);
      CHECK(gr4m::pow(t, 1024) == t);
    }
  }

  TEST_CASE("Frobenius is an automorphism of order 10") {
    std::mt19937 rng(5);
    for (int k = 0; k < 300; ++k) {
      const RingElement a = random_element(rng), b = random_element(rng);
      CHECK(gr4m::frobenius(a * b) == gr4m::frobenius(a) * gr4m::frobenius(b));
      CHECK(gr4m::frobenius(a + b) == gr4m::frobenius(a) + gr4m::frobenius(b));
      RingElement x = a;
      for (int i = 0; i < 10; ++i) x = gr4m::frobenius(x);
      CHECK(x == a);
    }
  }

  TEST_CASE("2-adic decomposition and trace") {
    std::mt19937 rng(9);
    for (int k = 0; k < 500; ++k) {
      const RingElement a = random_element(rng);
      const auto [a0, a1] = gr4m::two_adic(a);
      CHECK(gr4m::teichmuller_lift(a0) + gr4m::teichmuller_lift(a1).twice() == a);
      CHECK(gr4m::ring_trace(a) == gr4m::ring_trace_by_frobenius(a));
      // T(2a) = 2 tr(a mod 2)
      CHECK(gr4m::ring_trace(a.twice()) == 2 * gf2m::trace(gr4m::mod2_reduce(a)));
    }
    CHECK(gr4m::ring_trace(gr4m::kRingOne) == 2);
    CHECK(gr4m::ring_trace(gr4m::kRingZero) == 0);
  }
}
