#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "z4codes/gf2m.hpp"

// Galois ring GR(4,10) = Z4[x] / (m_nu(x)) with m_nu the Graeffe lift of m_alpha:
//   m_nu(x) = x^10 + x^9 + 3x^8 + 2x^7 + x^6 + x^3 + x^2 + 2x + 1.
// An element c_0 + c_1 nu + ... + c_9 nu^9 is stored as two 10-bit planes with
// c_i = lo_i + 2 hi_i.

namespace z4codes::gr4m {

using gf2m::FieldElement;

// Polynomial over Z4, ascending degree.
using Z4Poly = std::vector<std::uint8_t>;

class RingElement {
 public:
  constexpr RingElement() = default;
  constexpr RingElement(std::uint16_t lo, std::uint16_t hi) : lo_(lo & gf2m::kMask), hi_(hi & gf2m::kMask) {}
  explicit RingElement(const std::array<std::uint8_t, kDegree>& coeffs);
  static constexpr RingElement scalar(int c) {
    return RingElement(static_cast<std::uint16_t>(c & 1), static_cast<std::uint16_t>((c >> 1) & 1));
  }

  constexpr std::uint16_t lo() const { return lo_; }
  constexpr std::uint16_t hi() const { return hi_; }
  constexpr int coeff(int i) const { return ((lo_ >> i) & 1) + 2 * ((hi_ >> i) & 1); }
  std::array<std::uint8_t, kDegree> coeffs() const;

  friend constexpr RingElement operator+(RingElement a, RingElement b) {
    const std::uint16_t carry = a.lo_ & b.lo_;
    return RingElement(a.lo_ ^ b.lo_, a.hi_ ^ b.hi_ ^ carry);
  }
  friend constexpr RingElement operator-(RingElement a) {
    // -(l + 2h) = l + 2(h xor l) mod 4
    return RingElement(a.lo_, a.hi_ ^ a.lo_);
  }
  friend constexpr RingElement operator-(RingElement a, RingElement b) { return a + (-b); }
  friend RingElement operator*(RingElement a, RingElement b);
  friend constexpr bool operator==(RingElement, RingElement) = default;

  // 2a; only a mod 2 survives.
  constexpr RingElement twice() const { return RingElement(0, lo_); }

 private:
  std::uint16_t lo_ = 0;
  std::uint16_t hi_ = 0;
};

inline constexpr RingElement kRingZero{};
inline constexpr RingElement kRingOne = RingElement::scalar(1);
inline constexpr RingElement kNu{0b10, 0};

// q(x^2) = (-1)^d p(x) p(-x) mod 4 for a binary polynomial p of degree d given as a
// bit mask (bit i = coefficient of x^i). Throws std::invalid_argument when p is
// zero or not square-free mod 2.
Z4Poly graeffe_lift(std::uint32_t binary_poly);

// The printed minimal polynomial of nu, checked at startup against graeffe_lift(m_alpha).
const Z4Poly& min_poly_nu();

RingElement pow(RingElement a, long long k);
FieldElement mod2_reduce(RingElement a);
// The Teichmuller element reducing to a: 0 -> 0, alpha^k -> nu^k.
RingElement teichmuller_lift(FieldElement a);
// a = a0 + 2 a1 with a0, a1 Teichmuller; returns (a0 mod 2, a1 mod 2).
std::pair<FieldElement, FieldElement> two_adic(RingElement a);
// phi(a0 + 2 a1) = a0^2 + 2 a1^2.
RingElement frobenius(RingElement a);
// T(a) as a Z4 value, through the precomputed traces of the basis nu^0..nu^9.
int ring_trace(RingElement a);
// T(a) = sum of frobenius^i(a), i = 0..9, evaluated literally. Used to build the
// basis-trace table and as a cross-check.
int ring_trace_by_frobenius(RingElement a);
// Evaluate a Z4 polynomial at a ring element.
RingElement evaluate(const Z4Poly& p, RingElement x);

}  // namespace z4codes::gr4m
