#pragma once

#include <array>
#include <cstdint>
#include <functional>

// Arithmetic in GF(2^10) with the fixed primitive polynomial
//   m_alpha(x) = x^10 + x^9 + x^8 + x^6 + x^3 + x^2 + 1.
// Elements are 10-bit words; bit i is the coefficient of alpha^i.

namespace z4codes {

inline constexpr int kDegree = 10;
inline constexpr int kOrder = 1023;   // L = 2^10 - 1
inline constexpr int kPeriod = 2046;  // 2L

namespace gf2m {

inline constexpr std::uint32_t kModulus = 0b111'0100'1101;  // x^10+x^9+x^8+x^6+x^3+x^2+1
inline constexpr std::uint16_t kMask = 0x3FF;

class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint16_t bits) : bits_(bits & kMask) {}

  constexpr std::uint16_t bits() const { return bits_; }
  constexpr bool is_zero() const { return bits_ == 0; }
  constexpr bool coeff(int i) const { return (bits_ >> i) & 1U; }

  friend constexpr FieldElement operator+(FieldElement a, FieldElement b) {
    return FieldElement(static_cast<std::uint16_t>(a.bits_ ^ b.bits_));
  }
  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

 private:
  std::uint16_t bits_ = 0;
};

inline constexpr FieldElement kZero{0};
inline constexpr FieldElement kOne{1};

// Shift-and-xor product reduced by m_alpha.
FieldElement operator*(FieldElement a, FieldElement b);

FieldElement alpha_pow(long long k);
// a^k; the exponent is taken mod 1023 for nonzero a. Throws std::domain_error for 0^k with k < 0.
FieldElement pow(FieldElement a, long long k);
FieldElement inverse(FieldElement a);
// Unique square root, a^(2^9).
FieldElement square_root(FieldElement a);
// Absolute trace to GF(2), sum of a^(2^i) for i = 0..9.
int trace(FieldElement a);
// k in [0, 1022] with alpha^k = a. Throws std::domain_error for a = 0.
int discrete_log(FieldElement a);

using DualBasis = std::array<FieldElement, kDegree>;

// Trace-dual basis of {alpha^i}: tr(alpha^i * delta_j) = [i == j]. Computed by
// inverting the trace-form matrix and checked against the published table
// (exponents 64, 63, 580, 138, 137, 136, 285, 284, 324, 65); a mismatch throws
// std::logic_error.
const DualBasis& dual_basis();
inline constexpr std::array<int, kDegree> kDualBasisLogs = {64, 63, 580, 138, 137,
                                                            136, 285, 284, 324, 65};

// h_i = tr(a * alpha^i), packed as bit i.
std::uint16_t dual_coords(FieldElement a);
// Inverse of dual_coords: sum of h_i * delta_i.
FieldElement from_dual_coords(std::uint16_t h);

// theta = alpha^64 + alpha^65, the fixed element with tr(theta) = 1.
FieldElement theta();

}  // namespace gf2m
}  // namespace z4codes

template <>
struct std::hash<z4codes::gf2m::FieldElement> {
  std::size_t operator()(z4codes::gf2m::FieldElement a) const noexcept { return a.bits(); }
};
