#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "z4codes/codegen.hpp"

// Exact correlations of Z4 sequences. Symbol e maps to i^e (0 -> 1, 1 -> i,
// 2 -> -1, 3 -> -i); a binary code b is the Z4 sequence 2b.
//
//   phi(tau)   = sum_t i^(Q1(t+tau) - Q2(t))      periodic (even) correlation
//   Delta(tau) = sum_t i^(Q1(t+tau) + Q2(t))      anti-correlation
//   odd(tau)   = sum_{t < N-tau} s1(t+tau) s2*(t) - sum_{t >= N-tau} s1(t+tau-N) s2*(t)
//
// Indices are cyclic with period N = length.

namespace z4codes {

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr GaussInt operator*(std::int64_t k, GaussInt a) { return {k * a.re, k * a.im}; }
  friend constexpr bool operator==(GaussInt, GaussInt) = default;
  constexpr GaussInt conj() const { return {re, -im}; }
  constexpr std::int64_t norm() const { return re * re + im * im; }
};

// i^e for any integer e.
constexpr GaussInt i_pow(long long e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

enum class CorrelationKind : std::uint8_t { even, odd, anti };
enum class ShiftParity : std::uint8_t { even_tau, odd_tau };

struct CorrelationValue {
  GaussInt value;
  int tau = 0;
  ShiftParity parity = ShiftParity::even_tau;
  CorrelationKind kind = CorrelationKind::even;
};

using Z4Span = std::span<const std::uint8_t>;

std::vector<std::uint8_t> as_z4(const BinaryCode& b);

// Throw std::invalid_argument on length mismatch.
CorrelationValue phi_brute(Z4Span q1, Z4Span q2, int tau);
CorrelationValue delta_brute(Z4Span q1, Z4Span q2, int tau);
CorrelationValue odd_corr(Z4Span s1, Z4Span s2, int tau);
// Sign flip on the other segment: sum over the wrapped part minus the rest.
CorrelationValue odd_corr_alternate(Z4Span s1, Z4Span s2, int tau);
std::int64_t binary_corr_brute(const BinaryCode& b1, const BinaryCode& b2, int tau);

// Binary component correlation from the parents' phi and Delta:
//   v-v: Re phi + Im Delta     w-w: Re phi - Im Delta
//   v-w: Re Delta + Im phi     w-v: Re Delta - Im phi
std::int64_t binary_from_quaternary(Phase first, Phase second, GaussInt phi, GaussInt delta);
std::int64_t binary_corr_via_quaternary(const CodeIndex& idx1, const CodeIndex& idx2, Phase phase1, Phase phase2, int tau);

inline bool is_degenerate_shift(int tau) { return tau % kOrder == 0; }

// Family A correlation psi(y1, y2, tau) = -1 - 32 i^(1 - T(e)), with
//   mu = sqrt(1 / (1 + alpha^tau)),  e = mu + y1 + (y1 + y2) mu^2  (mod 2)
// and T evaluated on the Teichmuller lift of e. Throws std::domain_error when
// alpha^tau = 1; those shifts need direct summation.
CorrelationValue psi_closed(FieldElement y1, FieldElement y2, int tau);
// e(y1, y2, tau) as above.
FieldElement closed_form_e(FieldElement y1, FieldElement y2, int tau);

struct ClosedFormInputs {
  std::uint8_t x1 = 0;
  std::uint8_t x2 = 0;
  FieldElement y1;
  FieldElement y2;
  int tau = 0;

  FieldElement y3() const { return y1 + gf2m::theta(); }
  FieldElement y4() const { return y2 + gf2m::theta(); }
  FieldElement y5() const { return y1 + gf2m::kOne; }
  FieldElement y6() const { return y2 + gf2m::kOne; }
  FieldElement y7() const { return y1 + gf2m::theta() + gf2m::kOne; }
  FieldElement y8() const { return y2 + gf2m::theta() + gf2m::kOne; }
};

// phi as a sum of two Family A correlations:
//   tau even: i^(x1-x2)  (psi(y1,y2) + (-1)^(x1-x2) psi(y3,y4))
//   tau odd:  i^(3x1-x2) (psi(y3,y2) + (-1)^(x1-x2) psi(y1,y4))
// Shifts with tau = 0 mod 1023 fall back to phi_brute on generated codes.
CorrelationValue phi_closed(const ClosedFormInputs& in);
// Single-e form: i^(x2-x1) phi = (-1 - (-1)^(x1-x2)) - 32 i^(1-T(e)) (1 - (-1)^(x1-x2) i (-1)^tr(e theta))
// with e = e(y1,y2,tau) for even tau and e(y3,y2,tau) for odd tau (prefactor i^(x2-3x1) then).
CorrelationValue phi_closed_single_e(const ClosedFormInputs& in);
//   tau even: i^(x1-3x2)  (psi(y1,y6) + (-1)^(x1-3x2) psi(y3,y8))
//   tau odd:  i^(3x1-3x2) (psi(y3,y6) + (-1)^(x1-3x2) psi(y1,y8))
CorrelationValue delta_closed(const ClosedFormInputs& in);

}  // namespace z4codes
