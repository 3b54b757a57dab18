#pragma once

#include <cstdint>
#include <vector>

#include "z4codes/codegen.hpp"
#include "z4codes/gr4m.hpp"

// Two coupled 11-stage binary shift registers generating Q = U + 2V.
//
// A Z4 recursion Q(t+11) = sum a_i Q(t+i) splits into
//   U(t+11) = sum_{a_i odd} U(t+i)
//   V(t+11) = sum_{a_i odd} V(t+i) + sum_{a_i in {2,3}} U(t+i) + sigma2(U(t+i) : a_i odd)
// all mod 2, sigma2 being the carry of the odd-tap sum.
//
// With the characteristic polynomial of the codes (m_beta(x)(x+1), m_beta the
// polynomial that actually vanishes at beta):
//   U(t+11) = U(t+8) + U(t+7) + U(t+6) + U(t+4) + U(t+2) + U(t+1) + U(t)
//   V(t+11) = V(t+8) + V(t+7) + V(t+6) + V(t+4) + V(t+2) + V(t+1) + V(t)
//           + U(t+10) + U(t+8) + U(t+6) + U(t+4) + U(t+3) + U(t+2)
//           + sigma2(U(t+8), U(t+7), U(t+6), U(t+4), U(t+2), U(t+1), U(t))
//
// The shortcut m_beta = m_alpha + 2(x+1) assumes m_alpha(nu) = 0,
// which fails in GR(4,10) (nu is a root of m_nu, not m_alpha). Its recursion has
// the U feed-forward set {10,9,8,7,6,4,3,1} and drifts from the trace-defined
// codes at t = 11. It is kept below as printed_* for comparison.

namespace z4codes::shiftreg {

using gr4m::Z4Poly;

inline constexpr int kStages = 11;

// m_alpha(x) + 2g(x) with g read off m_alpha(beta) = 2g(alpha); throws
// std::logic_error unless the result vanishes at beta. Comes out as
//   x^10 + x^9 + 3x^8 + 2x^7 + x^6 + x^3 + x^2 + 3
const Z4Poly& min_poly_beta();
// m_beta(x)(x + 1) = x^11 + 2x^10 + x^8 + 3x^7 + x^6 + x^4 + 2x^3 + x^2 + 3x + 3
const Z4Poly& char_poly();
// x^10 + x^9 + x^8 + x^6 + x^3 + x^2 + 2x + 3 and its product with (x + 1),
// x^11 + 2x^10 + 2x^9 + x^8 + x^7 + x^6 + x^4 + 2x^3 + 3x^2 + x + 3.
const Z4Poly& printed_min_poly_beta();
const Z4Poly& printed_char_poly();
Z4Poly multiply(const Z4Poly& a, const Z4Poly& b);

// Register wiring for a monic degree-11 Z4 characteristic polynomial.
struct Taps {
  std::uint16_t linear = 0;        // bit i: a_i odd
  std::uint16_t feedforward = 0;   // bit i: a_i in {2, 3}
  friend bool operator==(const Taps&, const Taps&) = default;
};
// Throws std::invalid_argument unless c is monic of degree 11 with the odd taps
// {8,7,6,4,2,1,0} that the factored sigma2 is wired for.
Taps taps_from_char_poly(const Z4Poly& c);
const Taps& code_taps();     // from char_poly()
const Taps& printed_taps();  // from printed_char_poly()

// Second elementary symmetric function mod 2 of the 7 bits in the low bits of b,
// i.e. the parity of the number of pairs i < j with b_i = b_j = 1.
int sigma2(std::uint8_t b);
// Same function in the factored form used for the gate-level register:
//   (a+b+c+d)(e+f+g) + (a+b)(c+d) + (e+f)g + ab + cd + ef
// with (a..g) = (U8, U7, U6, U4, U2, U1, U0): 29 XOR and 6 AND gates in hardware.
int sigma2_factored(std::uint8_t b);

struct RegisterState {
  std::uint16_t u = 0;  // bit k holds U(t+k), k = 0..10
  std::uint16_t v = 0;  // bit k holds V(t+k)
  long long t = 0;

  bool degenerate() const { return u == 0 && v == 0; }
  friend bool operator==(const RegisterState&, const RegisterState&) = default;
};

struct StepOutput {
  std::uint8_t q;  // U(t) + 2V(t)
  std::uint8_t v;  // quadrature-phase bit
  std::uint8_t w;  // in-phase bit, U(t) xor V(t)
};

// Emit the outputs for time t and advance to t + 1.
StepOutput step(RegisterState& s, const Taps& taps = code_taps());

// Load the registers with Q(0..10) computed algebraically.
RegisterState seed_from_index(const CodeIndex& idx);

// 2046 symbols from a seeded register pair.
QuaternaryCode generate(const CodeIndex& idx, const Taps& taps = code_taps());

}  // namespace z4codes::shiftreg
