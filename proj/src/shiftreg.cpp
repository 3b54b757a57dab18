#include "z4codes/shiftreg.hpp"

#include <bit>
#include <stdexcept>

namespace z4codes::shiftreg {
namespace {

constexpr std::uint16_t kLinearTaps = (1U << 8) | (1U << 7) | (1U << 6) | (1U << 4) | (1U << 2) | (1U << 1) | 1U;
constexpr std::array<int, 7> kSigmaTaps = {8, 7, 6, 4, 2, 1, 0};

const Z4Poly kPrintedMinPolyBeta = {3, 2, 1, 1, 0, 0, 1, 0, 1, 1, 1};
const Z4Poly kPrintedCharPoly = {3, 1, 3, 2, 1, 0, 1, 1, 1, 2, 2, 1};

int parity(unsigned x) { return std::popcount(x) & 1; }

}  // namespace

Z4Poly multiply(const Z4Poly& a, const Z4Poly& b) {
  if (a.empty() || b.empty()) return {};
  Z4Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = static_cast<std::uint8_t>((out[i + j] + a[i] * b[j]) % 4);
  }
  return out;
}

const Z4Poly& min_poly_beta() {
  static const Z4Poly m = [] {
    Z4Poly m_alpha(kDegree + 1, 0);
    for (int i = 0; i <= kDegree; ++i) m_alpha[i] = (gf2m::kModulus >> i) & 1U;
    // m_alpha(beta) = 2 g(alpha); choose m_beta = m_alpha + 2 g so the sum vanishes.
    const gr4m::RingElement residue = gr4m::evaluate(m_alpha, beta());
    if (residue.lo() != 0) throw std::logic_error("m_alpha(beta) is not divisible by 2");
    Z4Poly m_beta = m_alpha;
    for (int i = 0; i < kDegree; ++i) {
      if ((residue.hi() >> i) & 1U) m_beta[i] = static_cast<std::uint8_t>((m_beta[i] + 2) % 4);
    }
    if (gr4m::evaluate(m_beta, beta()) != gr4m::kRingZero) throw std::logic_error("m_beta(beta) != 0");
    return m_beta;
  }();
  return m;
}

const Z4Poly& char_poly() {
  static const Z4Poly c = multiply(min_poly_beta(), Z4Poly{1, 1});
  return c;
}

const Z4Poly& printed_min_poly_beta() { return kPrintedMinPolyBeta; }
const Z4Poly& printed_char_poly() { return kPrintedCharPoly; }

Taps taps_from_char_poly(const Z4Poly& c) {
  if (c.size() != kStages + 1 || c.back() != 1) throw std::invalid_argument("expected a monic degree-11 polynomial");
  Taps taps;
  for (int i = 0; i < kStages; ++i) {
    const int a = (4 - c[i]) % 4;  // Q(t+11) = sum a_i Q(t+i)
    if (a & 1) taps.linear |= static_cast<std::uint16_t>(1U << i);
    if (a >= 2) taps.feedforward |= static_cast<std::uint16_t>(1U << i);
  }
  if (taps.linear != kLinearTaps) throw std::invalid_argument("odd taps differ from the sigma2 wiring");
  return taps;
}

const Taps& code_taps() {
  static const Taps t = taps_from_char_poly(char_poly());
  return t;
}

const Taps& printed_taps() {
  static const Taps t = taps_from_char_poly(printed_char_poly());
  return t;
}

int sigma2(std::uint8_t b) {
  const int n = std::popcount(static_cast<unsigned>(b & 0x7F));
  return (n * (n - 1) / 2) & 1;
}

int sigma2_factored(std::uint8_t b) {
  const int a = b & 1, c1 = (b >> 1) & 1, c = (b >> 2) & 1, d = (b >> 3) & 1;
  const int e = (b >> 4) & 1, f = (b >> 5) & 1, g = (b >> 6) & 1;
  return (((a ^ c1 ^ c ^ d) & (e ^ f ^ g)) ^ ((a ^ c1) & (c ^ d)) ^ ((e ^ f) & g) ^ (a & c1) ^ (c & d) ^ (e & f));
}

StepOutput step(RegisterState& s, const Taps& taps) {
  const std::uint8_t u0 = s.u & 1U;
  const std::uint8_t v0 = s.v & 1U;
  std::uint8_t sigma_in = 0;
  for (std::size_t k = 0; k < kSigmaTaps.size(); ++k) sigma_in |= static_cast<std::uint8_t>(((s.u >> kSigmaTaps[k]) & 1U) << k);
  const int u_next = parity(s.u & taps.linear);
  const int v_next = parity(s.v & taps.linear) ^ parity(s.u & taps.feedforward) ^ sigma2_factored(sigma_in);
  s.u = static_cast<std::uint16_t>((s.u >> 1) | (u_next << (kStages - 1)));
  s.v = static_cast<std::uint16_t>((s.v >> 1) | (v_next << (kStages - 1)));
  ++s.t;
  return StepOutput{static_cast<std::uint8_t>(u0 + 2 * v0), v0, static_cast<std::uint8_t>(u0 ^ v0)};
}

RegisterState seed_from_index(const CodeIndex& idx) {
  if (idx.x > 1) throw std::invalid_argument("seed_from_index: x must be 0 or 1");
  // First 11 symbols straight from the trace representation.
  const gr4m::RingElement b = beta();
  gr4m::RingElement term = gr4m::kRingOne + gr4m::teichmuller_lift(idx.y).twice();
  RegisterState s;
  for (int t = 0; t < kStages; ++t) {
    const int q = (idx.x * (t % 2 == 0 ? 1 : 3) + gr4m::ring_trace(term)) % 4;
    s.u |= static_cast<std::uint16_t>((q & 1) << t);
    s.v |= static_cast<std::uint16_t>(((q >> 1) & 1) << t);
    term = term * b;
  }
  return s;
}

QuaternaryCode generate(const CodeIndex& idx, const Taps& taps) {
  RegisterState s = seed_from_index(idx);
  QuaternaryCode q{idx, std::vector<std::uint8_t>(kPeriod)};
  for (int t = 0; t < kPeriod; ++t) q.symbols[t] = step(s, taps).q;
  return q;
}

}  // namespace z4codes::shiftreg
