#include "z4codes/correlation.hpp"

#include <stdexcept>

namespace z4codes {
namespace {

void check_lengths(Z4Span a, Z4Span b) {
  if (a.size() != b.size()) throw std::invalid_argument("correlation: sequence lengths differ");
  if (a.empty()) throw std::invalid_argument("correlation: empty sequence");
}

std::size_t wrap(int tau, std::size_t n) {
  const long long r = tau % static_cast<long long>(n);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<long long>(n) : r);
}

GaussInt from_counts(const std::array<std::int64_t, 4>& c) { return {c[0] - c[2], c[1] - c[3]}; }

ShiftParity parity_of(int tau) { return (tau % 2 == 0) ? ShiftParity::even_tau : ShiftParity::odd_tau; }

// Split sum: first = t in [0, N - tau), second = t in [N - tau, N).
std::pair<GaussInt, GaussInt> split_sum(Z4Span s1, Z4Span s2, std::size_t tau) {
  const std::size_t n = s1.size();
  std::array<std::int64_t, 4> first{}, second{};
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t idx = t + tau;
    const int e = (s1[idx % n] - s2[t]) & 3;
    (idx < n ? first : second)[e] += 1;
  }
  return {from_counts(first), from_counts(second)};
}

}  // namespace

std::vector<std::uint8_t> as_z4(const BinaryCode& b) {
  std::vector<std::uint8_t> out(b.bits.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = static_cast<std::uint8_t>(2 * (b.bits[t] & 1U));
  return out;
}

CorrelationValue phi_brute(Z4Span q1, Z4Span q2, int tau) {
  check_lengths(q1, q2);
  const std::size_t n = q1.size();
  const std::size_t shift = wrap(tau, n);
  std::array<std::int64_t, 4> counts{};
  for (std::size_t t = 0; t < n; ++t) ++counts[(q1[(t + shift) % n] - q2[t]) & 3];
  return {from_counts(counts), static_cast<int>(shift), parity_of(static_cast<int>(shift)), CorrelationKind::even};
}

CorrelationValue delta_brute(Z4Span q1, Z4Span q2, int tau) {
  check_lengths(q1, q2);
  const std::size_t n = q1.size();
  const std::size_t shift = wrap(tau, n);
  std::array<std::int64_t, 4> counts{};
  for (std::size_t t = 0; t < n; ++t) ++counts[(q1[(t + shift) % n] + q2[t]) & 3];
  return {from_counts(counts), static_cast<int>(shift), parity_of(static_cast<int>(shift)), CorrelationKind::anti};
}

CorrelationValue odd_corr(Z4Span s1, Z4Span s2, int tau) {
  check_lengths(s1, s2);
  const std::size_t shift = wrap(tau, s1.size());
  const auto [first, second] = split_sum(s1, s2, shift);
  return {first - second, static_cast<int>(shift), parity_of(static_cast<int>(shift)), CorrelationKind::odd};
}

CorrelationValue odd_corr_alternate(Z4Span s1, Z4Span s2, int tau) {
  check_lengths(s1, s2);
  const std::size_t shift = wrap(tau, s1.size());
  const auto [first, second] = split_sum(s1, s2, shift);
  return {second - first, static_cast<int>(shift), parity_of(static_cast<int>(shift)), CorrelationKind::odd};
}

std::int64_t binary_corr_brute(const BinaryCode& b1, const BinaryCode& b2, int tau) {
  if (b1.bits.size() != b2.bits.size()) throw std::invalid_argument("binary_corr_brute: sequence lengths differ");
  const std::size_t n = b1.bits.size();
  const std::size_t shift = wrap(tau, n);
  std::int64_t sum = 0;
  for (std::size_t t = 0; t < n; ++t) sum += ((b1.bits[(t + shift) % n] ^ b2.bits[t]) & 1U) ? -1 : 1;
  return sum;
}

std::int64_t binary_from_quaternary(Phase first, Phase second, GaussInt phi, GaussInt delta) {
  if (first == Phase::QP && second == Phase::QP) return phi.re + delta.im;
  if (first == Phase::IP && second == Phase::IP) return phi.re - delta.im;
  if (first == Phase::QP) return delta.re + phi.im;
  return delta.re - phi.im;
}

std::int64_t binary_corr_via_quaternary(const CodeIndex& idx1, const CodeIndex& idx2, Phase phase1, Phase phase2,
                                        int tau) {
  const ClosedFormInputs in{idx1.x, idx2.x, idx1.y, idx2.y, tau};
  return binary_from_quaternary(phase1, phase2, phi_closed(in).value, delta_closed(in).value);
}

FieldElement closed_form_e(FieldElement y1, FieldElement y2, int tau) {
  const FieldElement shift = gf2m::alpha_pow(tau);
  if (shift == gf2m::kOne) throw std::domain_error("closed form undefined for tau = 0 mod 1023");
  const FieldElement mu = gf2m::square_root(gf2m::inverse(gf2m::kOne + shift));
  return mu + y1 + (y1 + y2) * (mu * mu);
}

CorrelationValue psi_closed(FieldElement y1, FieldElement y2, int tau) {
  const FieldElement e = closed_form_e(y1, y2, tau);
  const int t = gr4m::ring_trace(gr4m::teichmuller_lift(e));
  const GaussInt value = GaussInt{-1, 0} - 32 * i_pow(1 - t);
  return {value, tau, parity_of(tau), CorrelationKind::even};
}

namespace {

// Two-psi evaluation with x1, x2 taken in Z4.
GaussInt two_psi(int x1, FieldElement y1, int x2, FieldElement y2, int tau) {
  const FieldElement th = gf2m::theta();
  const FieldElement y3 = y1 + th;
  const FieldElement y4 = y2 + th;
  const std::int64_t sign = ((x1 - x2) % 2 == 0) ? 1 : -1;
  if (tau % 2 == 0) {
    return i_pow(x1 - x2) * (psi_closed(y1, y2, tau).value + sign * psi_closed(y3, y4, tau).value);
  }
  return i_pow(3 * x1 - x2) * (psi_closed(y3, y2, tau).value + sign * psi_closed(y1, y4, tau).value);
}

QuaternaryCode code_of(std::uint8_t x, FieldElement y) { return gen_quaternary(CodeIndex{x, y}); }

int normalize_tau(int tau) { return static_cast<int>(wrap(tau, kPeriod)); }

}  // namespace

CorrelationValue phi_closed(const ClosedFormInputs& in) {
  const int tau = normalize_tau(in.tau);
  if (is_degenerate_shift(tau)) {
    return phi_brute(code_of(in.x1, in.y1).symbols, code_of(in.x2, in.y2).symbols, tau);
  }
  return {two_psi(in.x1, in.y1, in.x2, in.y2, tau), tau, parity_of(tau), CorrelationKind::even};
}

CorrelationValue phi_closed_single_e(const ClosedFormInputs& in) {
  const int tau = normalize_tau(in.tau);
  if (is_degenerate_shift(tau)) {
    return phi_brute(code_of(in.x1, in.y1).symbols, code_of(in.x2, in.y2).symbols, tau);
  }
  const bool even = tau % 2 == 0;
  const FieldElement e = closed_form_e(even ? in.y1 : in.y3(), in.y2, tau);
  const int te = gr4m::ring_trace(gr4m::teichmuller_lift(e));
  const std::int64_t sign = ((in.x1 - in.x2) % 2 == 0) ? 1 : -1;
  const std::int64_t tr_sign = gf2m::trace(e * gf2m::theta()) ? -1 : 1;
  const GaussInt rhs =
      GaussInt{-1 - sign, 0} - 32 * (i_pow(1 - te) * (GaussInt{1, 0} - sign * tr_sign * GaussInt{0, 1}));
  // Move the prefactor i^(x2-x1) or i^(x2-3x1) to the other side.
  const GaussInt value = even ? i_pow(in.x1 - in.x2) * rhs : i_pow(3 * in.x1 - in.x2) * rhs;
  return {value, tau, parity_of(tau), CorrelationKind::even};
}

CorrelationValue delta_closed(const ClosedFormInputs& in) {
  const int tau = normalize_tau(in.tau);
  if (is_degenerate_shift(tau)) {
    return delta_brute(code_of(in.x1, in.y1).symbols, code_of(in.x2, in.y2).symbols, tau);
  }
  const int x1 = in.x1;
  const int x2 = in.x2;
  const std::int64_t sign = ((x1 - 3 * x2) % 2 == 0) ? 1 : -1;
  GaussInt value;
  if (tau % 2 == 0) {
    value = i_pow(x1 - 3 * x2) * (psi_closed(in.y1, in.y6(), tau).value + sign * psi_closed(in.y3(), in.y8(), tau).value);
  } else {
    value = i_pow(3 * x1 - 3 * x2) *
            (psi_closed(in.y3(), in.y6(), tau).value + sign * psi_closed(in.y1, in.y8(), tau).value);
  }
  return {value, tau, parity_of(tau), CorrelationKind::anti};
}

}  // namespace z4codes
