#include "z4codes/gr4m.hpp"

#include <bit>
#include <stdexcept>

namespace z4codes::gr4m {
namespace {

int degree(std::uint32_t p) { return p == 0 ? -1 : 31 - std::countl_zero(p); }

std::uint32_t gf2_poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

std::uint32_t gf2_poly_gcd(std::uint32_t a, std::uint32_t b) {
  while (b != 0) {
    a = gf2_poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// Printed form of m_nu, constant term first.
const Z4Poly kPrintedMinPolyNu = {1, 2, 1, 1, 0, 0, 1, 2, 3, 1, 1};

// x^(10+k) mod m_nu for k = 0..8.
struct ReductionTable {
  std::array<std::array<int, kDegree>, kDegree - 1> residue{};

  explicit ReductionTable(const Z4Poly& m) {
    // x^10 = -(m_0 + m_1 x + ... + m_9 x^9)
    std::array<int, kDegree> r{};
    for (int i = 0; i < kDegree; ++i) r[i] = (4 - m[i]) % 4;
    residue[0] = r;
    for (int k = 1; k < kDegree - 1; ++k) {
      std::array<int, kDegree> next{};
      const int top = r[kDegree - 1];
      for (int i = kDegree - 1; i > 0; --i) next[i] = r[i - 1];
      next[0] = 0;
      for (int i = 0; i < kDegree; ++i) next[i] = (next[i] + top * residue[0][i]) % 4;
      residue[k] = next;
      r = next;
    }
  }
};

const ReductionTable& reduction() {
  static const ReductionTable t(min_poly_nu());
  return t;
}

struct TeichmullerTable {
  std::array<RingElement, kOrder> nu_pow{};

  TeichmullerTable() {
    RingElement a = kRingOne;
    for (int k = 0; k < kOrder; ++k) {
      if (mod2_reduce(a) != gf2m::alpha_pow(k)) throw std::logic_error("gr4m: nu does not reduce to alpha");
      nu_pow[k] = a;
      a = a * kNu;
    }
    if (a != kRingOne) throw std::logic_error("gr4m: nu does not have order 1023");
  }
};

const TeichmullerTable& teichmuller() {
  static const TeichmullerTable t;
  return t;
}

struct BasisTrace {
  std::array<int, kDegree> of_nu_pow{};
  BasisTrace() {
    for (int i = 0; i < kDegree; ++i) of_nu_pow[i] = ring_trace_by_frobenius(teichmuller().nu_pow[i]);
  }
};

const BasisTrace& basis_trace() {
  static const BasisTrace t;
  return t;
}

}  // namespace

RingElement::RingElement(const std::array<std::uint8_t, kDegree>& coeffs) {
  for (int i = 0; i < kDegree; ++i) {
    lo_ |= static_cast<std::uint16_t>((coeffs[i] & 1U) << i);
    hi_ |= static_cast<std::uint16_t>(((coeffs[i] >> 1) & 1U) << i);
  }
}

std::array<std::uint8_t, kDegree> RingElement::coeffs() const {
  std::array<std::uint8_t, kDegree> c{};
  for (int i = 0; i < kDegree; ++i) c[i] = static_cast<std::uint8_t>(coeff(i));
  return c;
}

RingElement operator*(RingElement a, RingElement b) {
  std::array<int, 2 * kDegree - 1> prod{};
  for (int i = 0; i < kDegree; ++i) {
    const int ai = a.coeff(i);
    if (ai == 0) continue;
    for (int j = 0; j < kDegree; ++j) prod[i + j] += ai * b.coeff(j);
  }
  const auto& red = reduction();
  std::array<std::uint8_t, kDegree> out{};
  std::array<int, kDegree> acc{};
  for (int i = 0; i < kDegree; ++i) acc[i] = prod[i];
  for (int k = 0; k < kDegree - 1; ++k) {
    const int c = prod[kDegree + k] % 4;
    if (c == 0) continue;
    for (int i = 0; i < kDegree; ++i) acc[i] += c * red.residue[k][i];
  }
  for (int i = 0; i < kDegree; ++i) out[i] = static_cast<std::uint8_t>(acc[i] % 4);
  return RingElement(out);
}

Z4Poly graeffe_lift(std::uint32_t binary_poly) {
  if (binary_poly == 0) throw std::invalid_argument("graeffe_lift: zero polynomial");
  const int d = degree(binary_poly);
  std::uint32_t derivative = 0;
  for (int i = 1; i <= d; i += 2) {
    if ((binary_poly >> i) & 1U) derivative |= 1U << (i - 1);
  }
  if (derivative == 0 ? d > 0 : gf2_poly_gcd(binary_poly, derivative) != 1) {
    throw std::invalid_argument("graeffe_lift: polynomial is not square-free mod 2");
  }
  // r(x) = p(x) p(-x) over the integers
  std::vector<long long> r(2 * d + 1, 0);
  for (int i = 0; i <= d; ++i) {
    if (!((binary_poly >> i) & 1U)) continue;
    for (int j = 0; j <= d; ++j) {
      if ((binary_poly >> j) & 1U) r[i + j] += (j % 2 == 0) ? 1 : -1;
    }
  }
  Z4Poly q(d + 1, 0);
  const long long sign = (d % 2 == 0) ? 1 : -1;
  for (int k = 0; k <= 2 * d; ++k) {
    if (k % 2 == 1) {
      if (r[k] != 0) throw std::logic_error("graeffe_lift: odd-degree term in p(x)p(-x)");
      continue;
    }
    q[k / 2] = static_cast<std::uint8_t>(((sign * r[k]) % 4 + 4) % 4);
  }
  return q;
}

const Z4Poly& min_poly_nu() {
  static const Z4Poly m = [] {
    Z4Poly lifted = graeffe_lift(gf2m::kModulus);
    if (lifted != kPrintedMinPolyNu) throw std::logic_error("gr4m: Graeffe lift of m_alpha differs from m_nu");
    return lifted;
  }();
  return m;
}

RingElement pow(RingElement a, long long k) {
  if (k < 0) throw std::domain_error("gr4m::pow: negative exponent");
  RingElement result = kRingOne;
  while (k > 0) {
    if (k & 1) result = result * a;
    a = a * a;
    k >>= 1;
  }
  return result;
}

FieldElement mod2_reduce(RingElement a) { return FieldElement(a.lo()); }

RingElement teichmuller_lift(FieldElement a) {
  if (a.is_zero()) return kRingZero;
  return teichmuller().nu_pow[gf2m::discrete_log(a)];
}

std::pair<FieldElement, FieldElement> two_adic(RingElement a) {
  const FieldElement a0 = mod2_reduce(a);
  const RingElement rest = a - teichmuller_lift(a0);
  // rest = 2 a1, so its lo plane is zero and its hi plane is a1 mod 2.
  return {a0, FieldElement(rest.hi())};
}

RingElement frobenius(RingElement a) {
  const auto [a0, a1] = two_adic(a);
  return teichmuller_lift(a0 * a0) + teichmuller_lift(a1 * a1).twice();
}

int ring_trace_by_frobenius(RingElement a) {
  RingElement sum = kRingZero;
  for (int i = 0; i < kDegree; ++i) {
    sum = sum + a;
    a = frobenius(a);
  }
  if ((sum.lo() >> 1) != 0 || (sum.hi() >> 1) != 0) throw std::logic_error("gr4m: trace is not a Z4 scalar");
  return sum.coeff(0);
}

int ring_trace(RingElement a) {
  const auto& t = basis_trace().of_nu_pow;
  int s = 0;
  for (int i = 0; i < kDegree; ++i) s += a.coeff(i) * t[i];
  return s % 4;
}

RingElement evaluate(const Z4Poly& p, RingElement x) {
  RingElement acc = kRingZero;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + RingElement::scalar(*it);
  return acc;
}

}  // namespace z4codes::gr4m
