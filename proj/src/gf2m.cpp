#include "z4codes/gf2m.hpp"

#include <stdexcept>
#include <string>

namespace z4codes::gf2m {
namespace {

struct LogTables {
  std::array<std::uint16_t, 2 * kOrder> antilog{};
  std::array<std::int16_t, 1024> log{};

  LogTables() {
    log[0] = -1;
    std::uint32_t a = 1;
    for (int k = 0; k < kOrder; ++k) {
      antilog[k] = static_cast<std::uint16_t>(a);
      log[a] = static_cast<std::int16_t>(k);
      a <<= 1;
      if (a & 0x400) a ^= kModulus;
    }
    if (a != 1) throw std::logic_error("gf2m: alpha does not have order 1023");
    for (int k = kOrder; k < 2 * kOrder; ++k) antilog[k] = antilog[k - kOrder];
  }
};

const LogTables& tables() {
  static const LogTables t;
  return t;
}

int mod_order(long long k) {
  long long r = k % kOrder;
  return static_cast<int>(r < 0 ? r + kOrder : r);
}

}  // namespace

FieldElement operator*(FieldElement a, FieldElement b) {
  std::uint32_t r = 0;
  const std::uint32_t x = a.bits();
  for (int i = 0; i < kDegree; ++i) {
    if (b.coeff(i)) r ^= x << i;
  }
  for (int d = 2 * kDegree - 2; d >= kDegree; --d) {
    if ((r >> d) & 1U) r ^= kModulus << (d - kDegree);
  }
  return FieldElement(static_cast<std::uint16_t>(r));
}

FieldElement alpha_pow(long long k) { return FieldElement(tables().antilog[mod_order(k)]); }

FieldElement pow(FieldElement a, long long k) {
  if (a.is_zero()) {
    if (k < 0) throw std::domain_error("gf2m::pow: zero to a negative power");
    return k == 0 ? kOne : kZero;
  }
  const auto& t = tables();
  const long long e = static_cast<long long>(t.log[a.bits()]) * mod_order(k);
  return FieldElement(t.antilog[mod_order(e)]);
}

FieldElement inverse(FieldElement a) {
  if (a.is_zero()) throw std::domain_error("gf2m::inverse: zero has no inverse");
  return pow(a, -1);
}

FieldElement square_root(FieldElement a) {
  for (int i = 0; i < kDegree - 1; ++i) a = a * a;
  return a;
}

int trace(FieldElement a) {
  FieldElement s = kZero;
  FieldElement x = a;
  for (int i = 0; i < kDegree; ++i) {
    s = s + x;
    x = x * x;
  }
  if (s.bits() > 1) throw std::logic_error("gf2m::trace: result outside GF(2)");
  return s.bits();
}

int discrete_log(FieldElement a) {
  if (a.is_zero()) throw std::domain_error("gf2m::discrete_log: zero has no logarithm");
  return tables().log[a.bits()];
}

namespace {

DualBasis compute_dual_basis() {
  // Row i of the augmented system: [tr(alpha^(i+j)) for j | e_i]. Reducing the
  // left block to the identity leaves the inverse matrix on the right, whose
  // row j holds the alpha^k coefficients of delta_j.
  std::array<std::uint32_t, kDegree> rows{};
  for (int i = 0; i < kDegree; ++i) {
    std::uint32_t left = 0;
    for (int j = 0; j < kDegree; ++j) {
      if (trace(alpha_pow(i + j))) left |= 1U << j;
    }
    rows[i] = left | (1U << (kDegree + i));
  }
  for (int col = 0; col < kDegree; ++col) {
    int pivot = col;
    while (pivot < kDegree && !((rows[pivot] >> col) & 1U)) ++pivot;
    if (pivot == kDegree) throw std::logic_error("gf2m: trace form is singular");
    std::swap(rows[col], rows[pivot]);
    for (int r = 0; r < kDegree; ++r) {
      if (r != col && ((rows[r] >> col) & 1U)) rows[r] ^= rows[col];
    }
  }
  DualBasis basis{};
  for (int j = 0; j < kDegree; ++j) {
    basis[j] = FieldElement(static_cast<std::uint16_t>(rows[j] >> kDegree));
  }
  return basis;
}

DualBasis checked_dual_basis() {
  DualBasis basis = compute_dual_basis();
  for (int j = 0; j < kDegree; ++j) {
    if (basis[j] != alpha_pow(kDualBasisLogs[j])) {
      throw std::logic_error("gf2m: dual basis element " + std::to_string(j) + " is alpha^" +
                             std::to_string(discrete_log(basis[j])) + ", expected alpha^" +
                             std::to_string(kDualBasisLogs[j]));
    }
  }
  return basis;
}

}  // namespace

const DualBasis& dual_basis() {
  static const DualBasis basis = checked_dual_basis();
  return basis;
}

std::uint16_t dual_coords(FieldElement a) {
  std::uint16_t h = 0;
  for (int i = 0; i < kDegree; ++i) {
    if (trace(a * alpha_pow(i))) h |= static_cast<std::uint16_t>(1U << i);
  }
  return h;
}

FieldElement from_dual_coords(std::uint16_t h) {
  const auto& delta = dual_basis();
  FieldElement y = kZero;
  for (int i = 0; i < kDegree; ++i) {
    if ((h >> i) & 1U) y = y + delta[i];
  }
  return y;
}

FieldElement theta() { return alpha_pow(64) + alpha_pow(65); }

}  // namespace z4codes::gf2m
