#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "z4codes/gf2m.hpp"
#include "z4codes/gr4m.hpp"

// Quaternary family D / MFD2 and the binary component families IZ4_2 / IZ4_2S.
//
//   Q_{x,y}(t) = x 3^t + T([1 + 2y] beta^t),  beta = nu (1 + 2 theta),  t = 0..2045
//
// Canonical order everywhere: phase (QP before IP), then x ascending, then y by
// the integer value of its trace-dual coordinates.

namespace z4codes {

using gf2m::FieldElement;

struct CodeIndex {
  std::uint8_t x = 0;
  FieldElement y;

  friend bool operator==(const CodeIndex&, const CodeIndex&) = default;
};

enum class Phase : std::uint8_t { QP, IP };
enum class FamilyKind : std::uint8_t { D, MFD2, IZ4_2, IZ4_2S, External };

std::string to_string(Phase p);
std::string to_string(FamilyKind k);
FamilyKind parse_family_kind(const std::string& s);

struct QuaternaryCode {
  CodeIndex index;
  std::vector<std::uint8_t> symbols;  // values in {0,1,2,3}
};

struct BinaryCode {
  CodeIndex index;
  Phase phase = Phase::QP;
  std::vector<std::uint8_t> bits;  // values in {0,1}
  std::string id;                  // set for externally loaded codes
};

struct FamilyMetadata {
  std::uint32_t m_alpha = gf2m::kModulus;
  int theta_log = 0;
  std::string index_set;
  std::string ordering;
  int balance_threshold = -1;     // -1: no balance screening
  int odd_screen_magnitude = -1;  // -1: no odd-correlation screening
};

struct FamilySet {
  FamilyKind kind = FamilyKind::MFD2;
  std::vector<QuaternaryCode> quaternary;  // D, MFD2
  std::vector<BinaryCode> binary;          // IZ4_2, IZ4_2S, External
  FamilyMetadata metadata;

  bool is_binary() const { return kind == FamilyKind::IZ4_2 || kind == FamilyKind::IZ4_2S || kind == FamilyKind::External; }
  std::size_t size() const { return is_binary() ? binary.size() : quaternary.size(); }
};

// The 256-element index set {y : h8 = h9 = 0} over the trace-dual basis, ordered by
// h. Throws std::logic_error if some y + 1, y + theta or y + theta + 1 lands in the set.
const std::vector<FieldElement>& index_set_J();
// A maximal 512-element set with y in H => y + theta not in H, built greedily in
// dual-coordinate order. Used only for Family D.
const std::vector<FieldElement>& index_set_H();

// beta = nu (1 + 2 theta)
gr4m::RingElement beta();

QuaternaryCode gen_quaternary(const CodeIndex& idx);

struct Components {
  BinaryCode qp;  // v = floor(Q / 2)
  BinaryCode ip;  // w = u xor v, u = Q mod 2
};
Components components(const QuaternaryCode& q);

// D (x in {0,1}, y in H), MFD2 (y in J) or IZ4_2 (QP list then IP list of MFD2).
FamilySet build_family(FamilyKind kind);

// Count of zeros minus count of ones.
int balance(const BinaryCode& c);
std::array<int, 4> quaternary_balance(const QuaternaryCode& q);

// Keep IZ4_2 codes with |balance| <= threshold, drop codes cyclically equivalent to
// an earlier one, keep order. Result kind is IZ4_2S.
FamilySet select_balanced_subset(const FamilySet& fam, int threshold = 2);

// Lexicographically least rotation start (Booth).
std::size_t least_rotation(const std::vector<std::uint8_t>& s);

std::string code_id(const QuaternaryCode& q);
std::string code_id(const BinaryCode& b);

}  // namespace z4codes
