#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "z4codes/codeset_io.hpp"

using namespace z4codes;

namespace {

bool same(const FamilySet& a, const FamilySet& b) {
  if (a.kind != b.kind || a.size() != b.size()) return false;
  if (a.metadata.index_set != b.metadata.index_set || a.metadata.theta_log != b.metadata.theta_log ||
      a.metadata.balance_threshold != b.metadata.balance_threshold) {
    return false;
  }
  for (std::size_t k = 0; k < a.binary.size(); ++k) {
    const auto &x = a.binary[k], &y = b.binary[k];
    if (!(x.index == y.index) || x.phase != y.phase || x.bits != y.bits || x.id != y.id) return false;
  }
  for (std::size_t k = 0; k < a.quaternary.size(); ++k) {
    if (!(a.quaternary[k].index == b.quaternary[k].index) || a.quaternary[k].symbols != b.quaternary[k].symbols) return false;
  }
  return true;
}

FamilySet reload(const FamilySet& f) {
  std::istringstream in(io::store(f));
  return io::load(in);
}

FamilySet parse(const std::string& text) {
  std::istringstream in(text);
  return io::load(in);
}

}  // namespace

TEST_SUITE("codeset_io") {
  TEST_CASE("hex packing is MSB first with a padded last nibble") {
    CHECK(io::to_hex({1, 0, 1, 1, 0, 1}, 1) == "b4");
    CHECK(io::to_hex({3, 2, 1, 0, 1}, 2) == "e44");
    CHECK(io::from_hex("b4", 6, 1) == std::vector<std::uint8_t>{1, 0, 1, 1, 0, 1});
    CHECK(io::from_hex("E44", 5, 2) == std::vector<std::uint8_t>{3, 2, 1, 0, 1});
    CHECK_THROWS_AS(io::from_hex("b", 6, 1), io::FormatError);
    CHECK_THROWS_AS(io::from_hex("bz", 6, 1), io::FormatError);
  }

  TEST_CASE("round trips") {
    const FamilySet mfd2 = build_family(FamilyKind::MFD2);
    CHECK(same(reload(mfd2), mfd2));
    FamilySet iz4 = build_family(FamilyKind::IZ4_2);
    CHECK(same(reload(iz4), iz4));
    const FamilySet s = select_balanced_subset(iz4, 2);
    CHECK(same(reload(s), s));

    FamilySet ext;
    ext.kind = FamilyKind::External;
    BinaryCode pilot;
    pilot.id = "PILOT-001";
    pilot.bits.resize(10230);
    for (std::size_t t = 0; t < pilot.bits.size(); ++t) pilot.bits[t] = static_cast<std::uint8_t>((t * 7 + t / 3) % 2);
    ext.binary.push_back(pilot);
    CHECK(same(reload(ext), ext));
  }

  TEST_CASE("stored text is deterministic and line counts follow the family") {
    const FamilySet mfd2 = build_family(FamilyKind::MFD2);
    const std::string a = io::store(mfd2), b = io::store(build_family(FamilyKind::MFD2));
    CHECK(a == b);
    CHECK(std::count(a.begin(), a.end(), '\n') == 513);
    CHECK(a.find("\"format\":\"z4codes-codeset/1\"") != std::string::npos);
  }

  TEST_CASE("malformed input is rejected") {
    const std::string good = io::store(build_family(FamilyKind::MFD2));
    const std::string header = good.substr(0, good.find('\n'));
    CHECK_THROWS_AS(parse(""), io::FormatError);
    CHECK_THROWS_AS(parse("not json\n"), io::FormatError);
    std::string wrong_version = header;
    wrong_version.replace(wrong_version.find("codeset/1"), 9, "codeset/9");
    CHECK_THROWS_AS(parse(wrong_version + "\n"), io::FormatError);
    CHECK_THROWS_AS(parse(header + "\n"), io::FormatError);  // count mismatch
    CHECK_THROWS_AS(parse(header + "\nQ-0-000 00\n"), io::FormatError);
    CHECK_THROWS_AS(parse(header + "\nQ-0-000\n"), io::FormatError);
    CHECK_THROWS_AS(io::load_file("/nonexistent/codes.txt"), std::runtime_error);
  }
}
