#include "z4codes/codeset_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace z4codes::io {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// "QP-1-037" style ids of generated binary codes; "Q-1-037" for quaternary ones.
bool parse_generated_id(const std::string& id, bool binary, CodeIndex& idx, Phase& phase) {
  char tag[4] = {};
  unsigned x = 0, h = 0;
  char tail = 0;
  if (std::sscanf(id.c_str(), "%3[A-Z]-%u-%u%c", tag, &x, &h, &tail) != 3) return false;
  const std::string t = tag;
  if (x > 1 || h > gf2m::kMask) return false;
  if (binary) {
    if (t != "QP" && t != "IP") return false;
    phase = t == "QP" ? Phase::QP : Phase::IP;
  } else if (t != "Q") {
    return false;
  }
  idx = CodeIndex{static_cast<std::uint8_t>(x), gf2m::from_dual_coords(static_cast<std::uint16_t>(h))};
  return true;
}

}  // namespace

std::string to_hex(const std::vector<std::uint8_t>& symbols, int bits_per_symbol) {
  static const char* digits = "0123456789abcdef";
  const std::size_t per_nibble = 4 / bits_per_symbol;
  std::string out((symbols.size() + per_nibble - 1) / per_nibble, '0');
  for (std::size_t t = 0; t < symbols.size(); ++t) {
    const std::size_t nib = t / per_nibble;
    const int shift = 4 - bits_per_symbol * static_cast<int>(t % per_nibble + 1);
    const int v = hex_value(out[nib]) | ((symbols[t] & ((1 << bits_per_symbol) - 1)) << shift);
    out[nib] = digits[v];
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex, std::size_t length, int bits_per_symbol) {
  const std::size_t per_nibble = 4 / bits_per_symbol;
  if (hex.size() != (length + per_nibble - 1) / per_nibble) {
    throw FormatError("hex field has " + std::to_string(hex.size()) + " digits, expected " +
                      std::to_string((length + per_nibble - 1) / per_nibble));
  }
  std::vector<std::uint8_t> out(length);
  for (std::size_t t = 0; t < length; ++t) {
    const int v = hex_value(hex[t / per_nibble]);
    if (v < 0) throw FormatError("invalid hex digit");
    const int shift = 4 - bits_per_symbol * static_cast<int>(t % per_nibble + 1);
    out[t] = static_cast<std::uint8_t>((v >> shift) & ((1 << bits_per_symbol) - 1));
  }
  return out;
}

std::string store(const FamilySet& fam, const std::string& engine) {
  const bool binary = fam.is_binary();
  const std::size_t length = binary ? (fam.binary.empty() ? 0 : fam.binary.front().bits.size())
                                    : (fam.quaternary.empty() ? 0 : fam.quaternary.front().symbols.size());
  nlohmann::ordered_json h;
  h["format"] = kFormatVersion;
  h["family"] = to_string(fam.kind);
  h["symbol_bits"] = binary ? 1 : 2;
  h["length"] = length;
  h["count"] = fam.size();
  h["m_alpha"] = fam.metadata.m_alpha;
  h["theta_log"] = fam.metadata.theta_log;
  h["index_set"] = fam.metadata.index_set;
  h["ordering"] = fam.metadata.ordering;
  h["balance_threshold"] = fam.metadata.balance_threshold;
  h["odd_screen_magnitude"] = fam.metadata.odd_screen_magnitude;
  h["engine"] = engine;
  std::ostringstream os;
  os << h.dump() << '\n';
  if (binary) {
    for (const auto& b : fam.binary) os << code_id(b) << ' ' << to_hex(b.bits, 1) << '\n';
  } else {
    for (const auto& q : fam.quaternary) os << code_id(q) << ' ' << to_hex(q.symbols, 2) << '\n';
  }
  return os.str();
}

void store_file(const std::filesystem::path& path, const FamilySet& fam, const std::string& engine) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << store(fam, engine);
  if (!out.flush()) throw std::runtime_error("write to " + path.string() + " failed");
}

FamilySet load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("missing header line");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("header is not valid JSON: ") + e.what());
  }
  FamilySet fam;
  std::size_t length = 0, count = 0;
  int bits = 0;
  try {
    if (h.at("format").get<std::string>() != kFormatVersion) throw FormatError("unsupported format version");
    fam.kind = parse_family_kind(h.at("family").get<std::string>());
    bits = h.at("symbol_bits").get<int>();
    length = h.at("length").get<std::size_t>();
    count = h.at("count").get<std::size_t>();
    fam.metadata.m_alpha = h.value("m_alpha", gf2m::kModulus);
    fam.metadata.theta_log = h.value("theta_log", 0);
    fam.metadata.index_set = h.value("index_set", std::string());
    fam.metadata.ordering = h.value("ordering", std::string());
    fam.metadata.balance_threshold = h.value("balance_threshold", -1);
    fam.metadata.odd_screen_magnitude = h.value("odd_screen_magnitude", -1);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad header field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  if (bits != (fam.is_binary() ? 1 : 2)) throw FormatError("symbol_bits does not match the family kind");

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw FormatError("line " + std::to_string(lineno) + ": expected '<id> <hex>'");
    const std::string id = line.substr(0, sp);
    const std::string hex = line.substr(sp + 1);
    CodeIndex idx;
    Phase phase = Phase::QP;
    const bool generated = parse_generated_id(id, fam.is_binary(), idx, phase);
    try {
      if (fam.is_binary()) {
        BinaryCode b{idx, phase, from_hex(hex, length, 1), generated ? std::string() : id};
        fam.binary.push_back(std::move(b));
      } else {
        if (!generated) throw FormatError("quaternary code id '" + id + "' is not in Q-x-h form");
        fam.quaternary.push_back(QuaternaryCode{idx, from_hex(hex, length, 2)});
      }
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (fam.size() != count) {
    throw FormatError("header count " + std::to_string(count) + " but " + std::to_string(fam.size()) + " codes read");
  }
  return fam;
}

FamilySet load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load(in);
}

}  // namespace z4codes::io
