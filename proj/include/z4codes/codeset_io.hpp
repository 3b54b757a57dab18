#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "z4codes/codegen.hpp"

// Line-oriented code-set files.
//
//   line 1:  JSON header (format, family, symbol_bits, length, count, m_alpha,
//            theta_log, index_set, ordering, engine, screening parameters)
//   line k:  "<id> <hex>" one code per line, MSB-first; quaternary symbols take
//            2 bits, binary chips 1 bit; the last nibble is zero padded.

namespace z4codes::io {

inline constexpr const char* kFormatVersion = "z4codes-codeset/1";

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string store(const FamilySet& fam, const std::string& engine = "algebraic");
void store_file(const std::filesystem::path& path, const FamilySet& fam, const std::string& engine = "algebraic");

// Throw FormatError on malformed input, std::runtime_error on I/O failure.
FamilySet load(std::istream& in);
FamilySet load_file(const std::filesystem::path& path);

std::string to_hex(const std::vector<std::uint8_t>& symbols, int bits_per_symbol);
std::vector<std::uint8_t> from_hex(const std::string& hex, std::size_t length, int bits_per_symbol);

}  // namespace z4codes::io
