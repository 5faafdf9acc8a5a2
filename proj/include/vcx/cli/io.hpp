#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "vcx/family.hpp"

namespace vcx::cli {

/// Parses the .fam text format: a "n k" header line, then one member per
/// line as k strictly increasing integers in [1..n]. Blank lines and lines
/// starting with '#' are skipped. Errors are UsageError("source:line: ...").
UniformFamily parse_family(std::string_view text, std::string_view source = "<input>");

UniformFamily load_family(const std::filesystem::path& path);

/// Canonical text form: header plus members in colex order.
std::string format_family(const UniformFamily& fam);

void save_family(const std::filesystem::path& path, const UniformFamily& fam);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);

/// 16 lowercase hex digits.
std::string hex64(std::uint64_t value);

}  // namespace vcx::cli
