#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qsense {

// Shortest round-trippable decimal with 9 significant digits (%.9g), the
// fixed width used in every CSV this toolkit writes.
std::string format_g9(double value);

// FNV-1a 64-bit, used for manifest checksums.
uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Writes to <path>.tmp-<pid> then renames, so readers never observe a
// partially written file.
void write_text_atomic(const std::string& path, std::string_view content);

std::string read_text(const std::string& path);

} // namespace qsense
