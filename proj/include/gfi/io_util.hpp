#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace gfi {

// Shortest round-trip decimal form, locale-independent. Keeps every emitted
// artifact byte-stable across runs.
std::string format_double(double value);

// Writes via a temporary file in the same directory followed by a rename, so
// readers never observe a partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

}  // namespace gfi
