#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace tweetpol {

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Bit-exact hexadecimal float text ("0x1.8p+1", "-0x0p+0", "inf", "nan").
std::string to_hex_float(double value);
/// Throws InvalidArgument on malformed text.
double from_hex_float(std::string_view text);

}  // namespace tweetpol
