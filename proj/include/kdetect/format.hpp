#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace kdetect {

// Fixed report formatting: '.' decimal point, 12 significant digits.
std::string format_number(double value);

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(std::string_view text);

// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace kdetect
