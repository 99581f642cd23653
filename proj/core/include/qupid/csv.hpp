#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qupid {

/// Shortest round-trip decimal form of a double. All file output goes through
/// this so that identical values always serialize to identical bytes.
std::string format_double(double value);

/// Split one CSV line on commas. No quoting: none of the project formats
/// ever contain embedded commas.
std::vector<std::string> split_csv_line(const std::string& line);

std::vector<std::string> read_lines(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

double parse_double(const std::string& token);

}  // namespace qupid
