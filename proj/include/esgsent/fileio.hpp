#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace esg {

/// Reads a whole file. Throws IoError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `content` to a sibling temp file and renames it over `path`.
/// Parent directories are created.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Formats with 6 decimals; never emits "-0.000000".
std::string fixed6(double value);

/// Shortest decimal text that parses back to the same double.
std::string shortest(double value);

}  // namespace esg
