#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace esg::csv {

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes. Throws SchemaError on an unterminated quote.
std::vector<std::string> split_line(std::string_view line);

/// Splits text into lines, dropping a trailing '\r' from each and the empty
/// tail after a final newline.
std::vector<std::string_view> lines(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace esg::csv
