#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace rigspace::csv {

/// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted.
std::string escape(std::string_view field);

/// Joins escaped fields with commas (no trailing newline).
std::string join(const std::vector<std::string>& fields);

/// Reads one record, honouring quoted fields that span lines. Returns false
/// at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields);

}  // namespace rigspace::csv
