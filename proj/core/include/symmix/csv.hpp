#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace symmix {

//! Reads the first column of a numeric table. Fields are split on commas when
//! the line has one, otherwise on whitespace. A non-numeric first line is
//! taken as a header. Blank lines are allowed only at the end of the input.
//! Errors are BadInput and name the offending line of `source`.
std::vector<double> parse_numeric_column(std::string_view text, std::string_view source = "<input>");

std::vector<double> read_numeric_column(const std::string& path);

std::string read_file(const std::string& path);

} // namespace symmix
