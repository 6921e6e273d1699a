#include "symmix/csv.hpp"

#include "symmix/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace symmix {

namespace {

std::string_view trim(std::string_view s)
{
  constexpr std::string_view space = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(space);
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(space);
  return s.substr(first, last - first + 1);
}

std::string_view first_field(std::string_view line)
{
  if (line.find(',') != std::string_view::npos)
    return trim(line.substr(0, line.find(',')));
  line = trim(line);
  const auto end = line.find_first_of(" \t");
  return end == std::string_view::npos ? line : line.substr(0, end);
}

std::optional<double> parse_double(std::string_view field)
{
  if (!field.empty() && field.front() == '+')
    field.remove_prefix(1);
  if (field.size() >= 2 && field.front() == '"' && field.back() == '"')
    field = field.substr(1, field.size() - 2);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
    return std::nullopt;
  return value;
}

} // namespace

std::vector<double> parse_numeric_column(std::string_view text, std::string_view source)
{
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size())
        lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty())
    lines.pop_back();

  auto fail = [&](std::size_t line_no, const std::string& what) {
    throw Error(ErrorCode::bad_input,
                std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };

  std::vector<double> values;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty())
      fail(line_no, "blank line inside the data");
    const std::string_view field = first_field(lines[i]);
    if (field.empty())
      fail(line_no, "empty numeric field");
    const auto value = parse_double(field);
    if (!value) {
      if (i == 0)
        continue; // header
      fail(line_no, "not a number: '" + std::string(field) + "'");
    }
    if (!std::isfinite(*value))
      fail(line_no, "non-finite value '" + std::string(field) + "'");
    values.push_back(*value);
  }
  if (values.empty())
    throw Error(ErrorCode::bad_input, std::string(source) + ": no numeric data");
  return values;
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::bad_input, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<double> read_numeric_column(const std::string& path)
{
  return parse_numeric_column(read_file(path), path);
}

} // namespace symmix
