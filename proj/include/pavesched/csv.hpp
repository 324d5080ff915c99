#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pavesched::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

/// RFC 4180-style reader: comma separated, optional double quotes with ""
/// escapes, LF or CRLF line ends. Blank lines are skipped. A leading UTF-8
/// byte-order mark is ignored.
std::vector<Row> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict full-field parses; throw ParseError (without row context).
double parse_double(std::string_view text);
int parse_int(std::string_view text);

}  // namespace pavesched::csv
