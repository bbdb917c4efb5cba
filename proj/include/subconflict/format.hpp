#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>
#include <iosfwd>

namespace subconflict {

/// Shortest round-trip decimal form; infinities print as "inf" / "-inf".
std::string format_double(double value);
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

namespace csv {

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Minimal RFC 4180 reader. The first row is checked against the expected header.
class Reader {
 public:
  Reader(std::istream& in, std::string source_name);

  void expect_header(const std::vector<std::string>& header);
  bool next(std::vector<std::string>& row);
  std::uint64_t line() const { return line_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::uint64_t line_ = 0;
};

}  // namespace csv
}  // namespace subconflict
