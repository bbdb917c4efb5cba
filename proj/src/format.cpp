#include "subconflict/format.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "subconflict/common.hpp"

namespace subconflict {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  SUBCONFLICT_ASSERT(ec == std::errc(), "to_chars failed");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  if (text == "nan") return std::nan("");
  double v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw InputError("not a number: '" + std::string(text) + "'");
  return v;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw InputError("not an integer: '" + std::string(text) + "'");
  return v;
}

namespace csv {

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

Reader::Reader(std::istream& in, std::string source_name) : in_(in), source_(std::move(source_name)) {}

void Reader::expect_header(const std::vector<std::string>& header) {
  std::vector<std::string> row;
  if (!next(row)) throw InputError(source_ + ": empty file, expected header");
  if (row != header) throw InputError(source_ + ": unexpected header");
}

bool Reader::next(std::vector<std::string>& row) {
  row.clear();
  std::string line;
  if (!std::getline(in_, line)) return false;
  ++line_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  for (;;) {
    if (i >= line.size()) {
      if (!quoted) break;
      // quoted field spanning a line break
      std::string more;
      if (!std::getline(in_, more))
        throw InputError(source_ + ":" + std::to_string(line_) + ": unterminated quoted field");
      ++line_;
      field += '\n';
      line = std::move(more);
      i = 0;
      continue;
    }
    const char c = line[i++];
    if (quoted) {
      if (c == '"') {
        if (i < line.size() && line[i] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  row.push_back(std::move(field));
  return true;
}

}  // namespace csv
}  // namespace subconflict
