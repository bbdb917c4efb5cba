#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subconflict {

using AuthorId = std::uint32_t;
using SubId = std::uint32_t;

/// Comment counts split by vote polarity.
struct PolarityCounts {
  std::int64_t pos = 0;
  std::int64_t neg = 0;
  std::int64_t neu = 0;

  std::int64_t total() const { return pos + neg + neu; }
  bool empty() const { return total() == 0; }

  PolarityCounts& operator+=(const PolarityCounts& o) {
    pos += o.pos;
    neg += o.neg;
    neu += o.neu;
    return *this;
  }
  friend PolarityCounts operator+(PolarityCounts a, const PolarityCounts& b) { return a += b; }
  friend bool operator==(const PolarityCounts&, const PolarityCounts&) = default;
};

// Error taxonomy. The CLI maps each family onto its own exit code.

/// Invalid configuration value or usage.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or unreadable input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input stream that cannot be parsed further; carries the position of the fault.
class CorruptInputError : public InputError {
 public:
  CorruptInputError(const std::string& what, std::uint64_t byte_offset, std::uint64_t line_number)
      : InputError(what + " (line " + std::to_string(line_number) + ", byte offset " +
                   std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset),
        line_number_(line_number) {}

  std::uint64_t byte_offset() const { return byte_offset_; }
  std::uint64_t line_number() const { return line_number_; }

 private:
  std::uint64_t byte_offset_;
  std::uint64_t line_number_;
};

/// A pipeline stage needs an artifact that an earlier stage has not produced.
class MissingArtifactError : public InputError {
 public:
  MissingArtifactError(const std::string& artifact, const std::string& producer)
      : InputError("missing artifact '" + artifact + "'; run the '" + producer + "' subcommand first"),
        producer_(producer) {}

  const std::string& producer() const { return producer_; }

 private:
  std::string producer_;
};

/// Broken internal invariant.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define SUBCONFLICT_ASSERT(cond, msg)                                              \
  do {                                                                             \
    if (!(cond)) throw ::subconflict::InternalError(std::string("assertion failed: ") + (msg)); \
  } while (0)

/// Warnings go to stderr unless silenced (tests silence them).
void warn(std::string_view message);
void set_warnings_enabled(bool enabled);

}  // namespace subconflict
