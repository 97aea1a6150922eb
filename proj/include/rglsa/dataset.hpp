#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rglsa {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Failure to read or write a file; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed dataset or manifest text; the message names the line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& detail, const std::string& source = {})
      : std::runtime_error((source.empty() ? "line " : source + ":") + std::to_string(line) + ": " +
                           detail),
        line_(line),
        detail_(detail) {}

  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// Key-value description of a run, enough to repeat it.
struct RunManifest {
  std::uint64_t seed = 0;
  std::string gamma_mode = "deterministic";
  std::size_t n = 0;
  std::size_t j = 0;
  std::string boost_variant = "none";
  std::string tool_version = std::string(kToolVersion);

  /// One `key=value` line per field, in a fixed order.
  std::string render() const;
  /// Inverse of render(). Throws ParseError on unknown, missing or
  /// malformed keys.
  static RunManifest parse(std::string_view text);

  bool operator==(const RunManifest&) const = default;
};

struct Column {
  std::string name;
  std::vector<double> values;

  bool operator==(const Column&) const = default;
};

/// Named equal-length numeric columns plus the metadata needed to rerun.
struct Dataset {
  std::string kind;
  std::deque<Column> columns;  // deque: add_column references stay valid
  RunManifest manifest;
  /// Ordered `key=value` echo of the generating configuration.
  std::vector<std::pair<std::string, std::string>> config;
  std::optional<std::string> timestamp;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().values.size(); }
  /// Throws std::out_of_range for an unknown name.
  const Column& column(std::string_view name) const;
  Column& add_column(std::string name);
  std::optional<std::string> config_value(std::string_view key) const;
  /// Throws std::logic_error when column lengths differ.
  void check_shape() const;

  bool operator==(const Dataset&) const = default;
};

/// Whitespace-delimited text with a `#` header; values at 17 significant
/// digits. Written to a temporary file then renamed into place.
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);
std::string render_dataset(const Dataset& dataset);

/// Throws IoError when the file cannot be opened and ParseError (with the
/// line number) when it is malformed.
Dataset read_dataset(const std::filesystem::path& path);
Dataset parse_dataset(std::string_view text);

}  // namespace rglsa
