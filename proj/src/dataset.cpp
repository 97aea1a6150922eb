#include "rglsa/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace rglsa {

namespace {

constexpr std::string_view kMagic = "# rglsa dataset";
constexpr std::string_view kManifestPrefix = "# manifest: ";
constexpr std::string_view kConfigPrefix = "# config: ";
constexpr std::string_view kKindPrefix = "# kind: ";
constexpr std::string_view kTimestampPrefix = "# timestamp: ";
constexpr std::string_view kColumnsPrefix = "# columns:";

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::pair<std::string, std::string> split_kv(std::string_view entry, std::size_t line_no) {
  const auto eq = entry.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ParseError(line_no, "expected key=value, got '" + std::string(entry) + "'");
  }
  return {std::string(entry.substr(0, eq)), std::string(entry.substr(eq + 1))};
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line_no, std::string_view key) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line_no, "bad integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::size_t line_no) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError(line_no, "bad number '" + s + "'");
  }
  return v;
}

constexpr std::string_view kManifestKeys[] = {"seed", "gamma_mode", "n", "j", "boost_variant",
                                              "tool_version"};

void assign_manifest_key(RunManifest& m, const std::string& key, const std::string& value,
                         std::size_t line_no) {
  if (key == "seed") {
    m.seed = parse_int<std::uint64_t>(value, line_no, key);
  } else if (key == "gamma_mode") {
    m.gamma_mode = value;
  } else if (key == "n") {
    m.n = parse_int<std::size_t>(value, line_no, key);
  } else if (key == "j") {
    m.j = parse_int<std::size_t>(value, line_no, key);
  } else if (key == "boost_variant") {
    m.boost_variant = value;
  } else if (key == "tool_version") {
    m.tool_version = value;
  } else {
    throw ParseError(line_no, "unknown manifest key '" + key + "'");
  }
}

bool is_ws_line(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; });
}

}  // namespace

std::string RunManifest::render() const {
  std::ostringstream os;
  os << "seed=" << seed << '\n'
     << "gamma_mode=" << gamma_mode << '\n'
     << "n=" << n << '\n'
     << "j=" << j << '\n'
     << "boost_variant=" << boost_variant << '\n'
     << "tool_version=" << tool_version << '\n';
  return os.str();
}

RunManifest RunManifest::parse(std::string_view text) {
  RunManifest m;
  std::map<std::string, bool> seen;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (is_ws_line(line)) continue;
    auto [key, value] = split_kv(line, line_no);
    if (seen[key]) throw ParseError(line_no, "duplicate manifest key '" + key + "'");
    seen[key] = true;
    assign_manifest_key(m, key, value, line_no);
  }
  for (std::string_view key : kManifestKeys) {
    if (!seen[std::string(key)]) {
      throw ParseError(line_no, "manifest is missing '" + std::string(key) + "'");
    }
  }
  return m;
}

const Column& Dataset::column(std::string_view name) const {
  for (const Column& c : columns) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("dataset has no column '" + std::string(name) + "'");
}

Column& Dataset::add_column(std::string name) {
  columns.push_back(Column{std::move(name), {}});
  return columns.back();
}

std::optional<std::string> Dataset::config_value(std::string_view key) const {
  for (const auto& [k, v] : config) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void Dataset::check_shape() const {
  for (const Column& c : columns) {
    if (c.values.size() != rows()) {
      throw std::logic_error("dataset column '" + c.name + "' has " +
                             std::to_string(c.values.size()) + " rows, expected " +
                             std::to_string(rows()));
    }
    if (c.name.empty() || c.name.find_first_of(" \t\n") != std::string::npos) {
      throw std::logic_error("dataset column names must be non-empty single words");
    }
  }
}

std::string render_dataset(const Dataset& d) {
  d.check_shape();
  std::ostringstream os;
  os << kMagic << '\n';
  os << kKindPrefix << d.kind << '\n';
  const std::string manifest = d.manifest.render();
  for (std::string_view line : split_lines(manifest)) os << kManifestPrefix << line << '\n';
  for (const auto& [k, v] : d.config) os << kConfigPrefix << k << '=' << v << '\n';
  if (d.timestamp) os << kTimestampPrefix << *d.timestamp << '\n';
  os << kColumnsPrefix;
  for (const Column& c : d.columns) os << ' ' << c.name;
  os << '\n';
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.columns.size(); ++c) {
      if (c) os << ' ';
      os << format_value(d.columns[c].values[r]);
    }
    os << '\n';
  }
  return os.str();
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  const std::string text = render_dataset(dataset);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move dataset into place at '" + path.string() + "'");
  }
}

Dataset parse_dataset(std::string_view text) {
  Dataset d;
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != kMagic) {
    throw ParseError(1, "missing '" + std::string(kMagic) + "' header");
  }

  std::string manifest_text;
  bool have_columns = false;
  bool have_kind = false;
  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const std::size_t line_no = idx + 1;
    const std::string_view line = lines[idx];
    if (is_ws_line(line)) continue;
    if (line.front() == '#') {
      if (have_columns) throw ParseError(line_no, "header line after the column list");
      if (line.starts_with(kKindPrefix)) {
        d.kind = std::string(line.substr(kKindPrefix.size()));
        have_kind = true;
      } else if (line.starts_with(kManifestPrefix)) {
        const auto entry = line.substr(kManifestPrefix.size());
        auto [key, value] = split_kv(entry, line_no);
        RunManifest scratch;
        assign_manifest_key(scratch, key, value, line_no);
        manifest_text.append(entry).push_back('\n');
      } else if (line.starts_with(kConfigPrefix)) {
        d.config.push_back(split_kv(line.substr(kConfigPrefix.size()), line_no));
      } else if (line.starts_with(kTimestampPrefix)) {
        d.timestamp = std::string(line.substr(kTimestampPrefix.size()));
      } else if (line.starts_with(kColumnsPrefix)) {
        for (std::string_view name : split_ws(line.substr(kColumnsPrefix.size()))) {
          d.add_column(std::string(name));
        }
        if (d.columns.empty()) throw ParseError(line_no, "column list is empty");
        have_columns = true;
      } else {
        throw ParseError(line_no, "unrecognised header line");
      }
      continue;
    }
    if (!have_columns) throw ParseError(line_no, "data row before the column list");
    const auto fields = split_ws(line);
    if (fields.size() != d.columns.size()) {
      throw ParseError(line_no, "expected " + std::to_string(d.columns.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      d.columns[c].values.push_back(parse_double(fields[c], line_no));
    }
  }
  if (!have_kind) throw ParseError(lines.size(), "missing kind line");
  if (!have_columns) throw ParseError(lines.size(), "missing column list");
  try {
    d.manifest = RunManifest::parse(manifest_text);
  } catch (const ParseError& e) {
    throw ParseError(lines.size(), "manifest: " + e.detail());
  }
  return d;
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_dataset(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

}  // namespace rglsa
