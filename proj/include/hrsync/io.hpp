#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hrsync/errors.hpp"

namespace hrsync {

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

/// Strict decimal parse of the whole string; throws UsageError otherwise.
inline double parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw UsageError("not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

/// Comma-separated list of numbers, e.g. "0,0.5,1".
inline std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

/// Builds comma-separated text with LF line endings. Missing cells are empty.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::span<const std::string_view> header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) text_ += ',';
      text_ += header[i];
    }
    text_ += '\n';
  }

  CsvBuilder& cell(double value) { return raw(format_number(value)); }

  CsvBuilder& cell(const std::optional<double>& value) {
    return raw(value ? format_number(*value) : std::string());
  }

  CsvBuilder& raw(std::string_view text) {
    if (!row_start_) text_ += ',';
    text_ += text;
    row_start_ = false;
    return *this;
  }

  CsvBuilder& end_row() {
    text_ += '\n';
    row_start_ = true;
    return *this;
  }

  const std::string& str() const { return text_; }

 private:
  std::string text_;
  bool row_start_ = true;
};

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace hrsync
