#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adscreen {

/// One parsed CSV record with its 1-based source line.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Comma-separated, unquoted, UTF-8 text with a header row. Trailing CR and a
/// leading byte-order mark are stripped; blank lines are skipped.
struct CsvDocument {
  std::vector<std::string> header;
  std::vector<CsvRecord> records;
};

/// Throws DataError if the file cannot be opened or has no header row.
CsvDocument read_csv(const std::filesystem::path& path);
CsvDocument parse_csv(std::istream& in, std::string_view source_name);

std::vector<std::string> split_fields(std::string_view line, char sep = ',');
std::string_view trim(std::string_view text) noexcept;

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

/// Fixed-point rendering for reports.
std::string format_fixed(double value, int decimals);

/// Strict full-token parse; nullopt on trailing junk or empty input.
/// Accepts anything std::from_chars does, including "nan" and "inf".
std::optional<double> parse_double(std::string_view token) noexcept;

/// Missing-value marker used in feature tables and reports.
inline constexpr std::string_view kMissingToken = "NA";

}  // namespace adscreen
