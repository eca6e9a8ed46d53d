#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gwdk/counting.hpp"

namespace gwdk::io {

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double value);

struct Column {
  std::string name;
  std::span<const double> values;
};

/// Header line of column names, then one comma-separated row per index.
void write_columns(std::ostream& out, const std::vector<Column>& columns);

/// "# seed=<u64> rate_hz=<f64> duration_s=<f64>" then one time per line.
void write_click_stream(std::ostream& out, const ClickStream& stream);
ClickStream read_click_stream(std::istream& in);

/// Writes bytes exactly as given, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace gwdk::io
