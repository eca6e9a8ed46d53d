#include "gwdk/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gwdk/error.hpp"

namespace gwdk::io {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_columns(std::ostream& out, const std::vector<Column>& columns) {
  if (columns.empty()) return;
  const std::size_t rows = columns.front().values.size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require(columns[c].values.size() == rows, "CSV columns differ in length");
    out << (c ? "," : "") << columns[c].name;
  }
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << format_double(columns[c].values[r]);
    }
    out << '\n';
  }
}

void write_click_stream(std::ostream& out, const ClickStream& stream) {
  out << "# seed=" << stream.seed << " rate_hz=" << format_double(stream.rate)
      << " duration_s=" << format_double(stream.duration) << '\n';
  for (double t : stream.times) out << format_double(t) << '\n';
}

ClickStream read_click_stream(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# seed=", 0) != 0) {
    throw Error("io", "click stream header is missing");
  }
  ClickStream s{};
  std::istringstream h(header.substr(2));
  std::string field;
  int seen = 0;
  while (h >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "seed") s.seed = std::stoull(value), ++seen;
    if (key == "rate_hz") s.rate = std::stod(value), ++seen;
    if (key == "duration_s") s.duration = std::stod(value), ++seen;
  }
  if (seen != 3) throw Error("io", "click stream header is incomplete");
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) s.times.push_back(std::stod(line));
  }
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io", "cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw Error("io", "failed writing '" + path.string() + "'");
}

}  // namespace gwdk::io
