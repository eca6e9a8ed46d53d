#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gwdk/bar.hpp"
#include "gwdk/constants.hpp"
#include "gwdk/grid.hpp"
#include "gwdk/ifo.hpp"
#include "gwdk/source_model.hpp"

namespace gwdk::io {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat format);

/// Frequency grid recipe. All values are rad/s.
struct GridSpec {
  std::string kind;  ///< uniform | band | lorentzian | log
  double center = 0.0;
  double half_width = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t points_per_side = 0;

  FrequencyGrid build() const;
  bool operator==(const GridSpec&) const = default;
};

struct DetectorConfig {
  std::string name;
  std::variant<IfoParams, BarParams> params;
  IfoInputNoise ifo_noise;  ///< unused for bars

  bool is_ifo() const { return std::holds_alternative<IfoParams>(params); }
  const IfoParams& ifo() const { return std::get<IfoParams>(params); }
  const BarParams& bar() const { return std::get<BarParams>(params); }
  bool operator==(const DetectorConfig&) const = default;
};

struct SourceConfig {
  std::string name;
  double distance = 0.0;  ///< m
  double antenna_factor = 1.0;
  double strain_amplitude = 0.0;
  std::vector<double> carriers;  ///< rad/s
  std::optional<BinarySource> binary;

  double area() const { return area_factor(distance, antenna_factor); }
  SourceGeom geom(double carrier) const;
  bool operator==(const SourceConfig&) const = default;
};

struct ClicksConfig {
  double duration = 1.0;   ///< s
  double dark_rate = 0.0;  ///< 1/s, superposed when > 0
  bool operator==(const ClicksConfig&) const = default;
};

struct Table1Config {
  DetectorConfig ifo;
  DetectorConfig bar;
  double coherent_amplitude = 1.0e3;  ///< |a|
  std::uint64_t fock_n = 5;
  double bin_width = units::two_pi * 1e-3;  ///< rad/s
  bool operator==(const Table1Config&) const = default;
};

struct RunConfig {
  std::optional<DetectorConfig> detector;
  std::optional<SourceConfig> source;
  std::optional<double> carrier;  ///< rad/s override
  nlohmann::json state;           ///< null means vacuum
  std::optional<GridSpec> grid;
  std::uint64_t seed = 0;
  ClicksConfig clicks;
  std::vector<double> sweep_distances;  ///< m
  std::optional<Table1Config> table1;
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::csv;

  bool operator==(const RunConfig&) const = default;
};

/// Reads a .json or .toml run config; relative preset paths resolve against
/// the file's directory.
RunConfig load_config(const std::filesystem::path& path);

RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// Fully resolved, inline form (presets expanded, rad/s keys). Feeding it
/// back through parse_config reproduces the same RunConfig.
nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const DetectorConfig& detector);
nlohmann::json to_json(const SourceConfig& source);

DetectorConfig parse_detector(const nlohmann::json& node, const std::filesystem::path& base_dir);
SourceConfig parse_source(const nlohmann::json& node, const std::filesystem::path& base_dir);

/// Preset lookup order: $GWDK_PRESET_DIR, the config's directory, its
/// presets/ subdirectory, then the install-time preset directory. Names
/// containing '/' or ending in .json are treated as paths.
std::filesystem::path resolve_preset(std::string_view name, const std::filesystem::path& base_dir);

/// Carrier for this run: the explicit override, else the source carrier
/// (the first one for interferometers, the one nearest omega_m for bars),
/// else omega_m for a bar.
double run_carrier(const RunConfig& config);

/// The configured grid, or a detector-appropriate default.
FrequencyGrid run_grid(const RunConfig& config);

}  // namespace gwdk::io
