#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "gwdk/io/config.hpp"

namespace gwdk::io {

struct CommandResult {
  std::vector<std::filesystem::path> files;  ///< written under config.out_dir
  nlohmann::json summary;                    ///< printed on stdout by the CLI
};

/// Noise budget (interferometer) or position spectrum (bar) on the run grid,
/// plus a JSON sidecar with parameters, click rates and component integrals.
CommandResult cmd_spectrum(const RunConfig& config);

/// Source-referenced efficiency, optionally swept over distance.
CommandResult cmd_efficiency(const RunConfig& config);

/// The eight-row response table.
CommandResult cmd_table1(const RunConfig& config);

/// Seeded click stream at rate_product / 4, plus an optional dark stream.
CommandResult cmd_clicks(const RunConfig& config);

/// Graviton flux of the configured state (and source, when it is a binary).
CommandResult cmd_flux(const RunConfig& config);

}  // namespace gwdk::io
