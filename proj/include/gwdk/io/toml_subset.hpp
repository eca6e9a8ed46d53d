#pragma once

#include <string_view>

#include <json.hpp>

namespace gwdk::io {

/// Parses the TOML features used by run configs into JSON: [table] and
/// [a.b] headers, dotted and bare keys, basic and literal strings, integers,
/// floats, booleans, and (nested, multi-line) arrays. Inline tables, dates
/// and array-of-tables are rejected with a config error.
nlohmann::json parse_toml(std::string_view text);

}  // namespace gwdk::io
