#include "gwdk/io/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "gwdk/constants.hpp"
#include "gwdk/error.hpp"
#include "gwdk/io/toml_subset.hpp"

#ifndef GWDK_DEFAULT_PRESET_DIR
#define GWDK_DEFAULT_PRESET_DIR ""
#endif

namespace gwdk::io {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void config_error(const std::string& message) { throw Error("config", message); }

struct Suffix {
  std::string_view text;
  double factor;
};

constexpr Suffix kRate[] = {{"_rad_s", 1.0}, {"_hz", units::two_pi}};
constexpr Suffix kLength[] = {{"_m", 1.0}, {"_km", 1e3}};
constexpr Suffix kDistance[] = {{"_m", 1.0}, {"_mpc", units::megaparsec_m}};
constexpr Suffix kMass[] = {{"_kg", 1.0}, {"_msun", units::solar_mass_kg}};
constexpr Suffix kPower[] = {{"_w", 1.0}};
constexpr Suffix kSpeed[] = {{"_m_s", 1.0}};
constexpr Suffix kTime[] = {{"_s", 1.0}};
constexpr Suffix kCountRate[] = {{"_per_s", 1.0}, {"_hz", 1.0}};
constexpr Suffix kAngle[] = {{"_rad", 1.0}, {"_deg", units::pi / 180.0}};

// Reads keys out of one JSON object and rejects whatever is left over.
class Fields {
 public:
  Fields(const json& obj, std::string what) : obj_(obj), what_(std::move(what)) {
    if (!obj_.is_object()) config_error(what_ + " must be an object");
  }

  template <std::size_t N>
  std::optional<double> quantity_opt(std::string_view base, const Suffix (&suffixes)[N]) {
    std::optional<double> out;
    for (const auto& s : suffixes) {
      const std::string key = std::string(base) + std::string(s.text);
      if (!obj_.contains(key)) continue;
      if (out) config_error(what_ + ": '" + std::string(base) + "' is given in two units");
      out = as_number(key) * s.factor;
    }
    return out;
  }

  template <std::size_t N>
  double quantity(std::string_view base, const Suffix (&suffixes)[N]) {
    auto v = quantity_opt(base, suffixes);
    if (!v) {
      config_error(what_ + ": missing '" + std::string(base) + std::string(suffixes[0].text) +
                   "' (or another unit suffix)");
    }
    return *v;
  }

  template <std::size_t N>
  std::optional<std::vector<double>> quantity_list_opt(std::string_view base,
                                                       const Suffix (&suffixes)[N]) {
    std::optional<std::vector<double>> out;
    for (const auto& s : suffixes) {
      const std::string key = std::string(base) + std::string(s.text);
      if (!obj_.contains(key)) continue;
      if (out) config_error(what_ + ": '" + std::string(base) + "' is given in two units");
      used_.insert(key);
      const json& arr = obj_.at(key);
      if (!arr.is_array()) config_error(what_ + ": '" + key + "' must be an array");
      std::vector<double> values;
      for (const auto& v : arr) {
        if (!v.is_number()) config_error(what_ + ": '" + key + "' must hold numbers");
        values.push_back(v.get<double>() * s.factor);
      }
      out = std::move(values);
    }
    return out;
  }

  std::optional<double> number_opt(const std::string& key) {
    if (!obj_.contains(key)) return std::nullopt;
    return as_number(key);
  }

  double number(const std::string& key) {
    auto v = number_opt(key);
    if (!v) config_error(what_ + ": missing '" + key + "'");
    return *v;
  }

  std::optional<std::uint64_t> count_opt(const std::string& key) {
    if (!obj_.contains(key)) return std::nullopt;
    used_.insert(key);
    const json& v = obj_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      config_error(what_ + ": '" + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::optional<std::string> string_opt(const std::string& key) {
    if (!obj_.contains(key)) return std::nullopt;
    used_.insert(key);
    if (!obj_.at(key).is_string()) config_error(what_ + ": '" + key + "' must be a string");
    return obj_.at(key).get<std::string>();
  }

  const json* child(const std::string& key) {
    if (!obj_.contains(key)) return nullptr;
    used_.insert(key);
    return &obj_.at(key);
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!used_.count(key)) config_error(what_ + ": unknown key '" + key + "'");
    }
  }

 private:
  double as_number(const std::string& key) {
    used_.insert(key);
    const json& v = obj_.at(key);
    if (!v.is_number()) config_error(what_ + ": '" + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) config_error(what_ + ": '" + key + "' must be finite");
    return d;
  }

  const json& obj_;
  std::string what_;
  std::set<std::string> used_;
};

json read_document(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    if (path.extension() == ".toml") return parse_toml(text);
    return json::parse(text);
  } catch (const json::exception& e) {
    config_error("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

// Key with its unit suffix removed, or empty when it has none.
std::string unit_base(const std::string& key) {
  static constexpr std::string_view kSuffixes[] = {"_rad_s", "_per_s", "_m_s", "_msun", "_mpc",
                                                   "_deg",   "_rad",   "_hz",  "_km",   "_kg",
                                                   "_m",     "_w",     "_s"};
  for (auto suffix : kSuffixes) {
    if (key.size() > suffix.size() && key.ends_with(suffix)) {
      return key.substr(0, key.size() - suffix.size());
    }
  }
  return {};
}

// Expands {"preset": name, ...overrides} (or a bare name) into a full object.
// An override in a different unit replaces the preset's key for that quantity.
json expand_preset(const json& node, const fs::path& base_dir) {
  if (node.is_string()) return read_document(resolve_preset(node.get<std::string>(), base_dir));
  if (!node.is_object()) config_error("preset reference must be a string or an object");
  if (!node.contains("preset")) return node;
  const json& name = node.at("preset");
  if (!name.is_string()) config_error("'preset' must be a string");
  json merged = read_document(resolve_preset(name.get<std::string>(), base_dir));
  json overrides = node;
  overrides.erase("preset");
  for (const auto& [key, value] : overrides.items()) {
    const auto base = unit_base(key);
    if (base.empty()) continue;
    for (auto it = merged.begin(); it != merged.end();) {
      if (it.key() != key && unit_base(it.key()) == base) {
        it = merged.erase(it);
      } else {
        ++it;
      }
    }
  }
  merged.merge_patch(overrides);
  return merged;
}

std::size_t points(Fields& f) {
  auto n = f.count_opt("points_per_side");
  if (!n) config_error("grid: missing 'points_per_side'");
  return static_cast<std::size_t>(*n);
}

GridSpec parse_grid(const json& node) {
  Fields f(node, "grid");
  GridSpec g;
  g.kind = f.string_opt("kind").value_or("");
  if (g.kind == "uniform") {
    g.max = f.quantity("max", kRate);
  } else if (g.kind == "band" || g.kind == "lorentzian") {
    g.center = f.quantity("center", kRate);
    g.half_width = f.quantity("half_width", kRate);
  } else if (g.kind == "log") {
    g.min = f.quantity("min", kRate);
    g.max = f.quantity("max", kRate);
  } else {
    config_error("grid: 'kind' must be one of uniform, band, lorentzian, log");
  }
  g.points_per_side = points(f);
  f.finish();
  g.build();  // validate eagerly
  return g;
}

json grid_to_json(const GridSpec& g) {
  json out{{"kind", g.kind}, {"points_per_side", g.points_per_side}};
  if (g.kind == "uniform") {
    out["max_rad_s"] = g.max;
  } else if (g.kind == "log") {
    out["min_rad_s"] = g.min;
    out["max_rad_s"] = g.max;
  } else {
    out["center_rad_s"] = g.center;
    out["half_width_rad_s"] = g.half_width;
  }
  return out;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  config_error("format must be 'csv' or 'json', got '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

FrequencyGrid GridSpec::build() const {
  try {
    if (kind == "uniform") return FrequencyGrid::symmetric_uniform(max, points_per_side);
    if (kind == "band") return FrequencyGrid::symmetric_band(center, half_width, points_per_side);
    if (kind == "lorentzian") {
      return FrequencyGrid::symmetric_lorentzian(center, half_width, points_per_side);
    }
    if (kind == "log") {
      require(min > 0.0 && max > min, "log grid needs 0 < min < max");
      require(points_per_side >= 2, "log grid needs at least two points per side");
      std::vector<double> w(2 * points_per_side);
      const double ratio = std::log(max / min) / static_cast<double>(points_per_side - 1);
      for (std::size_t i = 0; i < points_per_side; ++i) {
        const double v = min * std::exp(ratio * static_cast<double>(i));
        w[points_per_side + i] = v;
        w[points_per_side - 1 - i] = -v;
      }
      return FrequencyGrid::from_points(std::move(w));
    }
  } catch (const PreconditionError& e) {
    config_error(std::string("grid: ") + e.what());
  }
  config_error("grid: unknown kind '" + kind + "'");
}

SourceGeom SourceConfig::geom(double carrier) const {
  return SourceGeom{distance, antenna_factor, carrier, strain_amplitude};
}

fs::path resolve_preset(std::string_view name, const fs::path& base_dir) {
  const std::string n(name);
  if (n.find('/') != std::string::npos || fs::path(n).extension() == ".json" ||
      fs::path(n).extension() == ".toml") {
    fs::path p(n);
    if (p.is_relative()) p = base_dir / p;
    if (!fs::exists(p)) throw Error("io", "preset file '" + p.string() + "' not found");
    return p;
  }
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("GWDK_PRESET_DIR"); env && *env) dirs.emplace_back(env);
  dirs.push_back(base_dir);
  dirs.push_back(base_dir / "presets");
  if (*GWDK_DEFAULT_PRESET_DIR) dirs.emplace_back(GWDK_DEFAULT_PRESET_DIR);
  for (const auto& d : dirs) {
    const fs::path candidate = d / (n + ".json");
    if (fs::exists(candidate)) return candidate;
  }
  throw Error("config", "preset '" + n + "' not found");
}

DetectorConfig parse_detector(const json& node, const fs::path& base_dir) {
  const json doc = expand_preset(node, base_dir);
  Fields f(doc, "detector");
  const std::string type = f.string_opt("type").value_or("");
  DetectorConfig out;
  out.name = f.string_opt("name").value_or(type);
  try {
    if (type == "interferometer") {
      const double kappa = f.quantity("kappa", kRate);
      const double omega_opt = f.quantity("optical_frequency", kRate);
      const double length = f.quantity("arm_length", kLength);
      const double mass = f.quantity("mass", kMass);
      const double omega_m = f.quantity("suspension_frequency", kRate);
      const double gamma_m = f.quantity("suspension_damping", kRate);
      const auto power = f.quantity_opt("cavity_power", kPower);
      const auto alpha_sq = f.number_opt("alpha_sq");
      const double detuning = f.quantity_opt("detuning", kRate).value_or(0.0);
      out.params = IfoParams::make(kappa, omega_opt, length, mass, omega_m, gamma_m, power,
                                   alpha_sq, detuning);
      out.ifo_noise = IfoInputNoise::thermal(f.number_opt("suspension_occupancy").value_or(0.0));
      if (const json* n = f.child("input_noise")) {
        Fields nf(*n, "detector.input_noise");
        out.ifo_noise.s1_in = nf.number_opt("s1_in").value_or(out.ifo_noise.s1_in);
        out.ifo_noise.s2_in = nf.number_opt("s2_in").value_or(out.ifo_noise.s2_in);
        out.ifo_noise.s_qq = nf.number_opt("s_qq").value_or(out.ifo_noise.s_qq);
        out.ifo_noise.s_pp = nf.number_opt("s_pp").value_or(out.ifo_noise.s_pp);
        nf.finish();
        require(out.ifo_noise.s1_in >= 0 && out.ifo_noise.s2_in >= 0 &&
                    out.ifo_noise.s_qq >= 0 && out.ifo_noise.s_pp >= 0,
                "input noise spectra must be non-negative");
      }
    } else if (type == "bar") {
      const double mass = f.quantity("mass", kMass);
      const double length = f.quantity("length", kLength);
      const auto sound_speed = f.quantity_opt("sound_speed", kSpeed);
      const auto omega_m = f.quantity_opt("mode_frequency", kRate);
      const double gamma_m = f.quantity("damping", kRate);
      const double g = f.quantity("coupling", kRate);
      const double kappa = f.quantity("readout_kappa", kRate);
      const double occupancy = f.number_opt("occupancy").value_or(0.0);
      const auto mode = f.count_opt("mode").value_or(0);
      out.params = BarParams::make(mass, length, sound_speed, omega_m, gamma_m, g, kappa,
                                   occupancy, static_cast<int>(mode));
    } else {
      config_error("detector: 'type' must be 'interferometer' or 'bar'");
    }
  } catch (const PreconditionError& e) {
    config_error(std::string("detector: ") + e.what());
  }
  f.finish();
  return out;
}

SourceConfig parse_source(const json& node, const fs::path& base_dir) {
  const json doc = expand_preset(node, base_dir);
  Fields f(doc, "source");
  SourceConfig out;
  out.name = f.string_opt("name").value_or("source");
  out.distance = f.quantity("distance", kDistance);
  out.antenna_factor = f.number_opt("antenna_factor").value_or(1.0);
  out.strain_amplitude = f.number_opt("strain_amplitude").value_or(0.0);
  if (auto list = f.quantity_list_opt("carriers", kRate)) out.carriers = *list;
  if (auto one = f.quantity_opt("carrier", kRate)) out.carriers.insert(out.carriers.begin(), *one);
  if (const json* b = f.child("binary")) {
    Fields bf(*b, "source.binary");
    if (out.carriers.empty()) config_error("source.binary needs a carrier frequency");
    BinarySource bin{bf.quantity("reduced_mass", kMass), bf.quantity("orbital_radius", kLength),
                     out.carriers.front(), out.distance,
                     bf.quantity_opt("inclination", kAngle).value_or(0.0)};
    bf.finish();
    out.binary = bin;
  }
  f.finish();
  try {
    out.geom(out.carriers.empty() ? 1.0 : out.carriers.front()).validate();
    for (double c : out.carriers) require(c > 0.0, "source carriers must be positive");
    if (out.binary) out.binary->validate();
  } catch (const PreconditionError& e) {
    config_error(std::string("source: ") + e.what());
  }
  return out;
}

RunConfig parse_config(const json& doc, const fs::path& base_dir) {
  Fields f(doc, "config");
  RunConfig cfg;
  if (const json* d = f.child("detector")) cfg.detector = parse_detector(*d, base_dir);
  if (const json* s = f.child("source")) cfg.source = parse_source(*s, base_dir);
  cfg.carrier = f.quantity_opt("carrier", kRate);
  if (cfg.carrier && !(*cfg.carrier > 0.0)) config_error("carrier must be positive");
  if (const json* s = f.child("state")) cfg.state = *s;
  if (const json* g = f.child("grid")) cfg.grid = parse_grid(*g);
  cfg.seed = f.count_opt("seed").value_or(0);
  if (const json* c = f.child("clicks")) {
    Fields cf(*c, "clicks");
    cfg.clicks.duration = cf.quantity_opt("duration", kTime).value_or(cfg.clicks.duration);
    cfg.clicks.dark_rate = cf.quantity_opt("dark_rate", kCountRate).value_or(0.0);
    cf.finish();
    if (!(cfg.clicks.duration > 0.0)) config_error("clicks: duration must be positive");
    if (!(cfg.clicks.dark_rate >= 0.0)) config_error("clicks: dark rate must be >= 0");
  }
  if (const json* e = f.child("efficiency")) {
    Fields ef(*e, "efficiency");
    if (auto list = ef.quantity_list_opt("sweep_distance", kDistance)) cfg.sweep_distances = *list;
    ef.finish();
    for (double r : cfg.sweep_distances) {
      if (!(r > 0.0)) config_error("efficiency: sweep distances must be positive");
    }
  }
  if (const json* t = f.child("table1")) {
    Fields tf(*t, "table1");
    Table1Config tc{parse_detector(tf.child("ifo") ? *tf.child("ifo") : json("aligo-like"),
                                   base_dir),
                    parse_detector(tf.child("bar") ? *tf.child("bar") : json("niobe-like"),
                                   base_dir)};
    tc.coherent_amplitude = tf.number_opt("coherent_amplitude").value_or(tc.coherent_amplitude);
    tc.fock_n = tf.count_opt("fock_n").value_or(tc.fock_n);
    tc.bin_width = tf.quantity_opt("bin_width", kRate).value_or(tc.bin_width);
    tf.finish();
    if (!tc.ifo.is_ifo() || tc.bar.is_ifo()) {
      config_error("table1: 'ifo' must be an interferometer and 'bar' a bar");
    }
    if (!(tc.coherent_amplitude >= 0.0) || !(tc.bin_width > 0.0)) {
      config_error("table1: need coherent_amplitude >= 0 and bin_width > 0");
    }
    cfg.table1 = tc;
  }
  if (const json* o = f.child("output")) {
    Fields of(*o, "output");
    cfg.out_dir = of.string_opt("dir").value_or(cfg.out_dir);
    if (auto fmt = of.string_opt("format")) cfg.format = parse_format(*fmt);
    of.finish();
  }
  f.finish();
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  return parse_config(read_document(path), path.parent_path().empty() ? fs::path(".")
                                                                       : path.parent_path());
}

json to_json(const DetectorConfig& d) {
  if (d.is_ifo()) {
    const auto& p = d.ifo();
    return {{"type", "interferometer"},
            {"name", d.name},
            {"kappa_rad_s", p.kappa},
            {"optical_frequency_rad_s", p.omega_opt},
            {"arm_length_m", p.length},
            {"mass_kg", p.mass},
            {"suspension_frequency_rad_s", p.omega_m},
            {"suspension_damping_rad_s", p.gamma_m},
            {"alpha_sq", p.alpha_sq},
            {"detuning_rad_s", p.detuning},
            {"input_noise",
             {{"s1_in", d.ifo_noise.s1_in},
              {"s2_in", d.ifo_noise.s2_in},
              {"s_qq", d.ifo_noise.s_qq},
              {"s_pp", d.ifo_noise.s_pp}}}};
  }
  const auto& p = d.bar();
  return {{"type", "bar"},
          {"name", d.name},
          {"mass_kg", p.mass},
          {"length_m", p.length},
          {"mode_frequency_rad_s", p.omega_m},
          {"damping_rad_s", p.gamma_m},
          {"coupling_rad_s", p.g},
          {"readout_kappa_rad_s", p.kappa},
          {"occupancy", p.thermal_occupancy},
          {"mode", p.mode}};
}

json to_json(const SourceConfig& s) {
  json out{{"name", s.name},
           {"distance_m", s.distance},
           {"antenna_factor", s.antenna_factor},
           {"strain_amplitude", s.strain_amplitude},
           {"carriers_rad_s", s.carriers}};
  if (s.binary) {
    out["binary"] = {{"reduced_mass_kg", s.binary->reduced_mass},
                     {"orbital_radius_m", s.binary->orbital_radius},
                     {"inclination_rad", s.binary->inclination}};
  }
  return out;
}

json to_json(const RunConfig& c) {
  json out = json::object();
  if (c.detector) out["detector"] = to_json(*c.detector);
  if (c.source) out["source"] = to_json(*c.source);
  if (c.carrier) out["carrier_rad_s"] = *c.carrier;
  if (!c.state.is_null()) out["state"] = c.state;
  if (c.grid) out["grid"] = grid_to_json(*c.grid);
  out["seed"] = c.seed;
  out["clicks"] = {{"duration_s", c.clicks.duration}, {"dark_rate_per_s", c.clicks.dark_rate}};
  if (!c.sweep_distances.empty()) out["efficiency"] = {{"sweep_distance_m", c.sweep_distances}};
  if (c.table1) {
    out["table1"] = {{"ifo", to_json(c.table1->ifo)},
                     {"bar", to_json(c.table1->bar)},
                     {"coherent_amplitude", c.table1->coherent_amplitude},
                     {"fock_n", c.table1->fock_n},
                     {"bin_width_rad_s", c.table1->bin_width}};
  }
  out["output"] = {{"dir", c.out_dir}, {"format", std::string(to_string(c.format))}};
  return out;
}

double run_carrier(const RunConfig& c) {
  if (c.carrier) return *c.carrier;
  const bool bar = c.detector && !c.detector->is_ifo();
  if (c.source && !c.source->carriers.empty()) {
    const auto& list = c.source->carriers;
    if (!bar) return list.front();
    const double wm = c.detector->bar().omega_m;
    double best = list.front();
    for (double w : list) {
      if (std::abs(w - wm) < std::abs(best - wm)) best = w;
    }
    return best;
  }
  if (bar) return c.detector->bar().omega_m;
  config_error("no carrier frequency: set 'carrier_hz' or give the source a carrier");
}

FrequencyGrid run_grid(const RunConfig& c) {
  if (c.grid) return c.grid->build();
  if (c.detector && !c.detector->is_ifo()) {
    const auto& b = c.detector->bar();
    return FrequencyGrid::symmetric_lorentzian(b.omega_m, 0.5 * b.gamma_m, 4001);
  }
  GridSpec g{"log", 0.0, 0.0, units::two_pi * 1.0, units::two_pi * 1.0e4, 400};
  return g.build();
}

}  // namespace gwdk::io
