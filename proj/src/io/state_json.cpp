#include "gwdk/io/state_json.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "gwdk/constants.hpp"
#include "gwdk/error.hpp"

namespace gwdk::io {
namespace {

using nlohmann::json;

[[noreturn]] void state_error(const std::string& message) {
  throw Error("config", "state: " + message);
}

double number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    state_error(std::string("'") + key + "' must be a number");
  }
  return obj.at(key).get<double>();
}

std::optional<double> rate_opt(const json& obj, const std::string& base) {
  const bool hz = obj.contains(base + "_hz");
  const bool rad = obj.contains(base + "_rad_s");
  if (hz && rad) state_error("'" + base + "' is given in two units");
  if (hz) return units::hz_to_rad_per_s(number(obj, (base + "_hz").c_str()));
  if (rad) return number(obj, (base + "_rad_s").c_str());
  return std::nullopt;
}

std::vector<double> numbers(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    state_error(std::string("'") + key + "' must be an array");
  }
  std::vector<double> out;
  for (const auto& v : obj.at(key)) {
    if (!v.is_number()) state_error(std::string("'") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// Returns the envelope and whether it may be rescaled to a target power.
std::pair<Envelope, bool> envelope_from_json(const json& e, double carrier) {
  if (!e.is_object()) state_error("'envelope' must be an object");
  const std::string kind = e.value("kind", "monochromatic");
  if (kind == "monochromatic") {
    const auto width = rate_opt(e, "bin_width");
    if (!width) state_error("monochromatic envelope needs 'bin_width_hz'");
    return {Envelope::monochromatic(carrier, *width, 1.0), true};
  }
  if (kind == "gaussian") {
    const auto sigma = rate_opt(e, "sigma");
    if (!sigma) state_error("gaussian envelope needs 'sigma_hz'");
    const auto nodes = static_cast<std::size_t>(e.value("nodes", 401));
    return {Envelope::gaussian(carrier, *sigma, 1.0, nodes), true};
  }
  if (kind == "samples") {
    std::vector<double> w;
    if (e.contains("frequencies_hz")) {
      for (double f : numbers(e, "frequencies_hz")) w.push_back(units::hz_to_rad_per_s(f));
    } else {
      w = numbers(e, "frequencies_rad_s");
    }
    const auto re = numbers(e, "real");
    const auto im = e.contains("imag") ? numbers(e, "imag") : std::vector<double>(re.size());
    if (re.size() != w.size() || im.size() != w.size()) {
      state_error("sample envelope arrays differ in length");
    }
    std::vector<std::complex<double>> v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = {re[i], im[i]};
    return {Envelope(std::move(w), std::move(v)), false};
  }
  state_error("unknown envelope kind '" + kind + "'");
}

json envelope_to_json(const Envelope& e) {
  std::vector<double> re, im;
  for (const auto& v : e.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"kind", "samples"}, {"frequencies_rad_s", e.omegas()}, {"real", re}, {"imag", im}};
}

}  // namespace

GwState state_from_json(const json& spec, const StateDefaults& defaults) {
  if (spec.is_null()) return VacuumState{};
  if (!spec.is_object()) state_error("must be an object");
  try {
    const std::string type = spec.value("type", "");
    if (type == "vacuum") return VacuumState{};
    if (type != "coherent" && type != "fock") {
      state_error("'type' must be vacuum, coherent or fock");
    }
    const double carrier = rate_opt(spec, "carrier").value_or(defaults.carrier);
    std::optional<double> area = defaults.area;
    if (spec.contains("area_m2")) area = number(spec, "area_m2");
    if (!area) state_error("no quantization area: give 'area_m2' or a source");
    const json env_spec = spec.value("envelope", json{{"kind", "gaussian"}, {"sigma_hz", 0.01}});
    auto [envelope, shaped] = envelope_from_json(env_spec, carrier);

    if (type == "fock") {
      if (!spec.contains("n") || !spec.at("n").is_number_integer() ||
          spec.at("n").get<long long>() < 0) {
        state_error("fock state needs a non-negative integer 'n'");
      }
      const auto n = spec.at("n").get<std::uint64_t>();
      return FockState(n, carrier, shaped ? envelope.normalized() : envelope, *area);
    }

    std::optional<double> power;
    if (spec.contains("amplitude_sq")) power = number(spec, "amplitude_sq");
    if (spec.value("from_source", false)) {
      if (power) state_error("give either 'amplitude_sq' or 'from_source', not both");
      if (!defaults.source_amplitude_sq) state_error("'from_source' needs a source");
      power = defaults.source_amplitude_sq;
    }
    if (power && *power < 0.0) state_error("'amplitude_sq' must be >= 0");
    const std::complex<double> phase = std::polar(1.0, spec.value("phase_rad", 0.0));
    if (!power && shaped) state_error("coherent state needs 'amplitude_sq' or 'from_source'");
    if (power) {
      envelope = *power == 0.0 ? envelope.scaled(0.0)
                               : envelope.normalized().scaled(std::sqrt(*power) * phase);
    }
    return CoherentState(carrier, std::move(envelope), *area);
  } catch (const PreconditionError& e) {
    state_error(e.what());
  } catch (const json::exception& e) {
    state_error(e.what());
  }
}

json state_to_json(const GwState& state) {
  if (const auto* c = std::get_if<CoherentState>(&state)) {
    return {{"type", "coherent"},
            {"carrier_rad_s", c->carrier()},
            {"area_m2", c->area()},
            {"envelope", envelope_to_json(c->amplitude())}};
  }
  if (const auto* f = std::get_if<FockState>(&state)) {
    return {{"type", "fock"},
            {"n", f->n()},
            {"carrier_rad_s", f->carrier()},
            {"area_m2", f->area()},
            {"envelope", envelope_to_json(f->envelope())}};
  }
  return {{"type", "vacuum"}};
}

}  // namespace gwdk::io
