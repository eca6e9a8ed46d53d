#include "gwdk/io/commands.hpp"

#include <cmath>
#include <sstream>

#include "gwdk/constants.hpp"
#include "gwdk/counting.hpp"
#include "gwdk/error.hpp"
#include "gwdk/gw_field.hpp"
#include "gwdk/io/csv.hpp"
#include "gwdk/io/response_table.hpp"
#include "gwdk/io/state_json.hpp"

namespace gwdk::io {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Streams with more expected clicks than this are refused rather than
// filling the disk.
constexpr double kMaxExpectedClicks = 5.0e7;

const DetectorConfig& need_detector(const RunConfig& c) {
  if (!c.detector) throw Error("config", "this command needs a 'detector'");
  return *c.detector;
}

const SourceConfig& need_source(const RunConfig& c) {
  if (!c.source) throw Error("config", "this command needs a 'source'");
  return *c.source;
}

GwState run_state(const RunConfig& c, double carrier) {
  StateDefaults d{carrier, std::nullopt, std::nullopt};
  if (c.source) {
    d.area = c.source->area();
    d.source_amplitude_sq =
        coherent_amplitude_from_strain(c.source->strain_amplitude, carrier, *d.area);
  }
  return state_from_json(c.state, d);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string columns_csv(const std::vector<Column>& cols) {
  std::ostringstream out;
  write_columns(out, cols);
  return out.str();
}

json columns_json(const std::vector<Column>& cols) {
  json out = json::object();
  for (const auto& c : cols) out[c.name] = std::vector<double>(c.values.begin(), c.values.end());
  return out;
}

json integrals(const std::vector<std::pair<std::string, const Spectrum*>>& parts, Execution exec) {
  json out = json::object();
  for (const auto& [name, spec] : parts) out[name] = integrate_spectrum(*spec, exec);
  return out;
}

json click_json(const ClickRate& r) {
  return {{"total_per_s", r.total}, {"gw_part_per_s", r.gw_part}, {"dark_part_per_s", r.dark_part}};
}

// Writes either data.csv + meta.json or a single json holding both.
CommandResult emit(const RunConfig& c, const std::string& stem, const std::vector<Column>& cols,
                   json meta) {
  CommandResult result;
  const fs::path dir(c.out_dir);
  if (c.format == OutputFormat::csv) {
    result.files.push_back(dir / (stem + ".csv"));
    write_file(result.files.back(), columns_csv(cols));
    result.files.push_back(dir / (stem + ".json"));
    write_file(result.files.back(), dump(meta));
  } else {
    json all = meta;
    all["columns"] = columns_json(cols);
    result.files.push_back(dir / (stem + ".json"));
    write_file(result.files.back(), dump(all));
  }
  result.summary = std::move(meta);
  return result;
}

constexpr Execution kExec = Execution::parallel;

}  // namespace

CommandResult cmd_spectrum(const RunConfig& c) {
  const auto& det = need_detector(c);
  const double carrier = run_carrier(c);
  const auto grid = run_grid(c);
  const auto state = run_state(c, carrier);
  const auto s_hh = strain_psd(state, grid);
  std::vector<double> hz(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) hz[i] = units::rad_per_s_to_hz(grid[i]);

  json meta{{"command", "spectrum"},
            {"detector", to_json(det)},
            {"carrier_rad_s", carrier},
            {"state", std::string(std::visit(
                          [](const auto& s) -> const char* {
                            using T = std::decay_t<decltype(s)>;
                            if constexpr (std::is_same_v<T, CoherentState>) return "coherent";
                            else if constexpr (std::is_same_v<T, FockState>) return "fock";
                            else return "vacuum";
                          },
                          state))},
            {"grid_points", grid.size()},
            {"spectrum_kind", std::string(to_string(SpectrumKind::double_sided_symmetrized))},
            {"seed", c.seed}};

  if (det.is_ifo()) {
    const auto budget = ifo_output_spectra(det.ifo(), s_hh, det.ifo_noise, kExec);
    const auto rate = ifo_click_rate(det.ifo(), s_hh, det.ifo_noise, kExec);
    meta["units"] = {{"s_hh", units::kStrainPsd}, {"budget", units::kQuadraturePsd}};
    meta["integrals"] = integrals({{"s_hh", &s_hh},
                                   {"s2_out", &budget.s2_out},
                                   {"radiation_pressure", &budget.radiation_pressure},
                                   {"shot", &budget.shot},
                                   {"suspension_thermal", &budget.suspension_thermal},
                                   {"gw_signal", &budget.gw_signal}},
                                  kExec);
    meta["click_rate"] = click_json(rate);
    return emit(c, "spectrum",
                {{"omega_rad_s", grid.omegas()},
                 {"frequency_hz", hz},
                 {"s_hh", s_hh.values()},
                 {"s1_out", budget.s1_out.values()},
                 {"s2_out", budget.s2_out.values()},
                 {"radiation_pressure", budget.radiation_pressure.values()},
                 {"shot", budget.shot.values()},
                 {"suspension_thermal", budget.suspension_thermal.values()},
                 {"gw_signal", budget.gw_signal.values()}},
                std::move(meta));
  }
  const auto response = bar_position_spectrum(det.bar(), s_hh, carrier, kExec);
  const auto rate = bar_click_rate(det.bar(), s_hh, carrier, kExec);
  meta["units"] = {{"s_hh", units::kStrainPsd}, {"budget", units::kZeroPointPsd}};
  meta["integrals"] = integrals({{"s_hh", &s_hh},
                                 {"s_zz", &response.s_zz},
                                 {"mechanical_vacuum", &response.mechanical_vacuum},
                                 {"backaction", &response.backaction},
                                 {"gw_drive", &response.gw_drive}},
                                kExec);
  meta["click_rate"] = click_json(rate);
  meta["off_resonance"] = response.off_resonance;
  return emit(c, "spectrum",
              {{"omega_rad_s", grid.omegas()},
               {"frequency_hz", hz},
               {"s_hh", s_hh.values()},
               {"s_zz", response.s_zz.values()},
               {"mechanical_vacuum", response.mechanical_vacuum.values()},
               {"backaction", response.backaction.values()},
               {"gw_drive", response.gw_drive.values()}},
              std::move(meta));
}

CommandResult cmd_efficiency(const RunConfig& c) {
  const auto& det = need_detector(c);
  const auto& src = need_source(c);
  const double carrier = run_carrier(c);
  auto eta_at = [&](double distance) {
    SourceConfig s = src;
    s.distance = distance;
    return det.is_ifo() ? eta_ifo(det.ifo(), s.geom(carrier)) : eta_bar(det.bar(), s.geom(carrier));
  };
  const double eta = eta_at(src.distance);

  std::vector<double> sweep = c.sweep_distances;
  std::vector<double> etas(sweep.size());
  kernels::for_each_index(kExec, sweep.size(), [&](std::size_t i) { etas[i] = eta_at(sweep[i]); });
  std::vector<double> mpc(sweep.size());
  for (std::size_t i = 0; i < sweep.size(); ++i) mpc[i] = sweep[i] / units::megaparsec_m;

  json meta{{"command", "efficiency"},
            {"eta", eta},
            {"formula_id", det.is_ifo() ? "eta_ifo:5F/2" : "eta_bar:80F/pi^3"},
            {"params_echo", {{"detector", to_json(det)}, {"source", to_json(src)},
                             {"carrier_rad_s", carrier}}}};
  if (sweep.size() >= 2) {
    meta["sweep_log_slope"] = (std::log(etas.back()) - std::log(etas.front())) /
                              (std::log(sweep.back()) - std::log(sweep.front()));
  }
  meta["sweep"] = json::array();
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    meta["sweep"].push_back({{"distance_m", sweep[i]}, {"eta", etas[i]}});
  }
  return emit(c, "efficiency", {{"distance_mpc", mpc}, {"distance_m", sweep}, {"eta", etas}},
              std::move(meta));
}

CommandResult cmd_table1(const RunConfig& c) {
  const Table1Config t = c.table1 ? *c.table1
                                  : Table1Config{parse_detector(json("aligo-like"), "."),
                                                 parse_detector(json("niobe-like"), ".")};
  const auto& src = need_source(c);
  ResponseInputs in{t.ifo.ifo(),
                    t.bar.bar(),
                    src.carriers.empty() ? units::two_pi * 60.0 : src.carriers.front(),
                    t.bar.bar().omega_m,
                    src.area(),
                    t.coherent_amplitude,
                    t.fock_n,
                    t.bin_width};
  if (c.carrier) in.ifo_carrier = *c.carrier;
  const auto rows = build_response_table(in, kExec);

  std::ostringstream csv;
  csv << "row,detector,readout,state,chain_response,scaling_value,ratio\n";
  json table = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    csv << i + 1 << ',' << r.detector << ',' << to_string(r.readout) << ','
        << to_string(r.state) << ',' << format_double(r.chain_response) << ','
        << format_double(r.scaling_value) << ',' << format_double(r.ratio) << '\n';
    table.push_back({{"row", i + 1},
                     {"detector", r.detector},
                     {"readout", to_string(r.readout)},
                     {"state", to_string(r.state)},
                     {"chain_response", r.chain_response},
                     {"scaling_value", r.scaling_value},
                     {"ratio", r.ratio}});
  }
  json meta{{"command", "table1"},
            {"coherent_amplitude", t.coherent_amplitude},
            {"fock_n", t.fock_n},
            {"area_m2", in.area},
            {"ifo_carrier_rad_s", in.ifo_carrier},
            {"bar_carrier_rad_s", in.bar_carrier},
            {"rows", table}};
  CommandResult result;
  const fs::path dir(c.out_dir);
  if (c.format == OutputFormat::csv) {
    result.files.push_back(dir / "table1.csv");
    write_file(result.files.back(), csv.str());
  }
  result.files.push_back(dir / "table1.json");
  write_file(result.files.back(), dump(meta));
  result.summary = std::move(meta);
  return result;
}

CommandResult cmd_clicks(const RunConfig& c) {
  const auto& det = need_detector(c);
  const auto& src = need_source(c);
  const double carrier = run_carrier(c);
  const double product = det.is_ifo()
                             ? rate_product_ifo(det.ifo(), src.strain_amplitude, carrier)
                             : rate_product_bar(det.bar(), src.strain_amplitude, carrier);
  const auto model = WaitTimeModel::from_rate_product(product);
  const double expected = (model.rate() + c.clicks.dark_rate) * c.clicks.duration;
  if (expected > kMaxExpectedClicks) {
    throw Error("limit", "expected " + format_double(expected) +
                             " clicks; shorten clicks.duration_s");
  }
  ClickStream stream = sample_click_stream(model, c.clicks.duration, c.seed);
  if (c.clicks.dark_rate > 0.0) {
    const auto dark = sample_click_stream(WaitTimeModel(c.clicks.dark_rate), c.clicks.duration,
                                          c.seed ^ 0x9E3779B97F4A7C15ull);
    stream = superpose(stream, dark);
  }
  json meta{{"command", "clicks"},
            {"seed", c.seed},
            {"rate_product_per_s", product},
            {"gw_rate_per_s", model.rate()},
            {"dark_rate_per_s", c.clicks.dark_rate},
            {"duration_s", c.clicks.duration},
            {"clicks", stream.times.size()}};
  CommandResult result;
  const fs::path dir(c.out_dir);
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    write_click_stream(out, stream);
    result.files.push_back(dir / "clicks.csv");
    write_file(result.files.back(), out.str());
  } else {
    json all = meta;
    all["rate_hz"] = stream.rate;
    all["times_s"] = stream.times;
    result.files.push_back(dir / "clicks.json");
    write_file(result.files.back(), dump(all));
  }
  result.summary = std::move(meta);
  return result;
}

CommandResult cmd_flux(const RunConfig& c) {
  const double carrier = run_carrier(c);
  const auto state = run_state(c, carrier);
  const double area = std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VacuumState>) {
          return c.source ? c.source->area() : 1.0;
        } else {
          return s.area();
        }
      },
      state);
  FrequencyGrid grid = c.grid ? c.grid->build()
                              : FrequencyGrid::symmetric_band(carrier, 0.01 * carrier, 4001);
  const auto s_hh = strain_psd(state, grid);
  json meta{{"command", "flux"},
            {"carrier_rad_s", carrier},
            {"area_m2", area},
            {"narrowband_per_s", graviton_flux_narrowband(s_hh, carrier, area, kExec)},
            {"broadband_per_s", graviton_flux_broadband(s_hh, area, kExec)}};
  if (c.source) {
    const auto& s = *c.source;
    meta["source_referenced_per_s"] =
        graviton_flux_source(s_hh, carrier, s.distance, s.antenna_factor, kExec);
    meta["source_amplitude_sq"] = coherent_amplitude_from_strain(s.strain_amplitude, carrier,
                                                                 s.area());
    meta["plane_wave_power_flux_w_m2"] = plane_wave_power_flux(s.strain_amplitude, carrier);
    if (s.binary) {
      BinarySource b = *s.binary;
      b.omega0 = carrier;
      const auto h = binary_strain_amplitudes(b);
      meta["binary"] = {{"h_plus", h.plus},
                        {"h_cross", h.cross},
                        {"quadrupole_power_w", quadrupole_total_power(b)},
                        {"quadrupole_power_numeric_w", quadrupole_total_power_numeric(b)}};
    }
  }
  CommandResult result;
  const fs::path dir(c.out_dir);
  if (c.format == OutputFormat::csv) {
    std::ostringstream out;
    out << "quantity,value\n";
    for (const auto& [k, v] : meta.items()) {
      if (v.is_number()) out << k << ',' << format_double(v.get<double>()) << '\n';
    }
    result.files.push_back(dir / "flux.csv");
    write_file(result.files.back(), out.str());
  }
  result.files.push_back(dir / "flux.json");
  write_file(result.files.back(), dump(meta));
  result.summary = std::move(meta);
  return result;
}

}  // namespace gwdk::io
