#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gwdk/error.hpp"
#include "gwdk/io/config.hpp"
#include "gwdk/io/csv.hpp"
#include "gwdk/io/response_table.hpp"
#include "gwdk/io/state_json.hpp"
#include "gwdk/io/toml_subset.hpp"
#include "support/oracles.hpp"

using namespace gwdk;
using namespace gwdk::io;
using namespace gwdk::test;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = GWDK_SOURCE_DIR;

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gwdk_test_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("toml subset") {
  const auto doc = parse_toml(R"(
# comment
title = "run"   # trailing comment
seed = 42
ratio = 1.5e-3
flag = true
source.distance_mpc = 100.0
list = [1, 2,
        3]
nested = [[1.0, 2.0], ["a"]]
literal = 'C:\path'

[grid]
kind = "band"
points_per_side = 11

[a.b]
c = -7
)");
  CHECK(doc["title"] == "run");
  CHECK(doc["seed"] == 42);
  CHECK(doc["ratio"].get<double>() == 1.5e-3);
  CHECK(doc["flag"] == true);
  CHECK(doc["source"]["distance_mpc"].get<double>() == 100.0);
  CHECK(doc["list"] == json::array({1, 2, 3}));
  CHECK(doc["nested"][1][0] == "a");
  CHECK(doc["literal"] == "C:\\path");
  CHECK(doc["grid"]["points_per_side"] == 11);
  CHECK(doc["a"]["b"]["c"] == -7);

  CHECK(error_code([] { parse_toml("x = {a = 1}"); }) == "config");
  CHECK(error_code([] { parse_toml("[[items]]\nx = 1"); }) == "config");
  CHECK(error_code([] { parse_toml("x = 1\nx = 2"); }) == "config");
  CHECK(error_code([] { parse_toml("x = \"open"); }) == "config");
}

TEST_CASE("shipped configs load and round-trip") {
  for (const auto& entry : fs::directory_iterator(kRoot / "configs")) {
    CAPTURE(entry.path().string());
    const auto cfg = load_config(entry.path());
    const auto again = parse_config(to_json(cfg), kRoot / "configs");
    CHECK(again == cfg);
    // A second trip is a fixed point of the serializer.
    CHECK(to_json(again) == to_json(cfg));
  }
}

TEST_CASE("config parsing") {
  const auto base = kRoot / "configs";
  SUBCASE("preset fields and unit conversion") {
    const auto cfg = parse_config(json{{"detector", "aligo-like"}, {"source", "binary-100Mpc"}},
                                  base);
    const auto& p = cfg.detector->ifo();
    CHECK(p.kappa == doctest::Approx(hz(400.0)).epsilon(1e-15));
    CHECK(p.mass == 40.0);
    CHECK(rel_err(p.cavity_power(), 1e6) < 1e-12);
    CHECK(cfg.detector->ifo_noise.s_qq == doctest::Approx(6.2e12 + 0.5));
    CHECK(cfg.source->distance == doctest::Approx(100.0 * kMpc).epsilon(1e-15));
    CHECK(run_carrier(cfg) == doctest::Approx(hz(60.0)).epsilon(1e-15));

    const auto bar = parse_config(json{{"detector", "niobe-like"}, {"source", "binary-100Mpc"}},
                                  base);
    CHECK(run_carrier(bar) == doctest::Approx(hz(1000.0)).epsilon(1e-15));
    CHECK(bar.detector->bar().omega_m == doctest::Approx(hz(1000.0)).epsilon(1e-15));
    CHECK(run_grid(bar).size() == 2 * 4001);
  }
  SUBCASE("inline overrides on a preset") {
    const auto cfg =
        parse_config(json{{"detector", {{"preset", "aligo-like"}, {"mass_kg", 80.0}}}}, base);
    CHECK(cfg.detector->ifo().mass == 80.0);
    CHECK(cfg.detector->ifo().length == 4000.0);
  }
  SUBCASE("alternative unit suffixes") {
    const auto cfg = parse_config(
        json{{"detector", {{"preset", "aligo-like"}, {"arm_length_km", 3.0}}},
             {"carrier_rad_s", 100.0}},
        base);
    CHECK(cfg.detector->ifo().length == 3000.0);
    CHECK(run_carrier(cfg) == 100.0);
  }
  SUBCASE("errors carry machine-readable codes") {
    CHECK(error_code([&] { parse_config(json{{"detectr", "aligo-like"}}, base); }) == "config");
    CHECK(error_code([&] {
            parse_config(json{{"detector", {{"preset", "aligo-like"}, {"colour", 1}}}}, base);
          }) == "config");
    CHECK(error_code([&] { parse_config(json{{"detector", "no-such-preset"}}, base); }) ==
          "config");
    CHECK(error_code([&] {
            parse_config(json{{"detector", {{"preset", "aligo-like"}, {"mass_kg", -1.0}}}}, base);
          }) == "config");
    CHECK(error_code([&] { parse_config(json{{"output", {{"format", "xml"}}}}, base); }) ==
          "config");
    CHECK(error_code([&] { load_config(base / "does-not-exist.json"); }) == "io");
  }
}

TEST_CASE("GWDK_PRESET_DIR takes precedence") {
  const auto dir = scratch_dir("presets");
  auto doc = json::parse(std::ifstream(kRoot / "presets" / "aligo-like.json"));
  doc["mass_kg"] = 123.0;
  std::ofstream(dir / "aligo-like.json") << doc.dump();

  ::setenv("GWDK_PRESET_DIR", dir.c_str(), 1);
  const auto path = resolve_preset("aligo-like", kRoot / "configs");
  const auto cfg = parse_config(json{{"detector", "aligo-like"}}, kRoot / "configs");
  ::unsetenv("GWDK_PRESET_DIR");

  CHECK(fs::equivalent(path, dir / "aligo-like.json"));
  CHECK(cfg.detector->ifo().mass == 123.0);
  // Names missing from the override directory fall through to the others.
  ::setenv("GWDK_PRESET_DIR", dir.c_str(), 1);
  CHECK(fs::exists(resolve_preset("niobe-like", kRoot / "configs")));
  ::unsetenv("GWDK_PRESET_DIR");
  CHECK(parse_config(json{{"detector", "aligo-like"}}, kRoot / "configs").detector->ifo().mass ==
        40.0);
  fs::remove_all(dir);
}

TEST_CASE("state descriptions") {
  const double w0 = hz(60.0);
  const StateDefaults d{w0, 1e49, 4.0e6};
  const auto grid = FrequencyGrid::symmetric_band(w0, 2.0, 801);

  const auto coh = state_from_json(
      json{{"type", "coherent"}, {"amplitude_sq", 9.0},
           {"envelope", {{"kind", "gaussian"}, {"sigma_hz", 0.05}}}},
      d);
  CHECK(graviton_flux_narrowband(strain_psd(coh, grid), w0, 1e49) ==
        doctest::Approx(9.0).epsilon(1e-4));

  const auto src = state_from_json(json{{"type", "coherent"}, {"from_source", true}}, d);
  CHECK(graviton_flux_narrowband(strain_psd(src, grid), w0, 1e49) ==
        doctest::Approx(4.0e6).epsilon(1e-4));

  const auto fock = state_from_json(json{{"type", "fock"}, {"n", 3}}, d);
  CHECK(std::get<FockState>(fock).n() == 3);
  CHECK(std::holds_alternative<VacuumState>(state_from_json(json{{"type", "vacuum"}}, d)));

  // Sampled form reproduces the same spectrum.
  for (const auto& s : {coh, fock}) {
    const auto back = state_from_json(state_to_json(s), d);
    const auto a = strain_psd(s, grid);
    const auto b = strain_psd(back, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      REQUIRE(std::abs(a[i] - b[i]) <= 1e-12 * std::max(a[i], 1e-300));
    }
  }

  CHECK(error_code([&] { state_from_json(json{{"type", "squeezed"}}, d); }) == "config");
  CHECK(error_code([&] { state_from_json(json{{"type", "fock"}, {"n", -1}}, d); }) != "");
  const StateDefaults bare{w0, std::nullopt, std::nullopt};
  CHECK(error_code([&] { state_from_json(json{{"type", "coherent"}, {"from_source", true}}, bare); }) !=
        "");
}

TEST_CASE("csv output") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1e-74) == "9.9999999999999996e-75");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-2.5) == "-2.5");
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, 1.0e-300, -7.25e-74}) {
    CHECK(std::stod(format_double(x)) == x);
  }

  const std::vector<double> a{1.0, 2.0}, b{0.5, 1e-20};
  std::ostringstream os;
  write_columns(os, {{"omega_rad_s", a}, {"psd", b}});
  CHECK(os.str() == "omega_rad_s,psd\n1,0.5\n2,9.9999999999999995e-21\n");
  std::ostringstream bad;
  CHECK(error_code([&] { write_columns(bad, {{"a", a}, {"b", std::span<const double>(b).first(1)}}); }) !=
        "");

  const auto stream = sample_click_stream(WaitTimeModel(1234.5), 0.5, 99);
  std::stringstream io;
  write_click_stream(io, stream);
  const auto back = read_click_stream(io);
  CHECK(back.seed == 99);
  CHECK(back.rate == stream.rate);
  CHECK(back.duration == stream.duration);
  CHECK(back.times == stream.times);

  const auto dir = scratch_dir("csv");
  write_file(dir / "sub" / "x.csv", "a\r\nb\n");
  std::ifstream in(dir / "sub" / "x.csv", std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), {});
  CHECK(bytes == "a\r\nb\n");
  fs::remove_all(dir);
}

TEST_CASE("response table") {
  const auto base = kRoot / "configs";
  const auto ifo = parse_detector(json("aligo-like"), base).ifo();
  const auto bar = parse_detector(json("niobe-like"), base).bar();
  ResponseInputs in{ifo, bar, hz(60.0), bar.omega_m, area_factor(100.0 * kMpc, 1.0),
                    1.0e3, 5, hz(1e-3)};
  const auto rows = build_response_table(in);
  REQUIRE(rows.size() == 8);

  const char* names[] = {"interferometer", "bar"};
  for (std::size_t i = 0; i < 8; ++i) {
    CAPTURE(i);
    CHECK(rows[i].detector == names[i % 2]);
    CHECK(rows[i].state == (i < 4 ? FieldState::coherent : FieldState::fock));
    CHECK(rows[i].readout == ((i / 2) % 2 == 0 ? Readout::homodyne : Readout::absorptive));
  }
  // Fock states produce no mean field at all.
  CHECK(rows[4].chain_response == 0.0);
  CHECK(rows[5].chain_response == 0.0);
  CHECK(rows[4].ratio == 0.0);
  for (std::size_t i : {0u, 1u, 2u, 3u, 6u, 7u}) CHECK(rows[i].chain_response > 0.0);
  // Absorptive rows equal eta |a|^2 and eta n.
  for (std::size_t i : {2u, 3u, 6u, 7u}) CHECK(rows[i].ratio == doctest::Approx(1.0).epsilon(1e-9));

  auto scaled = in;
  scaled.coherent_amplitude *= 3.0;
  scaled.fock_n *= 2;
  const auto rows2 = build_response_table(scaled, Execution::serial);
  for (std::size_t i : {0u, 1u}) CHECK(rel_err(rows2[i].chain_response, 3.0 * rows[i].chain_response) < 1e-12);
  for (std::size_t i : {2u, 3u}) CHECK(rel_err(rows2[i].chain_response, 9.0 * rows[i].chain_response) < 1e-12);
  for (std::size_t i : {6u, 7u}) CHECK(rel_err(rows2[i].chain_response, 2.0 * rows[i].chain_response) < 1e-12);
}
