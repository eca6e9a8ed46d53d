// gwdk: graviton detection toolkit command line.
//
//   gwdk <spectrum|efficiency|table1|clicks|flux> --config PATH
//        [--out DIR] [--seed U64] [--format csv|json]
//
// Failures exit nonzero and print {"error": {"code": ..., "message": ...}}
// on stderr.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwdk/error.hpp"
#include "gwdk/io/commands.hpp"
#include "gwdk/io/config.hpp"

namespace {

int fail(const std::string& code, const std::string& message, int status) {
  nlohmann::json err{{"error", {{"code", code}, {"message", message}}}};
  std::cerr << err.dump() << '\n';
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum graviton detection toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string format;

  const char* names[] = {"spectrum", "efficiency", "table1", "clicks", "flux"};
  const char* help[] = {"detector noise budget or position spectrum",
                        "source-referenced efficiency, optionally swept over distance",
                        "response of both detectors to coherent and Fock states",
                        "seeded photon-click stream",
                        "graviton flux of the configured state"};
  for (int i = 0; i < 5; ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", config_path, "run configuration (.json or .toml)")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 64);
  }

  try {
    auto config = gwdk::io::load_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    const auto* sub = app.get_subcommands().front();
    if (sub->count("--seed") > 0) config.seed = seed;
    if (!format.empty()) config.format = gwdk::io::parse_format(format);

    const std::string cmd = sub->get_name();
    gwdk::io::CommandResult result;
    if (cmd == "spectrum") result = gwdk::io::cmd_spectrum(config);
    else if (cmd == "efficiency") result = gwdk::io::cmd_efficiency(config);
    else if (cmd == "table1") result = gwdk::io::cmd_table1(config);
    else if (cmd == "clicks") result = gwdk::io::cmd_clicks(config);
    else result = gwdk::io::cmd_flux(config);

    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : result.files) files.push_back(f.string());
    result.summary["files"] = files;
    std::cout << result.summary.dump(2) << '\n';
    return 0;
  } catch (const gwdk::Error& e) {
    return fail(e.code(), e.what(), 2);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}
