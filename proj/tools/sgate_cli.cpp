#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sgate/app.hpp"

namespace {

// Logs go to stderr so stdout carries only the JSON summary. The level comes
// from SPECTRAL_GATE_LOG, applied by run_config.
void setup_logging() {
  spdlog::set_default_logger(spdlog::stderr_color_mt("sgate"));
  spdlog::set_pattern("[%l] %v");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Certified spectrum bounds and Green's operator solves for periodic operator pencils"};
  app.require_subcommand(1);

  std::string config;
  int workers = 0;
  std::string out;
  std::optional<std::uint64_t> seed;
  for (const auto& name : sgate::subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON scenario config")->required();
    sub->add_option("--workers", workers, "worker threads (default: hardware concurrency)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out, "output directory (overrides the config's out)");
    sub->add_option("--seed", seed, "random seed (overrides the config's seed)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::ordered_json rec{{"error", "usage"}, {"module", "cli-io"}, {"message", e.what()}};
    std::cerr << rec.dump() << '\n';
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  sgate::RunOptions options;
  options.workers = workers;
  options.seed = seed;
  if (!out.empty()) options.out = out;
  return sgate::run_config(command, config, options, std::cout, std::cerr);
}
