#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgate/catalog.hpp"
#include "sgate/certify.hpp"
#include "sgate/errors.hpp"
#include "sgate/greens.hpp"
#include "sgate/spectrum.hpp"

namespace sgate {

inline constexpr int kSchemaVersion = 1;

/// Config problems found before any computation. `field` is a JSON pointer,
/// `line` is 1-based or 0 when unknown.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, int line, const std::string& message)
      : Error(ErrorKind::Config, "cli-io", message), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

struct LayoutSpec {
  std::string type = "uniform";
  int phases = 1;
  int axis = 0;
  double fraction = 0.5;
  int cells = 2;
  double radius = 0.25;
  std::string path;
};

/// Either a built-in id or a CSV file.
struct TranslationSpec {
  std::string builtin;
  std::string csv;
  std::string id;
};

struct ScenarioConfig {
  std::string preset;
  int dimension = 0;
  Moduli parameters;

  int grid_n = 0;
  std::vector<int> grid_sizes;
  std::vector<double> cell;

  LayoutSpec layout;
  std::vector<Moduli> phases;
  std::vector<cplx> z;

  CertifierConfig certifier;
  std::vector<TranslationSpec> translations;

  SolverConfig solver;
  std::string method = "neumann";
  bool compare_oracle = false;
  std::string source = "random";
  SplittingFactors factors;

  ScanConfig scan;
  bool scan_oracle = false;

  BlochScanConfig bloch;

  std::vector<std::string> property_checks;
  int property_samples = 20;

  std::vector<std::string> identity_presets;
  int identity_trials = 20;

  std::uint64_t seed = 0;
  std::string out = ".";
};

const std::vector<std::string>& subcommands();

/// Parses and validates a config for `command`. Unknown keys, wrong types and
/// sections missing for the command raise SchemaError.
ScenarioConfig parse_config(const std::string& text, const std::string& command);
ScenarioConfig load_config(const std::filesystem::path& path, const std::string& command);

struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  int workers = 0;
};

struct RunResult {
  int exit_code = 0;
  nlohmann::ordered_json summary;
  std::vector<std::filesystem::path> artifacts;
};

/// Runs one subcommand on a validated config. Library errors propagate.
RunResult run_command(const std::string& command, const ScenarioConfig& config, const RunOptions& options);

/// Full pipeline from a config path. Returns 0 on success, 2 on schema or
/// usage errors and 1 on any other failure or contract violation; failures
/// print one JSON error record on `err`, the summary goes to `out`.
int run_config(const std::string& command, const std::filesystem::path& config_path, const RunOptions& options,
               std::ostream& out, std::ostream& err);

nlohmann::ordered_json error_record(const std::exception& e);

/// Log level from SPECTRAL_GATE_LOG (a spdlog level name: trace, debug, info,
/// warn, error, critical, off); warn when unset or unrecognised.
void configure_logging();

}  // namespace sgate
