#pragma once

#include "mrnmf/feature_select.hpp"
#include "mrnmf/graph.hpp"
#include "mrnmf/matrix_io.hpp"
#include "mrnmf/multi_graph.hpp"
#include "mrnmf/multi_kernel.hpp"
#include "mrnmf/nmf.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

namespace mrnmf::cli {

/// Process exit codes of `manifold-nmf`.
enum ExitCode : int { kOk = 0, kConfigError = 2, kDataError = 3, kSolverError = 4 };

/// Raised while reading a run configuration; `field` is the dotted path of the
/// offending entry (e.g. "multi_graph.graphs").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct GnmfConfig {
  NmfConfig base;
  GraphSpec graph;

  friend bool operator==(const GnmfConfig&, const GnmfConfig&) = default;
};

using SolverConfig =
    std::variant<NmfConfig, GnmfConfig, MultiGraphConfig, FeatureSelectConfig, MultiKernelConfig>;

struct RunConfig {
  std::filesystem::path input;
  MatrixFormat format = MatrixFormat::csv;
  std::filesystem::path output_dir;
  bool normalize = false;  // unit-norm basis columns in the written factors
  SolverConfig solver;

  std::string method() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a configuration document. Relative paths are
/// resolved against `base_dir`. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& doc,
                           const std::filesystem::path& base_dir = {});

/// Canonical JSON form (all defaults filled in); parse_run_config inverts it.
nlohmann::json to_json(const RunConfig& cfg);

/// `manifold-nmf run --config <path>`: returns a process exit code.
int run(const std::filesystem::path& config_path, std::ostream& log);

/// `manifold-nmf synth --kind <kind> --seed <int> --out <dir>`.
int synth(const std::string& kind, std::uint64_t seed, const std::filesystem::path& out_dir,
          std::ostream& log);

}  // namespace mrnmf::cli
