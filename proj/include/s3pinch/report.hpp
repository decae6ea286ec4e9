#pragma once

#include "s3pinch/pinch_functions.hpp"
#include "s3pinch/quadrature.hpp"
#include "s3pinch/surface_catalog.hpp"
#include "s3pinch/tube_volume.hpp"

#include <json.hpp>

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>

namespace s3pinch::report {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kBoundViolation = 3,
  kNumericalFailure = 4,
};

enum class Format { Json, Csv, Text };

struct RunConfig {
  int resolution = kDefaultResolution;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t samples = kDefaultSamples;
  Format format = Format::Json;
  std::optional<double> tolerance;  // default depends on the surface
};

/// Throws DomainError unless resolution >= 8 is a power of two, samples > 0
/// and any tolerance override is positive.
void validate(const RunConfig& config);

Format parse_format(std::string_view name);

struct CommandOutput {
  nlohmann::json doc;
  int exit_code = kOk;
  std::optional<std::string> csv;  // commands with a native table
};

nlohmann::json to_json(const GenusReport& rep);
nlohmann::json to_json(const TubeReport& rep);
nlohmann::json to_json(const SumChain& chain);
nlohmann::json to_json(const RootResult& root);

CommandOutput cmd_check(const ParametricSurface& surface, const RunConfig& config);
CommandOutput cmd_check(std::string_view spec, const RunConfig& config);
CommandOutput cmd_sweep_tori(double a_min, double a_max, int steps,
                             const RunConfig& config);
CommandOutput cmd_solve_beta(int g0, double area, const RunConfig& config);
CommandOutput cmd_solve_finv(double y, const RunConfig& config);
CommandOutput cmd_solve_maxA(int genus, double ambient_volume, const RunConfig& config);
CommandOutput cmd_gap(std::string_view spec, const RunConfig& config);
CommandOutput cmd_eigen(std::string_view spec, const RunConfig& config);
CommandOutput cmd_import(const std::string& path, const RunConfig& config);

/// Document for a failed command; the exit code follows the error class.
CommandOutput error_output(const std::exception& e, std::string_view command,
                           const RunConfig& config);
int exit_code_for(const std::exception& e);

/// Serializes a command output in the requested format.
std::string render(const CommandOutput& out, Format format);

}  // namespace s3pinch::report
