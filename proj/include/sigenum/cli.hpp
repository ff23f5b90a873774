#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sigenum/core.hpp"
#include "sigenum/montecarlo.hpp"

namespace sigenum::cli {

enum ExitCode : int {
  kOk = 0,
  kStatisticalFailure = 1,
  kParseFailure = 2,
  kValidationFailure = 3,
  kRuntimeFailure = 4,
};

inline constexpr std::uint64_t kDefaultSeed = 20080401;

enum class Subcommand { kEstimate, kSimulate, kKeff, kLimits, kCltCheck };

/// Parsed command line. Unset optionals fall back to per-command defaults.
struct RunConfig {
  Subcommand subcommand = Subcommand::kEstimate;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;

  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> c;
  int beta = 1;
  double sigma2 = 1.0;
  std::vector<double> signals;
  /// Defaults: 1000 for simulate, 5000 for clt-check.
  std::optional<int> trials;
  std::uint64_t seed = kDefaultSeed;
  std::vector<EstimatorId> estimators{EstimatorId::kNewRmtAic, EstimatorId::kWkAic,
                                      EstimatorId::kWkMdl};
  std::vector<GridPoint> grid;
  unsigned workers = 0;
  EigenMethod method = EigenMethod::kTridiagonalQl;
  bool verbose = false;
};

/// "64:256,128:512" -> {{64,256},{128,512}}. Throws DomainError.
std::vector<GridPoint> parse_grid(const std::string& text);
/// "new,aic,mdl" -> estimator ids. Throws DomainError.
std::vector<EstimatorId> parse_estimator_list(const std::string& text);
/// "10,3" -> {10, 3}. Throws DomainError.
std::vector<double> parse_real_list(const std::string& text);

int cmd_estimate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_keff(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_limits(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_clt_check(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches, and writes to `out` (or --output). Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sigenum::cli
