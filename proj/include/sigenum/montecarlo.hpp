#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sigenum/core.hpp"
#include "sigenum/eig.hpp"
#include "sigenum/rmt.hpp"

namespace sigenum {

/// Everything in a ScenarioSpec except the dimensions, which come from the grid.
struct ScenarioTemplate {
  std::vector<double> signal_eigenvalues;
  double noise_variance = 1.0;
  Field field = Field::kReal;

  ScenarioSpec at(int n, int m) const {
    return ScenarioSpec(signal_eigenvalues, noise_variance, n, m, field);
  }
};

struct GridPoint {
  int n = 0;
  int m = 0;
};

struct ExperimentPlan {
  ScenarioTemplate scenario;
  std::vector<GridPoint> grid;
  int trials = 1000;
  std::uint64_t master_seed = 0;
  std::vector<EstimatorId> estimators{EstimatorId::kNewRmtAic, EstimatorId::kWkAic,
                                      EstimatorId::kWkMdl};
  /// 0 means hardware concurrency. Never affects results.
  unsigned workers = 0;
  EigenMethod method = EigenMethod::kTridiagonalQl;
};

struct TrialSummary {
  int n = 0;
  int m = 0;
  EstimatorId estimator = EstimatorId::kNewRmtAic;
  std::map<int, long> counts;  // k_hat -> occurrences
  long trials = 0;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

/// Validates the plan (non-empty grid, trials >= 1, every grid point a valid
/// scenario). Throws DomainError.
void validate_plan(const ExperimentPlan& plan);

/// Global trial index for trial t at grid point g: g * trials + t.
std::uint64_t global_trial_index(std::size_t grid_index, int trials, int t);

/// Simulates `trials` independent spectra for `spec`; trial t uses stream
/// (master_seed, first_index + t). Result order follows t regardless of workers.
/// A ConvergenceFailure is rethrown annotated with (n, m, trial index).
std::vector<SampleSpectrum> simulate_spectra(const ScenarioSpec& spec, int trials,
                                             std::uint64_t master_seed,
                                             std::uint64_t first_index, unsigned workers,
                                             EigenMethod method = EigenMethod::kTridiagonalQl);

/// One summary per (grid point, estimator), grid-major, estimators in plan order.
std::vector<TrialSummary> run_experiment(const ExperimentPlan& plan);

/// counts[target_k] / trials, or 0 when absent.
double detection_probability(const TrialSummary& summary, int target_k);

/// Binomial standard error sqrt(p (1 - p) / trials).
double detection_stderr(const TrialSummary& summary, int target_k);

/// Signal-free moment-CLT experiment.
struct CltCheckPlan {
  int n = 100;
  int m = 200;
  Field field = Field::kReal;
  int trials = 5000;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;
};

inline constexpr int kMinCltTrials = 1000;
inline constexpr double kCltMeanSigmas = 4.0;
inline constexpr double kCltCovarianceRelTol = 0.10;

struct CltCheckReport {
  MomentCLT theory;
  CltPair empirical_mean{};
  Matrix2 empirical_covariance{};
  std::array<double, 2> mean_tolerance{};  // 4 sqrt(Q_ii / trials)
  bool mean_ok = false;
  bool covariance_ok = false;
  bool pass() const { return mean_ok && covariance_ok; }
};

/// Throws DomainError if trials < kMinCltTrials.
CltCheckReport run_clt_check(const CltCheckPlan& plan);

}  // namespace sigenum
