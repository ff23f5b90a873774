#include "sigenum/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace sigenum {

Field field_from_beta(int beta) {
  switch (beta) {
    case 1:
      return Field::kReal;
    case 2:
      return Field::kComplex;
    case 4:
      return Field::kQuaternion;
    default:
      throw DomainError("beta must be 1, 2 or 4, got " + std::to_string(beta));
  }
}

ScenarioSpec::ScenarioSpec(std::vector<double> signal_eigenvalues, double noise_variance, int n,
                           int m, Field field)
    : signal_eigenvalues_(std::move(signal_eigenvalues)),
      noise_variance_(noise_variance),
      n_(n),
      m_(m),
      field_(field) {
  if (n_ < 1 || m_ < 1) throw DomainError("n and m must be positive");
  if (!std::isfinite(noise_variance_) || noise_variance_ <= 0.0)
    throw DomainError("noise variance must be finite and positive");
  field_from_beta(beta_of(field_));
  if (static_cast<long>(signal_eigenvalues_.size()) >= n_)
    throw DomainError("need fewer signal eigenvalues than sensors");
  for (double l : signal_eigenvalues_)
    if (!std::isfinite(l)) throw NonFiniteInput("signal eigenvalue is not finite");
  std::sort(signal_eigenvalues_.begin(), signal_eigenvalues_.end(), std::greater<>());
  for (double l : signal_eigenvalues_) {
    // A "signal" at or below the noise floor is a model violation.
    if (l <= noise_variance_)
      throw DomainError("signal eigenvalue " + std::to_string(l) +
                        " does not exceed the noise variance");
  }
}

double ScenarioSpec::population_eigenvalue(int i) const {
  return i < num_signals() ? signal_eigenvalues_[static_cast<std::size_t>(i)] : noise_variance_;
}

SampleSpectrum validate_spectrum(std::span<const double> eigs, int n, int m, int beta) {
  const Field field = field_from_beta(beta);
  if (n < 1 || m < 1) throw DomainError("n and m must be positive");
  if (eigs.size() != static_cast<std::size_t>(n))
    throw DomainError("expected " + std::to_string(n) + " eigenvalues, got " +
                      std::to_string(eigs.size()));

  std::vector<double> sorted(eigs.begin(), eigs.end());
  for (double v : sorted)
    if (!std::isfinite(v)) throw NonFiniteInput("eigenvalue is NaN or infinite");
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  const double tol = kClampTolerance * std::max(sorted.front(), 0.0);
  for (double& v : sorted) {
    if (v >= 0.0) continue;
    if (-v > tol)
      throw NegativeEigenvalue("eigenvalue " + std::to_string(v) +
                               " is negative beyond round-off");
    v = 0.0;
  }
  return SampleSpectrum(std::move(sorted), n, m, field);
}

std::string_view to_string(EstimatorId id) {
  switch (id) {
    case EstimatorId::kNewRmtAic:
      return "NEW_RMT_AIC";
    case EstimatorId::kWkAic:
      return "WK_AIC";
    case EstimatorId::kWkMdl:
      return "WK_MDL";
  }
  return "UNKNOWN";
}

EstimatorId parse_estimator(std::string_view name) {
  if (name == "new" || name == "NEW_RMT_AIC") return EstimatorId::kNewRmtAic;
  if (name == "aic" || name == "WK_AIC") return EstimatorId::kWkAic;
  if (name == "mdl" || name == "WK_MDL") return EstimatorId::kWkMdl;
  throw DomainError("unknown estimator '" + std::string(name) + "'");
}

}  // namespace sigenum
