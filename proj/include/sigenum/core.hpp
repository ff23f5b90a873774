#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigenum/errors.hpp"

namespace sigenum {

/// Field the snapshots live in. The numeric value is the Dyson index beta.
enum class Field : int { kReal = 1, kComplex = 2, kQuaternion = 4 };

/// Maps beta in {1, 2, 4} to a Field; throws DomainError otherwise.
Field field_from_beta(int beta);

constexpr int beta_of(Field f) { return static_cast<int>(f); }

/// Population covariance description: k signal eigenvalues above a white
/// noise floor, plus the array/sample dimensions used to synthesize data.
class ScenarioSpec {
 public:
  /// Signal eigenvalues are sorted non-increasing. Every one must exceed
  /// noise_variance, and there must be fewer of them than sensors.
  ScenarioSpec(std::vector<double> signal_eigenvalues, double noise_variance, int n, int m,
               Field field);

  const std::vector<double>& signal_eigenvalues() const { return signal_eigenvalues_; }
  double noise_variance() const { return noise_variance_; }
  int n() const { return n_; }
  int m() const { return m_; }
  Field field() const { return field_; }
  int beta() const { return beta_of(field_); }
  int num_signals() const { return static_cast<int>(signal_eigenvalues_.size()); }

  /// Population eigenvalue of coordinate i (0-based) for the diagonal model.
  double population_eigenvalue(int i) const;

 private:
  std::vector<double> signal_eigenvalues_;
  double noise_variance_;
  int n_;
  int m_;
  Field field_;
};

/// Descending sample eigenvalues l1 >= ... >= ln >= 0 of an n x n SCM
/// formed from m snapshots.
class SampleSpectrum {
 public:
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  int n() const { return n_; }
  int m() const { return m_; }
  Field field() const { return field_; }
  int beta() const { return beta_of(field_); }
  double operator[](std::size_t i) const { return eigenvalues_[i]; }

  friend bool operator==(const SampleSpectrum&, const SampleSpectrum&) = default;

 private:
  friend SampleSpectrum validate_spectrum(std::span<const double>, int, int, int);
  SampleSpectrum(std::vector<double> eigenvalues, int n, int m, Field field)
      : eigenvalues_(std::move(eigenvalues)), n_(n), m_(m), field_(field) {}

  std::vector<double> eigenvalues_;
  int n_;
  int m_;
  Field field_;
};

/// Relative tolerance below which negative eigenvalues are treated as round-off.
inline constexpr double kClampTolerance = 1e-10;

/// Sorts `eigs` descending and clamps round-off negatives (|l| <= 1e-10 * l1) to zero.
/// Throws NonFiniteInput on NaN/inf entries, NegativeEigenvalue on genuine negatives,
/// DomainError on a length/dimension mismatch or an invalid beta.
SampleSpectrum validate_spectrum(std::span<const double> eigs, int n, int m, int beta);

enum class EstimatorId { kNewRmtAic, kWkAic, kWkMdl };

/// "NEW_RMT_AIC", "WK_AIC", "WK_MDL".
std::string_view to_string(EstimatorId id);

/// Accepts the canonical names or the short forms new / aic / mdl.
EstimatorId parse_estimator(std::string_view name);

struct CriterionValue {
  int k;
  double value;  // may be +infinity
};

struct DetectionResult {
  EstimatorId estimator;
  int k_hat;
  std::vector<CriterionValue> criterion_values;
};

}  // namespace sigenum
