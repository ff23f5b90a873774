#pragma once

#include <array>
#include <utility>

#include "sigenum/core.hpp"

namespace sigenum {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Asymptotic covariance of (sum l_i - n, sum l_i^2 - n(1+c) - (2/beta-1)c)
/// for a signal-free unit-variance SCM:
///   Q = (2/beta) [[c, 2c(c+1)], [2c(c+1), 2c(2c^2+5c+2)]].
/// Throws DomainError if c <= 0 or beta is invalid.
Matrix2 q_matrix(double c, int beta);

/// Centered first/second moment pair of a signal-free, unit-variance spectrum.
struct CltPair {
  double first;
  double second;
};

/// (sum l_i - n, sum l_i^2 - n(1+c) - (2/beta - 1)c), c = n/m.
CltPair clt_statistics(const SampleSpectrum& s);

/// Bundles the moment-CLT parameters for one (n, m, beta).
struct MomentCLT {
  int n = 0;
  int m = 0;
  double c = 0.0;
  int beta = 1;
  CltPair centering_offset{};  // (0, (2/beta - 1)c), already subtracted by clt_statistics
  Matrix2 covariance_q{};
};

MomentCLT moment_clt(int n, int m, int beta);

struct SpikedPrediction {
  double population_eigenvalue = 0.0;
  double limit = 0.0;
  bool above_threshold = false;
};

/// sigma2 (1 + sqrt(c)): population eigenvalues at or below it merge into the bulk.
double phase_transition_threshold(double sigma2, double c);

/// sigma2 (1 + sqrt(c))^2, limit of the largest noise sample eigenvalue.
double bulk_edge(double sigma2, double c);

/// Almost-sure limit of the sample eigenvalue paired with lambda_j.
/// Requires lambda_j >= sigma2 > 0 and c > 0.
SpikedPrediction spiked_limit(double lambda_j, double sigma2, double c);

/// Number of signal eigenvalues strictly above sigma2 (1 + sqrt(n/m)).
int effective_num_signals(const ScenarioSpec& spec);

/// The two non-trivial eigenvalues (descending) of
/// p1 v1 v1' + p2 v2 v2' + sigma2 I, given powers, norms and |<v1, v2>|.
std::pair<double, double> two_source_eigenvalues(double p1, double p2, double norm1,
                                                 double norm2, double inner, double sigma2);

/// Equal-power, equal-norm two-source identifiability:
///   p ||v||^2 (1 - |<v1,v2>| / ||v||^2) > sigma2 sqrt(n/m).
/// Equivalent to the weaker eigenvalue from two_source_eigenvalues clearing
/// the phase-transition threshold.
bool identifiability_check(double p, double norm, double inner, double sigma2, int n, int m);

}  // namespace sigenum
