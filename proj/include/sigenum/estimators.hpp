#pragma once

#include "sigenum/core.hpp"

namespace sigenum {

/// Moments of the trailing window l_{k+1}, ..., l_n.
struct WindowMoments {
  int k = 0;
  double mean = 0.0;         // a(k)
  double mean_square = 0.0;  // (1/(n-k)) sum l_i^2
  double geo_mean = 0.0;     // g(k); 0 if any window entry is 0
  double mean_log = 0.0;     // (1/(n-k)) sum log l_i; -inf if any entry is 0
  double t = 0.0;            // mean_square / mean^2; +inf if mean == 0
};

/// Requires 0 <= k < n; throws DomainError otherwise.
WindowMoments window_moments(const SampleSpectrum& s, int k);

/// Wax-Kailath AIC: -2(n-k) m log(g/a) + 2k(2n-k), k in [0, min(n, m)).
DetectionResult estimate_wk_aic(const SampleSpectrum& s);

/// Wax-Kailath MDL: -(n-k) m log(g/a) + k(2n-k) log(m) / 2, k in [0, min(n, m)).
DetectionResult estimate_wk_mdl(const SampleSpectrum& s);

/// Random-matrix AIC built on the sliding-window statistic t_{n,k}:
///
///   q_k = n [t_{n,k} - (1 + n/m)] - (2/beta - 1) n/m
///   criterion_k = (beta/4) (m/n)^2 q_k^2 + 2(k + 1)
///
/// minimized over 0 <= k < min(n, m). An all-zero window scores +inf.
DetectionResult estimate_new(const SampleSpectrum& s);

DetectionResult estimate(const SampleSpectrum& s, EstimatorId id);

}  // namespace sigenum
