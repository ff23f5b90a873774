#include "sigenum/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sigenum {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int search_limit(const SampleSpectrum& s) { return std::min(s.n(), s.m()); }

// Smallest k attaining the minimum; an all-infinite range selects k = 0.
int argmin_smallest(const std::vector<CriterionValue>& values) {
  int best = 0;
  double best_value = kInf;
  for (const auto& cv : values) {
    if (cv.value < best_value) {
      best_value = cv.value;
      best = cv.k;
    }
  }
  return best;
}

// -(n-k) m log(g/a) scaled by `data_weight`, plus `penalty(k)`.
template <typename Penalty>
DetectionResult wax_kailath(const SampleSpectrum& s, EstimatorId id, double data_weight,
                            Penalty penalty) {
  const double n = s.n();
  const double m = s.m();
  DetectionResult result{id, 0, {}};
  for (int k = 0; k < search_limit(s); ++k) {
    const WindowMoments w = window_moments(s, k);
    double value = kInf;
    if (w.geo_mean > 0.0 && w.mean > 0.0) {
      const double log_ratio = w.mean_log - std::log(w.mean);
      value = -data_weight * (n - k) * m * log_ratio + penalty(static_cast<double>(k));
    }
    result.criterion_values.push_back({k, value});
  }
  result.k_hat = argmin_smallest(result.criterion_values);
  return result;
}

}  // namespace

WindowMoments window_moments(const SampleSpectrum& s, int k) {
  if (k < 0 || k >= s.n())
    throw DomainError("window start k = " + std::to_string(k) + " outside [0, n)");
  const auto& l = s.eigenvalues();
  const double count = s.n() - k;

  double sum = 0.0, sum_sq = 0.0, sum_log = 0.0;
  bool has_zero = false;
  for (std::size_t i = static_cast<std::size_t>(k); i < l.size(); ++i) {
    sum += l[i];
    sum_sq += l[i] * l[i];
    if (l[i] == 0.0)
      has_zero = true;
    else
      sum_log += std::log(l[i]);
  }

  WindowMoments w;
  w.k = k;
  w.mean = sum / count;
  w.mean_square = sum_sq / count;
  w.mean_log = has_zero ? -kInf : sum_log / count;
  w.geo_mean = has_zero ? 0.0 : std::exp(w.mean_log);
  w.t = w.mean == 0.0 ? kInf : w.mean_square / (w.mean * w.mean);
  return w;
}

DetectionResult estimate_wk_aic(const SampleSpectrum& s) {
  const double n = s.n();
  return wax_kailath(s, EstimatorId::kWkAic, 2.0,
                     [n](double k) { return 2.0 * k * (2.0 * n - k); });
}

DetectionResult estimate_wk_mdl(const SampleSpectrum& s) {
  const double n = s.n();
  const double log_m = std::log(static_cast<double>(s.m()));
  return wax_kailath(s, EstimatorId::kWkMdl, 1.0,
                     [n, log_m](double k) { return 0.5 * k * (2.0 * n - k) * log_m; });
}

DetectionResult estimate_new(const SampleSpectrum& s) {
  const double n = s.n();
  const double m = s.m();
  const double beta = s.beta();
  const double c = n / m;  // plug-in for the limiting ratio

  DetectionResult result{EstimatorId::kNewRmtAic, 0, {}};
  for (int k = 0; k < search_limit(s); ++k) {
    const WindowMoments w = window_moments(s, k);
    double value = kInf;
    if (w.mean > 0.0) {
      const double q = n * (w.t - (1.0 + c)) - (2.0 / beta - 1.0) * c;
      value = (beta / 4.0) * (m / n) * (m / n) * q * q + 2.0 * (k + 1);
    }
    result.criterion_values.push_back({k, value});
  }
  result.k_hat = argmin_smallest(result.criterion_values);
  return result;
}

DetectionResult estimate(const SampleSpectrum& s, EstimatorId id) {
  switch (id) {
    case EstimatorId::kNewRmtAic:
      return estimate_new(s);
    case EstimatorId::kWkAic:
      return estimate_wk_aic(s);
    case EstimatorId::kWkMdl:
      return estimate_wk_mdl(s);
  }
  throw DomainError("unknown estimator");
}

}  // namespace sigenum
