#include "sigenum/rmt.hpp"

#include <cmath>
#include <string>

namespace sigenum {

Matrix2 q_matrix(double c, int beta) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be positive and finite");
  const double scale = 2.0 / static_cast<double>(beta_of(field_from_beta(beta)));
  const double off = 2.0 * c * (c + 1.0);
  return {{{scale * c, scale * off}, {scale * off, scale * 2.0 * c * (2.0 * c * c + 5.0 * c + 2.0)}}};
}

CltPair clt_statistics(const SampleSpectrum& s) {
  const double n = s.n();
  const double c = n / static_cast<double>(s.m());
  double sum = 0.0, sum_sq = 0.0;
  for (double l : s.eigenvalues()) {
    sum += l;
    sum_sq += l * l;
  }
  const double correction = (2.0 / s.beta() - 1.0) * c;
  return {sum - n, sum_sq - n * (1.0 + c) - correction};
}

MomentCLT moment_clt(int n, int m, int beta) {
  if (n < 1 || m < 1) throw DomainError("n and m must be positive");
  MomentCLT out;
  out.n = n;
  out.m = m;
  out.c = static_cast<double>(n) / static_cast<double>(m);
  out.beta = beta;
  out.centering_offset = {0.0, (2.0 / beta - 1.0) * out.c};
  out.covariance_q = q_matrix(out.c, beta);
  return out;
}

double phase_transition_threshold(double sigma2, double c) {
  return sigma2 * (1.0 + std::sqrt(c));
}

double bulk_edge(double sigma2, double c) {
  const double root = 1.0 + std::sqrt(c);
  return sigma2 * root * root;
}

SpikedPrediction spiked_limit(double lambda_j, double sigma2, double c) {
  if (!std::isfinite(lambda_j) || !std::isfinite(sigma2) || !std::isfinite(c))
    throw NonFiniteInput("spiked_limit inputs must be finite");
  if (!(sigma2 > 0.0)) throw DomainError("sigma2 must be positive");
  if (!(c > 0.0)) throw DomainError("c must be positive");
  if (lambda_j < sigma2) throw DomainError("population eigenvalue below the noise floor");

  SpikedPrediction out;
  out.population_eigenvalue = lambda_j;
  out.above_threshold = lambda_j > phase_transition_threshold(sigma2, c);
  out.limit = out.above_threshold ? lambda_j * (1.0 + sigma2 * c / (lambda_j - sigma2))
                                  : bulk_edge(sigma2, c);
  return out;
}

int effective_num_signals(const ScenarioSpec& spec) {
  const double threshold = phase_transition_threshold(
      spec.noise_variance(), static_cast<double>(spec.n()) / static_cast<double>(spec.m()));
  int count = 0;
  for (double l : spec.signal_eigenvalues())
    if (l > threshold) ++count;
  return count;
}

std::pair<double, double> two_source_eigenvalues(double p1, double p2, double norm1,
                                                 double norm2, double inner, double sigma2) {
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw DomainError("source powers must be positive");
  if (!(norm1 > 0.0) || !(norm2 > 0.0)) throw DomainError("vector norms must be positive");
  if (!(sigma2 > 0.0)) throw DomainError("sigma2 must be positive");
  if (inner < 0.0 || inner > norm1 * norm2)
    throw DomainError("|<v1, v2>| violates Cauchy-Schwarz");

  const double a = p1 * norm1 * norm1;
  const double b = p2 * norm2 * norm2;
  const double disc = std::hypot(a - b, 2.0 * std::sqrt(p1 * p2) * inner);
  const double mid = sigma2 + 0.5 * (a + b);
  return {mid + 0.5 * disc, mid - 0.5 * disc};
}

bool identifiability_check(double p, double norm, double inner, double sigma2, int n, int m) {
  if (p < 0.0 || norm < 0.0 || inner < 0.0 || sigma2 < 0.0)
    throw DomainError("identifiability inputs must be non-negative");
  if (n < 1 || m < 1) throw DomainError("n and m must be positive");
  const double norm_sq = norm * norm;
  if (inner > norm_sq) throw DomainError("|<v1, v2>| exceeds ||v||^2");
  if (norm_sq == 0.0) return false;
  const double lhs = p * norm_sq * (1.0 - inner / norm_sq);
  return lhs > sigma2 * std::sqrt(static_cast<double>(n) / static_cast<double>(m));
}

}  // namespace sigenum
