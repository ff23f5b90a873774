// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "sigenum/cli.hpp"
#include "sigenum/eig.hpp"
#include "sigenum/estimators.hpp"
#include "sigenum/montecarlo.hpp"
#include "sigenum/rmt.hpp"

using namespace sigenum;
using cplx = std::complex<double>;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("[%s] %s  %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
  return buf;
}

const std::vector<double> kPaperSignals{10.0, 3.0};
constexpr int kTrials = 1000;

void keff_exactness() {
  bool ok = true;
  double worst_us = 0.0;
  for (int n = 4; n <= 4096; n *= 2) {
    const auto t0 = std::chrono::steady_clock::now();
    const int wide = effective_num_signals(ScenarioSpec(kPaperSignals, 1.0, n, 4 * n, Field::kReal));
    const int narrow = effective_num_signals(ScenarioSpec(kPaperSignals, 1.0, n, n / 4, Field::kReal));
    const auto t1 = std::chrono::steady_clock::now();
    worst_us = std::max(worst_us, std::chrono::duration<double, std::micro>(t1 - t0).count());
    ok = ok && wide == 2 && narrow == 1;
    ok = ok && phase_transition_threshold(1.0, 0.25) == 1.5 && phase_transition_threshold(1.0, 4.0) == 3.0;
  }
  ok = ok && worst_us < 1000.0;
  report("AC1 k_eff exactness", ok,
         fmt("k_eff=2 at m=4n, k_eff=1 at m=n/4 for n=4..4096; slowest pair %.1f us", worst_us));
}

void detection_criteria() {
  ExperimentPlan plan;
  plan.scenario = {kPaperSignals, 1.0, Field::kReal};
  plan.grid = {{64, 256}, {128, 512}, {256, 1024}, {256, 64}};
  plan.trials = kTrials;
  plan.master_seed = 20080401;
  plan.estimators = {EstimatorId::kNewRmtAic, EstimatorId::kWkMdl};
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = run_experiment(plan);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Layout: grid-major, NEW then MDL.
  const auto& new64 = s[0];
  const auto& new128 = s[2];
  const auto& new256 = s[4];
  const auto& new_narrow = s[6];
  const auto& mdl_narrow = s[7];

  const double p64 = detection_probability(new64, 2);
  const double p128 = detection_probability(new128, 2);
  const double p256 = detection_probability(new256, 2);
  auto within = [](const TrialSummary& lo, const TrialSummary& hi) {
    const double se = std::hypot(detection_stderr(lo, 2), detection_stderr(hi, 2));
    return detection_probability(hi, 2) >= detection_probability(lo, 2) - 2.0 * se;
  };
  const bool monotone = within(new64, new128) && within(new128, new256);
  report("AC2 new estimator, m=4n", p256 >= 0.90 && monotone,
         fmt("P(k=2): n=64 %.3f, n=128 %.3f, n=256 %.3f (need >= 0.90, non-decreasing within 2 SE); "
             "%.0f s",
             p64, p128, p256, secs));

  const double p_one = detection_probability(new_narrow, 1);
  report("AC3 new estimator, m=n/4", p_one >= 0.80,
         fmt("n=256 m=64: P(k_NEW=1) = %.3f (need >= 0.80)", p_one));

  const double p_zero = detection_probability(mdl_narrow, 0);
  report("AC4 WK MDL degeneracy", p_zero >= 0.99,
         fmt("n=256 m=64: P(k_MDL=0) = %.3f (need >= 0.99)", p_zero));
}

void spiked_convergence() {
  const int n = 1000, m = 250, trials = 20;
  const double c = static_cast<double>(n) / m;
  auto mean_top = [&](double lambda, std::uint64_t seed) {
    const auto spectra =
        simulate_spectra(ScenarioSpec({lambda}, 1.0, n, m, Field::kReal), trials, seed, 0, 0);
    double sum = 0.0;
    for (const auto& sp : spectra) sum += sp[0];
    return sum / trials;
  };
  const double above = mean_top(10.0, 11);
  const double below = mean_top(3.0, 12);
  const double target_above = spiked_limit(10.0, 1.0, c).limit;
  const double target_below = spiked_limit(3.0, 1.0, c).limit;
  const bool ok = std::abs(target_above - 130.0 / 9.0) < 1e-12 && target_below == 9.0 &&
                  std::abs(above - target_above) <= 0.05 * target_above &&
                  std::abs(below - target_below) <= 0.05 * target_below;
  report("AC5 spiked-limit convergence", ok,
         fmt("mean l1: lambda=10 -> %.3f (limit %.3f), lambda=3 -> %.3f (bulk edge %.0f), 5%% bands",
             above, target_above, below, target_below));
}

void clt() {
  for (Field f : {Field::kReal, Field::kComplex}) {
    CltCheckPlan plan;
    plan.n = 100;
    plan.m = 200;
    plan.field = f;
    plan.trials = 5000;
    plan.master_seed = 7 + static_cast<std::uint64_t>(beta_of(f));
    const auto r = run_clt_check(plan);
    const auto& q = r.theory.covariance_q;
    const auto& e = r.empirical_covariance;
    const std::string id = "AC6 moment CLT, beta=" + std::to_string(beta_of(f));
    report(id.c_str(), r.pass(),
           fmt("means (%.3f, %.3f) vs 4-sigma (%.3f, %.3f); ", r.empirical_mean.first,
               r.empirical_mean.second, r.mean_tolerance[0], r.mean_tolerance[1]) +
               fmt("cov11 %.3f/%.3f cov12 %.3f/%.3f ", e[0][0], q[0][0], e[0][1], q[0][1]) +
               fmt("cov22 %.3f/%.3f (10%%)", e[1][1], q[1][1]));
  }
}

void eigensolver_oracle() {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.1, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool complex = trial % 2 == 1;
    const int n = 4;
    std::vector<cplx> v1(n), v2(n);
    for (auto& v : v1) v = {g(rng), complex ? g(rng) : 0.0};
    for (auto& v : v2) v = {g(rng), complex ? g(rng) : 0.0};
    const double p1 = u(rng), p2 = u(rng), sigma2 = u(rng);
    cplx inner = 0.0;
    double n1 = 0.0, n2 = 0.0;
    std::vector<cplx> r(n * n);
    for (int i = 0; i < n; ++i) {
      inner += std::conj(v1[i]) * v2[i];
      n1 += std::norm(v1[i]);
      n2 += std::norm(v2[i]);
      for (int j = 0; j < n; ++j)
        r[i * n + j] = p1 * v1[i] * std::conj(v1[j]) + p2 * v2[i] * std::conj(v2[j]) +
                       (i == j ? sigma2 : 0.0);
    }
    const auto [l1, l2] =
        two_source_eigenvalues(p1, p2, std::sqrt(n1), std::sqrt(n2), std::abs(inner), sigma2);
    const auto m = HermitianMatrix::from_complex(n, r);
    for (EigenMethod method : {EigenMethod::kJacobi, EigenMethod::kTridiagonalQl}) {
      const auto l = hermitian_eigenvalues(m, method);
      worst = std::max({worst, std::abs(l[0] - l1) / l1, std::abs(l[1] - l2) / l2,
                        std::abs(l[2] - sigma2) / sigma2, std::abs(l[3] - sigma2) / sigma2});
    }
  }
  report("AC7 eigensolver vs two-source closed form", worst <= 1e-8,
         fmt("200 random 4x4 covariances, both solvers: worst relative error %.2e (need <= 1e-8)",
             worst));
}

void property_suites() {
  // Scale invariance on simulated spectra from both regimes.
  bool scale_ok = true;
  int scale_cases = 0;
  for (auto [n, m] : {std::pair{64, 256}, std::pair{64, 16}, std::pair{40, 40}}) {
    const auto spectra = simulate_spectra(ScenarioSpec(kPaperSignals, 1.0, n, m, Field::kReal),
                                          50, 99, 0, 0);
    for (const auto& s : spectra) {
      for (double gamma : {1e-3, 1.0, 1e3}) {
        std::vector<double> scaled = s.eigenvalues();
        for (double& v : scaled) v *= gamma;
        const auto t = validate_spectrum(scaled, n, m, 1);
        for (auto id : {EstimatorId::kNewRmtAic, EstimatorId::kWkAic, EstimatorId::kWkMdl}) {
          scale_ok = scale_ok && estimate(s, id).k_hat == estimate(t, id).k_hat;
          ++scale_cases;
        }
      }
    }
  }
  report("AC8a scale invariance", scale_ok,
         fmt("%.0f (spectrum, gamma, estimator) cases, gamma in {1e-3, 1, 1e3}", scale_cases));

  // t_{n,k} >= 1 on every window of random and simulated spectra.
  bool t_ok = true;
  int windows = 0;
  std::mt19937_64 rng(6);
  std::exponential_distribution<double> ex(1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    std::vector<double> l(n);
    for (double& v : l) v = ex(rng);
    const auto s = validate_spectrum(l, n, 1 + static_cast<int>(rng() % 100), 1);
    for (int k = 0; k < n; ++k) {
      const auto w = window_moments(s, k);
      t_ok = t_ok && w.t >= 1.0 - 1e-14;
      ++windows;
    }
  }
  report("AC8b t_{n,k} >= 1", t_ok, fmt("%.0f windows", windows));

  // Identifiability <=> lambda2 above threshold.
  bool eq_ok = true;
  int checked = 0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (checked < 1000) {
    const double p = 0.05 + 5.0 * u(rng);
    const double norm = 0.2 + 3.0 * u(rng);
    const double inner = norm * norm * u(rng);
    const double sigma2 = 0.1 + 2.0 * u(rng);
    const int n = 1 + static_cast<int>(rng() % 1000);
    const int m = 1 + static_cast<int>(rng() % 1000);
    const double threshold = phase_transition_threshold(sigma2, static_cast<double>(n) / m);
    const double l2 = two_source_eigenvalues(p, p, norm, norm, inner, sigma2).second;
    if (std::abs(l2 - threshold) < 1e-9 * threshold) continue;
    eq_ok = eq_ok && identifiability_check(p, norm, inner, sigma2, n, m) == (l2 > threshold);
    ++checked;
  }
  report("AC8c identifiability <=> lambda2 > threshold", eq_ok,
         fmt("%.0f randomized equal-power equal-norm inputs", checked));

  // Byte-identical simulate output across worker counts.
  auto simulate = [](const char* workers) {
    const char* argv[] = {"sigenum", "simulate", "--signals", "10,3", "--grid", "32:128,64:16",
                          "--trials", "200", "--seed", "17", "--workers", workers};
    std::ostringstream out, err;
    const int code = cli::run(12, argv, out, err);
    return code == 0 ? out.str() : std::string("error: ") + err.str();
  };
  const std::string one = simulate("1");
  const std::string four = simulate("4");
  const std::string again = simulate("1");
  report("AC8d reproducible simulate across worker counts",
         one == four && one == again && one.rfind("n,m,estimator", 0) == 0,
         fmt("%.0f bytes compared (workers 1 vs 4 vs rerun)", static_cast<double>(one.size())));
}

}  // namespace

int main() {
  keff_exactness();
  detection_criteria();
  spiked_convergence();
  clt();
  eigensolver_oracle();
  property_suites();
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
