#include "sigenum/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "sigenum/estimators.hpp"
#include "sigenum/randgen.hpp"

namespace sigenum {
namespace {

unsigned resolve_workers(unsigned requested, int tasks) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return std::min<unsigned>(w, static_cast<unsigned>(std::max(tasks, 1)));
}

// Runs body(t) for t in [0, count) over `workers` threads. The first failure
// by trial index wins so the reported error does not depend on scheduling.
template <typename Body>
void parallel_for(int count, unsigned workers, Body body) {
  std::atomic<int> next{0};
  std::mutex mu;
  std::optional<int> failed_at;
  std::exception_ptr failure;

  auto work = [&] {
    for (int t = next.fetch_add(1); t < count; t = next.fetch_add(1)) {
      try {
        body(t);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failed_at || t < *failed_at) {
          failed_at = t;
          failure = std::current_exception();
        }
      }
    }
  };

  const unsigned n_workers = resolve_workers(workers, count);
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void validate_plan(const ExperimentPlan& plan) {
  if (plan.grid.empty()) throw DomainError("experiment grid is empty");
  if (plan.trials < 1) throw DomainError("trials must be at least 1");
  if (plan.estimators.empty()) throw DomainError("no estimators selected");
  for (const auto& point : plan.grid) {
    const ScenarioSpec spec = plan.scenario.at(point.n, point.m);
    if (spec.field() == Field::kQuaternion)
      throw UnsupportedField("simulation supports beta = 1 or 2 only");
  }
}

std::uint64_t global_trial_index(std::size_t grid_index, int trials, int t) {
  return static_cast<std::uint64_t>(grid_index) * static_cast<std::uint64_t>(trials) +
         static_cast<std::uint64_t>(t);
}

std::vector<SampleSpectrum> simulate_spectra(const ScenarioSpec& spec, int trials,
                                             std::uint64_t master_seed,
                                             std::uint64_t first_index, unsigned workers,
                                             EigenMethod method) {
  if (trials < 0) throw DomainError("trials must be non-negative");
  std::vector<std::optional<SampleSpectrum>> slots(static_cast<std::size_t>(trials));
  parallel_for(trials, workers, [&](int t) {
    const std::uint64_t index = first_index + static_cast<std::uint64_t>(t);
    try {
      const SnapshotMatrix x = generate_snapshots(spec, {master_seed, index});
      slots[static_cast<std::size_t>(t)] = scm_spectrum(x, method);
    } catch (const ConvergenceFailure& e) {
      throw ConvergenceFailure(std::string(e.what()) + " [n=" + std::to_string(spec.n()) +
                               ", m=" + std::to_string(spec.m()) +
                               ", trial=" + std::to_string(index) + "]");
    }
  });

  std::vector<SampleSpectrum> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<TrialSummary> run_experiment(const ExperimentPlan& plan) {
  validate_plan(plan);
  std::vector<TrialSummary> summaries;
  for (std::size_t g = 0; g < plan.grid.size(); ++g) {
    const GridPoint point = plan.grid[g];
    const ScenarioSpec spec = plan.scenario.at(point.n, point.m);
    const auto spectra = simulate_spectra(spec, plan.trials, plan.master_seed,
                                          global_trial_index(g, plan.trials, 0), plan.workers,
                                          plan.method);
    for (EstimatorId id : plan.estimators) {
      TrialSummary summary{point.n, point.m, id, {}, plan.trials};
      for (const auto& s : spectra) ++summary.counts[estimate(s, id).k_hat];
      summaries.push_back(std::move(summary));
    }
  }
  return summaries;
}

double detection_probability(const TrialSummary& summary, int target_k) {
  if (summary.trials <= 0) return 0.0;
  const auto it = summary.counts.find(target_k);
  if (it == summary.counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(summary.trials);
}

double detection_stderr(const TrialSummary& summary, int target_k) {
  if (summary.trials <= 0) return 0.0;
  const double p = detection_probability(summary, target_k);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(summary.trials));
}

CltCheckReport run_clt_check(const CltCheckPlan& plan) {
  if (plan.trials < kMinCltTrials)
    throw DomainError("clt check needs at least " + std::to_string(kMinCltTrials) + " trials");
  const ScenarioSpec spec({}, 1.0, plan.n, plan.m, plan.field);
  const auto spectra = simulate_spectra(spec, plan.trials, plan.master_seed, 0, plan.workers);

  CltCheckReport report;
  report.theory = moment_clt(plan.n, plan.m, beta_of(plan.field));
  const double trials = plan.trials;

  std::vector<CltPair> pairs;
  pairs.reserve(spectra.size());
  for (const auto& s : spectra) pairs.push_back(clt_statistics(s));

  double mean1 = 0.0, mean2 = 0.0;
  for (const auto& p : pairs) {
    mean1 += p.first;
    mean2 += p.second;
  }
  mean1 /= trials;
  mean2 /= trials;
  double c11 = 0.0, c12 = 0.0, c22 = 0.0;
  for (const auto& p : pairs) {
    const double d1 = p.first - mean1, d2 = p.second - mean2;
    c11 += d1 * d1;
    c12 += d1 * d2;
    c22 += d2 * d2;
  }
  const double denom = trials - 1.0;
  report.empirical_mean = {mean1, mean2};
  report.empirical_covariance = {{{c11 / denom, c12 / denom}, {c12 / denom, c22 / denom}}};

  const Matrix2& q = report.theory.covariance_q;
  report.mean_tolerance = {kCltMeanSigmas * std::sqrt(q[0][0] / trials),
                           kCltMeanSigmas * std::sqrt(q[1][1] / trials)};
  report.mean_ok = std::abs(mean1) <= report.mean_tolerance[0] &&
                   std::abs(mean2) <= report.mean_tolerance[1];
  report.covariance_ok = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(report.empirical_covariance[i][j] - q[i][j]) > kCltCovarianceRelTol * q[i][j])
        report.covariance_ok = false;
  return report;
}

}  // namespace sigenum
