#include <cmath>

#include "doctest.h"
#include "sigenum/montecarlo.hpp"

using namespace sigenum;

namespace {

ExperimentPlan two_signal_plan(std::vector<GridPoint> grid, int trials) {
  ExperimentPlan plan;
  plan.scenario = {{10.0, 3.0}, 1.0, Field::kReal};
  plan.grid = std::move(grid);
  plan.trials = trials;
  plan.master_seed = 77;
  return plan;
}

}  // namespace

TEST_CASE("single noise-only trial is reproducible") {
  ExperimentPlan plan;
  plan.scenario = {{}, 1.0, Field::kReal};
  plan.grid = {{8, 32}};
  plan.trials = 1;
  plan.estimators = {EstimatorId::kNewRmtAic};
  const auto a = run_experiment(plan);
  REQUIRE(a.size() == 1);
  CHECK(a[0].trials == 1);
  CHECK(a[0].counts.size() == 1);
  CHECK(a == run_experiment(plan));
}

TEST_CASE("summaries partition the trials and respect the search range") {
  const auto summaries = run_experiment(two_signal_plan({{16, 64}, {32, 8}}, 50));
  REQUIRE(summaries.size() == 6);
  for (const auto& s : summaries) {
    long total = 0;
    for (auto [k, count] : s.counts) {
      CHECK(k >= 0);
      CHECK(k < std::min(s.n, s.m));
      total += count;
    }
    CHECK(total == s.trials);
    double p = 0.0;
    for (int k = 0; k < std::min(s.n, s.m); ++k) p += detection_probability(s, k);
    CHECK(p == doctest::Approx(1.0));
  }
  CHECK(summaries[0].estimator == EstimatorId::kNewRmtAic);
  CHECK(summaries[1].estimator == EstimatorId::kWkAic);
  CHECK(summaries[2].estimator == EstimatorId::kWkMdl);
  CHECK(summaries[3].n == 32);
}

TEST_CASE("results do not depend on the worker count") {
  auto plan = two_signal_plan({{24, 96}, {48, 12}}, 40);
  plan.workers = 1;
  const auto serial = run_experiment(plan);
  for (unsigned w : {2u, 3u, 8u}) {
    plan.workers = w;
    CHECK(run_experiment(plan) == serial);
  }
}

TEST_CASE("adding grid points leaves earlier points untouched") {
  const auto one = run_experiment(two_signal_plan({{20, 80}}, 30));
  const auto two = run_experiment(two_signal_plan({{20, 80}, {40, 160}}, 30));
  REQUIRE(two.size() == 6);
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == two[i]);
  CHECK(global_trial_index(2, 30, 5) == 65);
}

TEST_CASE("detection probability arithmetic") {
  TrialSummary s{10, 20, EstimatorId::kWkMdl, {{2, 900}, {1, 100}}, 1000};
  CHECK(detection_probability(s, 2) == doctest::Approx(0.9));
  CHECK(detection_probability(s, 1) == doctest::Approx(0.1));
  CHECK(detection_probability(s, 5) == 0.0);
  CHECK(detection_stderr(s, 2) == doctest::Approx(std::sqrt(0.9 * 0.1 / 1000)));
  CHECK(detection_stderr(s, 5) == 0.0);
}

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(run_experiment(two_signal_plan({}, 10)), DomainError);
  CHECK_THROWS_AS(run_experiment(two_signal_plan({{16, 64}}, 0)), DomainError);
  CHECK_THROWS_AS(run_experiment(two_signal_plan({{2, 64}}, 10)), DomainError);  // 2 signals, n = 2
  auto quaternion = two_signal_plan({{16, 64}}, 10);
  quaternion.scenario.field = Field::kQuaternion;
  CHECK_THROWS_AS(run_experiment(quaternion), UnsupportedField);
  auto none = two_signal_plan({{16, 64}}, 10);
  none.estimators.clear();
  CHECK_THROWS_AS(run_experiment(none), DomainError);
}

TEST_CASE("new estimator finds both signals at m = 4n on a small grid") {
  auto plan = two_signal_plan({{64, 256}}, 200);
  plan.estimators = {EstimatorId::kNewRmtAic};
  const auto s = run_experiment(plan);
  CHECK(detection_probability(s[0], 2) > 0.8);
}

TEST_CASE("complex scenarios run through the same pipeline") {
  auto plan = two_signal_plan({{32, 128}}, 100);
  plan.scenario.field = Field::kComplex;
  const auto s = run_experiment(plan);
  CHECK(detection_probability(s[0], 2) > 0.8);
}

TEST_CASE("jacobi and tridiagonal pipelines tally identically") {
  auto plan = two_signal_plan({{16, 64}, {24, 8}}, 30);
  const auto ql = run_experiment(plan);
  plan.method = EigenMethod::kJacobi;
  CHECK(run_experiment(plan) == ql);
}

TEST_CASE("clt check guards its trial count") {
  CltCheckPlan plan;
  plan.trials = 10;
  CHECK_THROWS_AS(run_clt_check(plan), DomainError);
}

TEST_CASE("clt check at the minimum trial count") {
  CltCheckPlan plan;
  plan.n = 40;
  plan.m = 80;
  plan.trials = kMinCltTrials;
  plan.field = Field::kComplex;
  plan.master_seed = 3;
  const auto r = run_clt_check(plan);
  CHECK(r.theory.c == 0.5);
  CHECK(r.mean_ok);
  CHECK(r.empirical_covariance[0][1] == r.empirical_covariance[1][0]);
  CHECK(r.mean_tolerance[0] == doctest::Approx(4.0 * std::sqrt(0.5 / 1000)));
}
