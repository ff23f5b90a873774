#include "sigenum/cli.hpp"

#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <type_traits>
#include <variant>

#include "CLI11.hpp"
#include "sigenum/eig.hpp"
#include "sigenum/estimators.hpp"
#include "sigenum/io.hpp"
#include "sigenum/rmt.hpp"

namespace sigenum::cli {
namespace {

constexpr int kDefaultSimulateTrials = 1000;
constexpr int kDefaultCltTrials = 5000;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int require_positive(const std::optional<int>& v, const char* name) {
  if (!v) throw DomainError(std::string("--") + name + " is required");
  if (*v < 1) throw DomainError(std::string("--") + name + " must be positive");
  return *v;
}

// Maps library exceptions onto the documented exit codes.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const ConvergenceFailure& e) {
    err << "eigensolver failure: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

}  // namespace

std::vector<GridPoint> parse_grid(const std::string& text) {
  std::vector<GridPoint> grid;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    long long n = 0, m = 0;
    if (colon == std::string::npos || !io::parse_int(item.substr(0, colon), n) ||
        !io::parse_int(item.substr(colon + 1), m))
      throw DomainError("grid entries must look like n:m, got '" + item + "'");
    if (n < 1 || m < 1 || n > 1'000'000 || m > 1'000'000)
      throw DomainError("grid dimensions must be positive, got '" + item + "'");
    grid.push_back({static_cast<int>(n), static_cast<int>(m)});
  }
  if (grid.empty()) throw DomainError("grid is empty");
  return grid;
}

std::vector<EstimatorId> parse_estimator_list(const std::string& text) {
  std::vector<EstimatorId> ids;
  for (const auto& item : split(text, ',')) ids.push_back(parse_estimator(item));
  if (ids.empty()) throw DomainError("no estimators selected");
  return ids;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split(text, ',')) {
    double v = 0.0;
    if (!io::parse_double(item, v)) throw DomainError("cannot parse '" + item + "' as a number");
    values.push_back(v);
  }
  return values;
}

int cmd_estimate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.input_path) throw DomainError("estimate needs an input file");
    std::ifstream file(*config.input_path);
    if (!file) throw io::ParseError(0, "cannot open '" + *config.input_path + "'");
    const io::InputFile input = io::read_input(file);

    const SampleSpectrum spectrum = std::visit(
        [&](const auto& in) -> SampleSpectrum {
          if constexpr (std::is_same_v<std::decay_t<decltype(in)>, io::EigenvalueFile>)
            return validate_spectrum(in.values, in.n, in.m, in.beta);
          else
            return scm_spectrum(in, config.method);
        },
        input);

    out << (config.verbose ? "estimator,k_hat,criteria\n" : "estimator,k_hat\n");
    for (EstimatorId id : config.estimators) {
      const DetectionResult r = estimate(spectrum, id);
      out << to_string(id) << ',' << r.k_hat;
      if (config.verbose) {
        out << ',';
        for (std::size_t i = 0; i < r.criterion_values.size(); ++i)
          out << (i ? ";" : "") << io::format_double(r.criterion_values[i].value);
      }
      out << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ExperimentPlan plan;
    plan.scenario = {config.signals, config.sigma2, field_from_beta(config.beta)};
    if (!config.grid.empty())
      plan.grid = config.grid;
    else if (config.n || config.m)
      plan.grid = {{require_positive(config.n, "n"), require_positive(config.m, "m")}};
    else
      throw DomainError("simulate needs --grid or --n/--m");
    plan.trials = config.trials.value_or(kDefaultSimulateTrials);
    plan.master_seed = config.seed;
    plan.estimators = config.estimators;
    plan.workers = config.workers;
    plan.method = config.method;

    const auto summaries = run_experiment(plan);
    out << "n,m,estimator,k,probability,stderr\n";
    for (const auto& s : summaries) {
      int k_max = static_cast<int>(config.signals.size());
      if (!s.counts.empty()) k_max = std::max(k_max, s.counts.rbegin()->first);
      k_max = std::min(k_max, std::min(s.n, s.m) - 1);
      for (int k = 0; k <= k_max; ++k) {
        out << s.n << ',' << s.m << ',' << to_string(s.estimator) << ',' << k << ','
            << io::format_double(detection_probability(s, k)) << ','
            << io::format_double(detection_stderr(s, k)) << '\n';
      }
    }
    return static_cast<int>(kOk);
  });
}

int cmd_keff(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const int n = require_positive(config.n, "n");
    const int m = require_positive(config.m, "m");
    const ScenarioSpec spec(config.signals, config.sigma2, n, m, field_from_beta(config.beta));
    const double threshold =
        phase_transition_threshold(spec.noise_variance(), static_cast<double>(n) / m);
    out << "threshold,k_eff\n"
        << io::format_double(threshold) << ',' << effective_num_signals(spec) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_limits(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    double c = 0.0;
    if (config.c) {
      c = *config.c;
    } else {
      c = static_cast<double>(require_positive(config.n, "n")) /
          require_positive(config.m, "m");
    }
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be positive");
    if (!(config.sigma2 > 0.0)) throw DomainError("sigma2 must be positive");

    // Validate everything before emitting any rows.
    std::vector<SpikedPrediction> rows;
    for (double lambda : config.signals) rows.push_back(spiked_limit(lambda, config.sigma2, c));

    const std::string threshold = io::format_double(phase_transition_threshold(config.sigma2, c));
    const std::string edge = io::format_double(bulk_edge(config.sigma2, c));
    out << "population_eigenvalue,limit,above_threshold,threshold,bulk_edge\n";
    for (const auto& r : rows) {
      out << io::format_double(r.population_eigenvalue) << ',' << io::format_double(r.limit) << ','
          << (r.above_threshold ? "true" : "false") << ',' << threshold << ',' << edge << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_clt_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    CltCheckPlan plan;
    plan.n = config.n.value_or(plan.n);
    plan.m = config.m.value_or(plan.m);
    if (plan.n < 1 || plan.m < 1) throw DomainError("n and m must be positive");
    plan.field = field_from_beta(config.beta);
    if (plan.field == Field::kQuaternion)
      throw UnsupportedField("clt-check simulates real or complex data only");
    plan.trials = config.trials.value_or(kDefaultCltTrials);
    plan.master_seed = config.seed;
    plan.workers = config.workers;

    const CltCheckReport r = run_clt_check(plan);
    const Matrix2& q = r.theory.covariance_q;
    const Matrix2& e = r.empirical_covariance;
    auto row = [&](const char* name, double empirical, double theoretical, double tol, bool ok) {
      out << name << ',' << io::format_double(empirical) << ',' << io::format_double(theoretical)
          << ',' << io::format_double(tol) << ',' << (ok ? "pass" : "fail") << '\n';
    };
    auto cov_ok = [&](int i, int j) {
      return std::abs(e[i][j] - q[i][j]) <= kCltCovarianceRelTol * q[i][j];
    };
    out << "quantity,empirical,theoretical,tolerance,result\n";
    row("mean_first", r.empirical_mean.first, 0.0, r.mean_tolerance[0],
        std::abs(r.empirical_mean.first) <= r.mean_tolerance[0]);
    row("mean_second", r.empirical_mean.second, 0.0, r.mean_tolerance[1],
        std::abs(r.empirical_mean.second) <= r.mean_tolerance[1]);
    row("cov_11", e[0][0], q[0][0], kCltCovarianceRelTol * q[0][0], cov_ok(0, 0));
    row("cov_12", e[0][1], q[0][1], kCltCovarianceRelTol * q[0][1], cov_ok(0, 1));
    row("cov_22", e[1][1], q[1][1], kCltCovarianceRelTol * q[1][1], cov_ok(1, 1));
    out << "overall," << (r.pass() ? "pass" : "fail") << ",,,\n";
    return static_cast<int>(r.pass() ? kOk : kStatisticalFailure);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimate the number of signals in white noise from sample eigenvalues"};
  app.require_subcommand(1);

  RunConfig config;
  std::string signals, grid, estimators, solver = "tridiagonal";
  int n = 0, m = 0, trials = 0;
  double c = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", config.output_path, "Write CSV here instead of stdout");
    sub->add_option("--beta", config.beta, "Field: 1 real, 2 complex, 4 quaternion");
    sub->add_option("--workers", config.workers, "Worker threads (0 = all cores)");
    sub->add_option("--solver", solver, "Eigensolver: tridiagonal or jacobi");
  };
  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Sensor count");
    sub->add_option("--m", m, "Snapshot count");
    sub->add_option("--sigma2", config.sigma2, "Noise variance");
    sub->add_option("--signals", signals, "Signal eigenvalues, comma separated");
  };

  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate the signal count from a file");
  add_common(estimate_cmd);
  estimate_cmd->add_option("input,--input,-i", config.input_path, "Eigenvalue or snapshot file");
  estimate_cmd->add_option("--estimators", estimators, "Subset of new,aic,mdl");
  estimate_cmd->add_flag("--verbose,-v", config.verbose, "Dump per-k criterion values");

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo detection probabilities");
  add_common(simulate_cmd);
  add_scenario(simulate_cmd);
  simulate_cmd->add_option("--grid", grid, "Grid of n:m pairs, comma separated");
  simulate_cmd->add_option("--trials", trials, "Trials per grid point");
  simulate_cmd->add_option("--seed", config.seed, "Master seed");
  simulate_cmd->add_option("--estimators", estimators, "Subset of new,aic,mdl");

  auto* keff_cmd = app.add_subcommand("keff", "Effective number of identifiable signals");
  add_common(keff_cmd);
  add_scenario(keff_cmd);

  auto* limits_cmd = app.add_subcommand("limits", "Spiked sample-eigenvalue limits");
  add_common(limits_cmd);
  add_scenario(limits_cmd);
  limits_cmd->add_option("--c", c, "Dimension ratio n/m (overrides --n/--m)");

  auto* clt_cmd = app.add_subcommand("clt-check", "Check the eigenvalue-moment CLT empirically");
  add_common(clt_cmd);
  clt_cmd->add_option("--n", n, "Sensor count");
  clt_cmd->add_option("--m", m, "Snapshot count");
  clt_cmd->add_option("--trials", trials, "Signal-free trials (minimum 1000)");
  clt_cmd->add_option("--seed", config.seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg_out, msg_err;
    const int code = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    err << msg_err.str();
    return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kParseFailure);
  }

  CLI::App* active = app.get_subcommands().front();
  auto given = [&](const char* name) {
    const CLI::Option* opt = active->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  const int code = guarded(err, [&] {
    if (given("--n")) config.n = n;
    if (given("--m")) config.m = m;
    if (given("--c")) config.c = c;
    if (given("--trials")) config.trials = trials;
    if (!signals.empty()) config.signals = parse_real_list(signals);
    if (!grid.empty()) config.grid = parse_grid(grid);
    if (!estimators.empty()) config.estimators = parse_estimator_list(estimators);
    if (solver == "jacobi")
      config.method = EigenMethod::kJacobi;
    else if (solver != "tridiagonal")
      throw DomainError("unknown solver '" + solver + "'");
    return static_cast<int>(kOk);
  });
  if (code != kOk) return code;

  const std::string name = active->get_name();
  if (name == "estimate") config.subcommand = Subcommand::kEstimate;
  if (name == "simulate") config.subcommand = Subcommand::kSimulate;
  if (name == "keff") config.subcommand = Subcommand::kKeff;
  if (name == "limits") config.subcommand = Subcommand::kLimits;
  if (name == "clt-check") config.subcommand = Subcommand::kCltCheck;

  std::ofstream file;
  std::ostream* sink = &out;
  if (config.output_path) {
    file.open(*config.output_path);
    if (!file) {
      err << "cannot open '" << *config.output_path << "' for writing\n";
      return kValidationFailure;
    }
    sink = &file;
  }
  sink->imbue(std::locale::classic());

  switch (config.subcommand) {
    case Subcommand::kEstimate:
      return cmd_estimate(config, *sink, err);
    case Subcommand::kSimulate:
      return cmd_simulate(config, *sink, err);
    case Subcommand::kKeff:
      return cmd_keff(config, *sink, err);
    case Subcommand::kLimits:
      return cmd_limits(config, *sink, err);
    case Subcommand::kCltCheck:
      return cmd_clt_check(config, *sink, err);
  }
  return kOk;
}

}  // namespace sigenum::cli
