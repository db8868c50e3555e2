#include "scsa/experiments.hpp"

#include "scsa/prox.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace scsa {

namespace {

constexpr double kCr = 1.05;
constexpr double kAlphaR = 0.5;
constexpr double kIltBeta = 1e-2;
constexpr double kRwEpsilon = 0.1;
constexpr int kRwRounds = 4;
constexpr double kDefaultC = 0.1;
constexpr int kWl1BenchIters = 60000;

SupportSet true_support(const Vector& x_true) {
  SupportSet tau;
  for (Index i = 0; i < x_true.size(); ++i)
    if (x_true(i) != 0.0) tau.push_back(i);
  return tau;
}

double solver_tol(double lambda) { return std::min(1e-4, 1e-3 * lambda); }

double multiplier_for(const std::map<std::string, double>& multipliers,
                      const std::string& algorithm) {
  auto it = multipliers.find(algorithm);
  return it == multipliers.end() ? 1.0 : it->second;
}

} // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::CSweep: return "c-sweep";
    case ExperimentKind::NoiseFreeSweep: return "noise-free-sweep";
    case ExperimentKind::NoisySweep: return "noisy-sweep";
    case ExperimentKind::RademacherSweep: return "rademacher-sweep";
    case ExperimentKind::NoiseLevelSweep: return "noise-level-sweep";
    case ExperimentKind::OperatorPlot: return "operator-plot";
  }
  throw std::logic_error("unreachable");
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  for (auto k : {ExperimentKind::CSweep, ExperimentKind::NoiseFreeSweep,
                 ExperimentKind::NoisySweep, ExperimentKind::RademacherSweep,
                 ExperimentKind::NoiseLevelSweep, ExperimentKind::OperatorPlot})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown experiment kind: " + s);
}

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {
      "l1",  "rw-l1", "scsa-lp", "scsa-it",   "scsa-fit", "ist",
      "fista", "ilt",  "ist-p-0.5", "ist-p-0.1", "oracle"};
  return names;
}

MetricRecord run_single(const std::string& algorithm, const Problem& problem,
                        double c,
                        const std::map<std::string, double>& multipliers,
                        Vector* x_hat_out) {
  const Matrix& A = problem.A;
  const Vector& b = problem.b;

  MetricRecord rec;
  rec.algorithm = algorithm;
  rec.n = A.rows();
  rec.m = A.cols();
  rec.s = problem.s;
  rec.sigma_w = problem.sigma_w;
  rec.c = c;
  rec.seed = problem.seed;

  const auto start = std::chrono::steady_clock::now();
  Vector x_hat;
  try {
    if (algorithm == "l1") {
      // Instances at the phase transition identify their support slowly;
      // give the one-shot solve more headroom than the inner-loop default.
      int iters = 0;
      x_hat = solve_weighted_l1({A, b, Vector::Ones(A.cols())}, 1e-8,
                                kWl1BenchIters, &iters);
      rec.iters = iters;
    } else if (algorithm == "rw-l1") {
      SolverResult r =
          reweighted_l1(A, b, kRwEpsilon, kRwRounds, 1e-8, kWl1BenchIters);
      x_hat = std::move(r.x_hat);
      rec.iters = r.inner_iters_total;
    } else if (algorithm == "scsa-lp") {
      ScsaConfig cfg = ScsaConfig::noise_free_lp(c);
      cfg.wl1_max_iter = kWl1BenchIters;
      SolverResult r = scsa_solve(A, b, cfg);
      x_hat = std::move(r.x_hat);
      rec.iters = r.inner_iters_total;
    } else if (algorithm == "scsa-it" || algorithm == "scsa-fit") {
      const double lambda = lasso_lambda(problem.sigma_w, A.cols(), kCr,
                                         kAlphaR);
      SolverResult r = scsa_solve(A, b,
                            algorithm == "scsa-it"
                                ? ScsaConfig::noisy_it(lambda, c)
                                : ScsaConfig::noisy_fit(lambda, c));
      x_hat = std::move(r.x_hat);
      rec.iters = r.inner_iters_total;
    } else if (algorithm == "ist" || algorithm == "fista") {
      const double lambda = lasso_lambda(problem.sigma_w, A.cols(), kCr,
                                         kAlphaR);
      const LassoParams params{lambda, default_step_size(A)};
      SolverResult r = algorithm == "ist"
                           ? ist_lasso(A, b, params, solver_tol(lambda), 20000)
                           : fista_lasso(A, b, params, solver_tol(lambda),
                                         20000);
      x_hat = std::move(r.x_hat);
      rec.iters = r.inner_iters_total;
    } else if (algorithm == "ilt") {
      const double lambda = multiplier_for(multipliers, algorithm) *
                            lasso_lambda(problem.sigma_w, A.cols(), kCr,
                                         kAlphaR);
      SolverResult r = ilt(A, b, lambda, kIltBeta, default_step_size(A),
                           solver_tol(lambda), 20000);
      x_hat = std::move(r.x_hat);
      rec.iters = r.inner_iters_total;
    } else if (algorithm == "ist-p-0.5" || algorithm == "ist-p-0.1") {
      const double p = algorithm == "ist-p-0.5" ? 0.5 : 0.1;
      const double lambda = multiplier_for(multipliers, algorithm) *
                            lasso_lambda(problem.sigma_w, A.cols(), kCr,
                                         kAlphaR);
      SolverResult r = ist_p(A, b, lambda, p, default_step_size(A),
                             solver_tol(lambda), 20000);
      x_hat = std::move(r.x_hat);
      rec.iters = r.inner_iters_total;
    } else if (algorithm == "oracle") {
      x_hat = oracle_estimator(A, b, true_support(problem.x_true));
      rec.iters = 0;
    } else {
      throw std::invalid_argument("unknown algorithm: " + algorithm);
    }
  } catch (const std::exception& err) {
    rec.status = std::string("error: ") + err.what();
    for (char& ch : rec.status)
      if (ch == ',' || ch == '\n') ch = ';';
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return rec;
  }

  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  rec.snr_db = snr_rec(problem.x_true, x_hat);
  rec.success = rec.snr_db >= kSuccessSnrDb;
  rec.support_exact = srr(problem.x_true, x_hat, problem.s);
  rec.sq_error = (problem.x_true - x_hat).squaredNorm();
  if (x_hat_out) *x_hat_out = std::move(x_hat);
  return rec;
}

namespace {

struct Configuration {
  Index s = 0;
  double sigma_w = 0.0;
  double c = kDefaultC;
  SignalDist dist = SignalDist::Gaussian;
};

std::vector<Configuration> enumerate_configurations(const ExperimentSpec& spec) {
  std::vector<Configuration> configs;
  switch (spec.kind) {
    case ExperimentKind::CSweep: {
      const double sw =
          spec.sigma_w_values.empty() ? 1e-3 : spec.sigma_w_values.front();
      for (Index s : spec.s_values)
        for (double c : spec.c_values)
          configs.push_back({s, sw, c, SignalDist::Gaussian});
      break;
    }
    case ExperimentKind::NoiseFreeSweep: {
      for (Index s : spec.s_values)
        configs.push_back({s, 0.0, kDefaultC, SignalDist::Gaussian});
      break;
    }
    case ExperimentKind::NoisySweep:
    case ExperimentKind::RademacherSweep: {
      const double sw =
          spec.sigma_w_values.empty() ? 1e-2 : spec.sigma_w_values.front();
      const SignalDist dist = spec.kind == ExperimentKind::RademacherSweep
                                  ? SignalDist::Rademacher
                                  : SignalDist::Gaussian;
      for (Index s : spec.s_values)
        configs.push_back({s, sw, kDefaultC, dist});
      break;
    }
    case ExperimentKind::NoiseLevelSweep: {
      for (Index s : spec.s_values)
        for (double sw : spec.sigma_w_values)
          configs.push_back({s, sw, kDefaultC, SignalDist::Gaussian});
      break;
    }
    case ExperimentKind::OperatorPlot:
      throw std::invalid_argument(
          "run_experiment: operator-plot has no trial grid; use "
          "write_operator_plot");
  }
  if (configs.empty())
    throw std::invalid_argument("run_experiment: empty configuration grid");
  return configs;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1)
    throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (spec.algorithms.empty())
    throw std::invalid_argument("run_experiment: no algorithms selected");

  const std::vector<Configuration> configs = enumerate_configurations(spec);
  const std::string experiment_name = to_string(spec.kind);
  const size_t n_algs = spec.algorithms.size();
  const size_t n_trials = static_cast<size_t>(spec.trials);

  // One job per (configuration, trial): the problem is generated once and
  // every algorithm runs on it. Rows land in preallocated slots, so the
  // output order is deterministic no matter the thread schedule.
  std::vector<MetricRecord> rows(configs.size() * n_algs * n_trials);
  std::atomic<size_t> next_job{0};
  const size_t total_jobs = configs.size() * n_trials;

  auto worker = [&]() {
    for (;;) {
      const size_t job = next_job.fetch_add(1);
      if (job >= total_jobs) return;
      const size_t cfg_idx = job / n_trials;
      const size_t trial = job % n_trials;
      const Configuration& cfg = configs[cfg_idx];

      const std::uint64_t seed =
          spec.base_seed + static_cast<std::uint64_t>(trial);
      const Problem problem = gen_problem(spec.n, spec.m, cfg.s, cfg.dist,
                                          cfg.sigma_w, seed);
      for (size_t a = 0; a < n_algs; ++a) {
        MetricRecord rec = run_single(spec.algorithms[a], problem, cfg.c,
                                      spec.lambda_multipliers);
        rec.experiment = experiment_name;
        rec.trial = static_cast<int>(trial);
        rows[(cfg_idx * n_algs + a) * n_trials + trial] = std::move(rec);
      }
    }
  };

  unsigned n_threads = spec.threads > 0
                           ? static_cast<unsigned>(spec.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(total_jobs));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  result.rows = std::move(rows);

  for (size_t cfg_idx = 0; cfg_idx < configs.size(); ++cfg_idx) {
    const Configuration& cfg = configs[cfg_idx];
    for (size_t a = 0; a < n_algs; ++a) {
      const size_t base = (cfg_idx * n_algs + a) * n_trials;
      SummaryRecord sum;
      sum.experiment = experiment_name;
      sum.algorithm = spec.algorithms[a];
      sum.n = spec.n;
      sum.m = spec.m;
      sum.s = cfg.s;
      sum.sigma_w = cfg.sigma_w;
      sum.c = cfg.c;
      sum.trials = spec.trials;

      // Failed solves count as unsuccessful trials; the error-magnitude
      // aggregates (mse, msnr) are computed over the completed ones.
      std::vector<double> sq_errors;
      size_t ok = 0, successes = 0, supports = 0;
      double iters = 0.0, wall = 0.0;
      for (size_t t = 0; t < n_trials; ++t) {
        const MetricRecord& r = result.rows[base + t];
        if (r.status != "ok") {
          result.all_ok = false;
          continue;
        }
        ++ok;
        successes += r.success ? 1 : 0;
        supports += r.support_exact ? 1 : 0;
        sq_errors.push_back(r.sq_error);
        iters += r.iters;
        wall += r.wall_time_ms;
      }
      if (ok > 0) {
        sum.success_rate = static_cast<double>(successes) / n_trials;
        sum.srr_rate = static_cast<double>(supports) / n_trials;
        sum.mse = 0.0;
        for (double e : sq_errors) sum.mse += e;
        sum.mse /= static_cast<double>(ok);
        // Nominal signal power: s exactly under the noisy-case sqrt(s)
        // normalization, and E||x||^2 = s for the unnormalized case.
        sum.msnr_db =
            msnr_from_sq_errors(static_cast<double>(cfg.s), sq_errors);
        sum.mean_iters = iters / static_cast<double>(ok);
        sum.mean_wall_time_ms = wall / static_cast<double>(ok);
      }
      result.summaries.push_back(std::move(sum));
    }
  }

  if (!spec.out_path.empty()) {
    write_rows_csv(spec.out_path, result.rows);
    std::string summary_path = spec.out_path;
    const auto dot = summary_path.rfind(".csv");
    if (dot != std::string::npos && dot == summary_path.size() - 4)
      summary_path.resize(dot);
    write_summary_csv(summary_path + ".summary.csv", result.summaries);
  }
  return result;
}

double tune_lambda(const std::string& algorithm, Index n, Index m, Index s,
                   double sigma_w, const std::vector<double>& grid, int trials,
                   std::uint64_t base_seed) {
  if (grid.empty()) throw std::invalid_argument("tune_lambda: empty grid");
  if (algorithm != "ilt" && algorithm != "ist-p-0.5" &&
      algorithm != "ist-p-0.1")
    throw std::invalid_argument("tune_lambda: only ilt and ist-p-* are tuned");

  double best_mult = grid.front();
  double best_msnr = -std::numeric_limits<double>::infinity();
  for (double mult : grid) {
    std::map<std::string, double> mults{{algorithm, mult}};
    std::vector<double> sq_errors;
    for (int t = 0; t < trials; ++t) {
      const Problem problem =
          gen_problem(n, m, s, SignalDist::Gaussian, sigma_w,
                      base_seed + static_cast<std::uint64_t>(t));
      MetricRecord rec = run_single(algorithm, problem, kDefaultC, mults);
      if (rec.status == "ok") sq_errors.push_back(rec.sq_error);
    }
    if (sq_errors.empty()) continue;
    const double msnr =
        msnr_from_sq_errors(static_cast<double>(s), std::move(sq_errors));
    if (msnr > best_msnr) {
      best_msnr = msnr;
      best_mult = mult;
    }
  }
  return best_mult;
}

void write_operator_plot(const std::string& path,
                         const std::vector<double>& sigmas, double lambda,
                         double grid_lo, double grid_hi, int grid_points) {
  if (grid_points < 2 || grid_hi <= grid_lo)
    throw std::invalid_argument("write_operator_plot: bad grid");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);

  os << "x0";
  for (double s : sigmas) os << ",scsa_sigma_" << format_double(s);
  os << '\n';
  for (int i = 0; i < grid_points; ++i) {
    const double x0 = grid_lo + (grid_hi - grid_lo) * i / (grid_points - 1);
    os << format_double(x0);
    for (double s : sigmas) {
      // mu = 1 slice with lambda_sigma = lambda * sigma.
      const double value = scsa_threshold(x0, {lambda * s, s});
      os << ',' << format_double(value);
    }
    os << '\n';
  }
}

std::string format_metric_row(const MetricRecord& r) {
  std::ostringstream os;
  os << r.experiment << ',' << r.algorithm << ',' << r.n << ',' << r.m << ','
     << r.s << ',' << format_double(r.sigma_w) << ',' << format_double(r.c)
     << ',' << r.trial << ',' << r.seed << ',' << r.status << ','
     << format_double(r.snr_db) << ',' << (r.success ? 1 : 0) << ','
     << (r.support_exact ? 1 : 0) << ',' << format_double(r.sq_error) << ','
     << r.iters << ',' << format_double(r.wall_time_ms);
  return os.str();
}

void write_rows_csv(const std::string& path,
                    const std::vector<MetricRecord>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << kRowCsvHeader << '\n';
  for (const auto& r : rows) os << format_metric_row(r) << '\n';
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRecord>& summaries) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "experiment,algorithm,n,m,s,sigma_w,c,trials,success_rate,msnr_db,"
        "mse,srr_rate,mean_iters,mean_wall_time_ms\n";
  for (const auto& s : summaries) {
    os << s.experiment << ',' << s.algorithm << ',' << s.n << ',' << s.m
       << ',' << s.s << ',' << format_double(s.sigma_w) << ','
       << format_double(s.c) << ',' << s.trials << ','
       << format_double(s.success_rate) << ',' << format_double(s.msnr_db)
       << ',' << format_double(s.mse) << ',' << format_double(s.srr_rate)
       << ',' << format_double(s.mean_iters) << ','
       << format_double(s.mean_wall_time_ms) << '\n';
  }
}

} // namespace scsa
