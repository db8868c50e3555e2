#pragma once

#include "scsa/problems.hpp"
#include "scsa/solvers.hpp"

#include <map>
#include <string>
#include <vector>

namespace scsa {

// Sweep kinds mirror the benchmark experiments: the continuation-factor
// sweep, noise-free and noisy sparsity sweeps (Gaussian and Rademacher), the
// noise-level sweep, and the thresholding-operator plot.
enum class ExperimentKind {
  CSweep,
  NoiseFreeSweep,
  NoisySweep,
  RademacherSweep,
  NoiseLevelSweep,
  OperatorPlot,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::NoisySweep;
  Index n = 250, m = 500;
  std::vector<Index> s_values;
  std::vector<double> sigma_w_values;
  std::vector<double> c_values;
  int trials = 50;
  std::vector<std::string> algorithms;
  std::uint64_t base_seed = 1;
  std::string out_path; // per-row CSV; summary written next to it
  int threads = 0;      // 0 = hardware concurrency
  // Regularization multipliers for the tuned baselines (ilt, ist-p-*).
  std::map<std::string, double> lambda_multipliers;
};

struct SummaryRecord {
  std::string experiment;
  std::string algorithm;
  Index n = 0, m = 0, s = 0;
  double sigma_w = 0.0;
  double c = 0.0;
  int trials = 0;
  double success_rate = 0.0;
  double msnr_db = 0.0;
  double mse = 0.0;
  double srr_rate = 0.0;
  double mean_iters = 0.0;
  double mean_wall_time_ms = 0.0;
};

struct ExperimentResult {
  std::vector<MetricRecord> rows;
  std::vector<SummaryRecord> summaries;
  bool all_ok = true;
};

inline constexpr const char* kRowCsvHeader =
    "experiment,algorithm,n,m,s,sigma_w,c,trial,seed,status,snr_db,success,"
    "support_exact,sq_error,iters,wall_time_ms";

// Runs every (configuration, algorithm, trial) cell, in a deterministic
// order; solver failures are recorded in the row's status column and never
// abort the sweep. Writes the rows CSV (and a sibling summary CSV) when
// spec.out_path is nonempty.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Solves one named algorithm on one problem; the building block run_experiment
// and the `solve` CLI subcommand share. c and the multiplier map configure
// scsa-* and the tuned baselines. When x_hat_out is given it receives the
// estimate (left empty on solver failure).
MetricRecord run_single(const std::string& algorithm, const Problem& problem,
                        double c,
                        const std::map<std::string, double>& multipliers,
                        Vector* x_hat_out = nullptr);

// Picks the multiplier from `grid` maximizing the median-SNR at the given
// noise level (intended at sigma_w = 1e-2, then scaled linearly elsewhere).
double tune_lambda(const std::string& algorithm, Index n, Index m, Index s,
                   double sigma_w, const std::vector<double>& grid, int trials,
                   std::uint64_t base_seed = 1);

// (x0, operator value) table over a uniform grid, one column per sigma; the
// mu = 1, lambda_sigma = lambda * sigma slice that exhibits the soft-to-hard
// interpolation.
void write_operator_plot(const std::string& path,
                         const std::vector<double>& sigmas, double lambda,
                         double grid_lo, double grid_hi, int grid_points);

void write_rows_csv(const std::string& path,
                    const std::vector<MetricRecord>& rows);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRecord>& summaries);

std::string format_metric_row(const MetricRecord& r);

// Known algorithm names, in canonical order.
const std::vector<std::string>& known_algorithms();

} // namespace scsa
