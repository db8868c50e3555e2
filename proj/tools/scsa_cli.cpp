#include "scsa/experiments.hpp"
#include "scsa/linalg.hpp"
#include "scsa/problems.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Accepts "5,10,15" or a range "a:b:step".
std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0)
      throw CLI::ValidationError("range must be a:b:step with step > 0");
    for (double v = a; v <= b + 1e-12 * step; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw CLI::ValidationError("empty list: " + text);
  return out;
}

std::vector<scsa::Index> parse_index_list(const std::string& text) {
  std::vector<scsa::Index> out;
  for (double v : parse_double_list(text))
    out.push_back(static_cast<scsa::Index>(v));
  return out;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse recovery benchmark: SCSA solvers and baselines"};
  app.require_subcommand(1);

  // --- bench ------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Run a Monte-Carlo sweep");
  std::string kind = "noisy-sweep";
  scsa::ExperimentSpec spec;
  std::string s_list, sigma_list, c_list = "0.1";
  std::string algs = "scsa-fit,fista,oracle";
  std::vector<std::string> mult_args;
  bench->add_option("--kind", kind,
                    "c-sweep | noise-free-sweep | noisy-sweep | "
                    "rademacher-sweep | noise-level-sweep");
  bench->add_option("--n", spec.n, "measurement count")->required();
  bench->add_option("--m", spec.m, "signal length")->required();
  bench->add_option("--s", s_list, "sparsity list or range a:b:step")
      ->required();
  bench->add_option("--sigma-w", sigma_list, "noise std list");
  bench->add_option("--c", c_list, "continuation factor list");
  bench->add_option("--trials", spec.trials, "trials per configuration");
  bench->add_option("--algs", algs, "comma-separated algorithm names");
  bench->add_option("--seed", spec.base_seed, "base seed");
  bench->add_option("--out", spec.out_path, "rows CSV path")->required();
  bench->add_option("--threads", spec.threads, "worker threads (0 = auto)");
  bench->add_option("--lambda-mult", mult_args,
                    "alg=multiplier for ilt / ist-p-*");

  // --- plot-operator ------------------------------------------------------
  auto* plot = app.add_subcommand("plot-operator",
                                  "Emit thresholding-operator CSV curves");
  std::string plot_sigmas = "100,1,0.1";
  double plot_lambda = 1.0;
  std::string plot_grid = "-4:4:0.01";
  std::string plot_out;
  plot->add_option("--sigma", plot_sigmas, "sigma list");
  plot->add_option("--lambda", plot_lambda, "lambda (lambda_sigma scaling)");
  plot->add_option("--grid", plot_grid, "grid a:b:step");
  plot->add_option("--out", plot_out, "output CSV")->required();

  // --- solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Run one algorithm on a saved "
                                            "problem directory");
  std::string problem_dir, solve_alg = "scsa-fit", solve_out;
  double solve_c = 0.1;
  solve->add_option("--problem-dir", problem_dir)->required();
  solve->add_option("--alg", solve_alg);
  solve->add_option("--out", solve_out, "x_hat CSV path");
  solve->add_option("--c", solve_c, "continuation factor");

  // --- gen-problem ----------------------------------------------------------
  auto* gen = app.add_subcommand("gen-problem", "Generate and save a problem");
  scsa::Index gn = 0, gm = 0, gs = 0;
  double gsigma = 0.0;
  std::uint64_t gseed = 1;
  std::string gdist = "gaussian", gdir;
  gen->add_option("--n", gn)->required();
  gen->add_option("--m", gm)->required();
  gen->add_option("--s", gs)->required();
  gen->add_option("--dist", gdist, "gaussian | rademacher");
  gen->add_option("--sigma-w", gsigma);
  gen->add_option("--seed", gseed);
  gen->add_option("--out-dir", gdir)->required();

  // --- tune-lambda -----------------------------------------------------------
  auto* tune = app.add_subcommand("tune-lambda",
                                  "Grid-search the regularization multiplier");
  std::string tune_alg = "ilt", tune_grid = "0.1,0.2,0.5,1,2,5,10";
  scsa::Index tn = 250, tm = 500, ts = 50;
  double tsigma = 1e-2;
  int ttrials = 20;
  std::uint64_t tseed = 1;
  tune->add_option("--alg", tune_alg, "ilt | ist-p-0.5 | ist-p-0.1");
  tune->add_option("--n", tn);
  tune->add_option("--m", tm);
  tune->add_option("--s", ts);
  tune->add_option("--sigma-w", tsigma);
  tune->add_option("--grid", tune_grid, "multiplier list");
  tune->add_option("--trials", ttrials);
  tune->add_option("--seed", tseed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) {
      spec.kind = scsa::experiment_kind_from_string(kind);
      spec.s_values = parse_index_list(s_list);
      if (!sigma_list.empty()) spec.sigma_w_values = parse_double_list(sigma_list);
      spec.c_values = parse_double_list(c_list);
      spec.algorithms = split_csv(algs);
      for (const auto& arg : mult_args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos)
          throw CLI::ValidationError("--lambda-mult expects alg=value");
        spec.lambda_multipliers[arg.substr(0, eq)] =
            std::stod(arg.substr(eq + 1));
      }
      const scsa::ExperimentResult result = scsa::run_experiment(spec);
      std::cout << "wrote " << result.rows.size() << " rows to "
                << spec.out_path << '\n';
      for (const auto& s : result.summaries)
        std::cout << s.algorithm << " s=" << s.s << " sigma_w=" << s.sigma_w
                  << " c=" << s.c << ": success=" << s.success_rate
                  << " msnr=" << s.msnr_db << "dB mse=" << s.mse
                  << " srr=" << s.srr_rate << " time=" << s.mean_wall_time_ms
                  << "ms\n";
      return result.all_ok ? 0 : 1;
    }
    if (*plot) {
      const auto grid = parse_double_list(plot_grid);
      // parse_double_list expands a:b:step; recover the endpoints and count.
      scsa::write_operator_plot(plot_out, parse_double_list(plot_sigmas),
                                plot_lambda, grid.front(), grid.back(),
                                static_cast<int>(grid.size()));
      std::cout << "wrote " << plot_out << '\n';
      return 0;
    }
    if (*solve) {
      const scsa::Problem problem = scsa::load_problem(problem_dir);
      scsa::Vector x_hat;
      const scsa::MetricRecord rec =
          scsa::run_single(solve_alg, problem, solve_c, {}, &x_hat);
      std::cout << scsa::kRowCsvHeader << '\n'
                << scsa::format_metric_row(rec) << '\n';
      if (!solve_out.empty() && rec.status == "ok")
        scsa::save_vector_csv(solve_out, x_hat);
      return rec.status == "ok" ? 0 : 1;
    }
    if (*gen) {
      const scsa::Problem problem =
          scsa::gen_problem(gn, gm, gs, scsa::signal_dist_from_string(gdist),
                            gsigma, gseed);
      scsa::save_problem(gdir, problem);
      std::cout << "wrote problem to " << gdir << '\n';
      return 0;
    }
    if (*tune) {
      const double mult = scsa::tune_lambda(
          tune_alg, tn, tm, ts, tsigma, parse_double_list(tune_grid), ttrials,
          tseed);
      std::cout << mult << '\n';
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
