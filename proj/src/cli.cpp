#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fou/asymptotics.hpp"
#include "fou/errors.hpp"
#include "fou/harness.hpp"

namespace fou {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct CommonArgs {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_config = true) {
  auto* c = cmd->add_option("--config", args.config, "experiment config file");
  if (need_config) c->required();
  cmd->add_option("--out", args.out, "output directory");
  cmd->add_option("--seed", args.seed, "base seed override")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--threads", args.threads, "worker threads (fallback: FOU_THREADS)");
}

ExperimentSpec load_spec(const CommonArgs& args) {
  ExperimentSpec spec = parse_config(args.config);
  if (args.seed_set) spec.base_seed = args.seed;
  spec.output_dir = args.out;
  return spec;
}

int resolve_threads(const CommonArgs& args) {
  if (args.threads > 0) return args.threads;
  if (const char* env = std::getenv("FOU_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

void echo_config(const CommonArgs& args) {
  fs::create_directories(args.out);
  fs::copy_file(args.config, fs::path(args.out) / "config.echo.cfg",
                fs::copy_options::overwrite_existing);
}

ProcessPath simulate_one(const ExperimentSpec& spec) {
  const int n_max = *std::max_element(spec.horizons.begin(), spec.horizons.end());
  const auto m = static_cast<Eigen::Index>(std::llround(n_max / spec.dt));
  FbmPath bh = generate_fbm_path(spec.H, m, spec.dt, spec.base_seed);
  return simulate_exact(spec.drift, spec.alpha, bh);
}

int cmd_simulate(const CommonArgs& args) {
  ExperimentSpec spec = load_spec(args);
  echo_config(args);
  ProcessPath path = simulate_one(spec);
  dump_fbm_csv(path.bh, (fs::path(args.out) / "bh.csv").string());
  dump_process_csv(path, (fs::path(args.out) / "path.csv").string());
  std::cout << "wrote bh.csv, path.csv to " << args.out << "\n";
  return 0;
}

int cmd_estimate(const CommonArgs& args) {
  ExperimentSpec spec = load_spec(args);
  echo_config(args);
  ProcessPath path = simulate_one(spec);
  json records = json::array();
  for (int n : spec.horizons) {
    EstimatorOutput est = estimate_matrix(path, spec.H, n);
    json r;
    r["n"] = n;
    r["H"] = spec.H.H;
    r["alpha_hat"] = est.alpha_hat;
    r["mu_hat"] = std::vector<double>(est.mu_hat.begin(), est.mu_hat.end());
    r["gamma_inv"] = est.stats.gamma_inv;
    r["condition"] = est.condition;
    r["route"] = est.route == EstimatorRoute::MatrixSolve ? "matrix" : "closed_form";
    r["seed"] = path.bh.seed;
    records.push_back(std::move(r));
  }
  std::ofstream out(fs::path(args.out) / "estimates.json");
  out << records.dump(2) << '\n';
  std::cout << "wrote estimates.json to " << args.out << "\n";
  return 0;
}

int cmd_mc(const CommonArgs& args) {
  ExperimentSpec spec = load_spec(args);
  echo_config(args);
  McRunResult result = run_mc(spec, resolve_threads(args));
  write_results_csv(spec, result, fs::path(args.out) / "results.csv");
  write_summary_json(spec, result, fs::path(args.out) / "summary.json");
  if (result.skip_warning)
    std::cerr << "warning: " << result.degenerate_count
              << " degenerate replications skipped (> 5%)\n";
  std::cout << "wrote results.csv, summary.json to " << args.out << "\n";
  return 0;
}

int cmd_limits(const CommonArgs& args) {
  ExperimentSpec spec = load_spec(args);
  const fs::path results = fs::path(args.out) / "results.csv";
  if (!fs::exists(results)) {
    std::cerr << "error: " << results.string()
              << " not found; run `mc` with the same --out first\n";
    return 1;
  }
  McRunResult result = read_results_csv(spec, results);
  LimitTestReport report = run_limit_tests(spec, result, spec.base_seed);
  write_limit_report_json(spec, report, fs::path(args.out) / "limit_report.json");

  AlphaLimitLaw law(spec.drift, spec.alpha, spec.H);
  Eigen::VectorXd draws = sample_alpha_limit(law, spec.limit_draws, spec.base_seed);
  std::ofstream csv(fs::path(args.out) / "limit_draws.csv");
  csv << "draw_index,value\n";
  csv.precision(17);
  for (Eigen::Index i = 0; i < draws.size(); ++i) csv << i << ',' << draws(i) << '\n';
  json meta{{"alpha", law.alpha},   {"H", law.H.H}, {"sigma_H2", law.sigma2},
            {"A_inf", law.A_inf},   {"T_trunc", law.T_trunc},
            {"dt", law.dt},         {"tail_sd_bound", law.tail_sd_bound}};
  std::ofstream mout(fs::path(args.out) / "limit_law.json");
  mout << meta.dump(2) << '\n';
  std::cout << "wrote limit_report.json, limit_draws.csv, limit_law.json to " << args.out
            << "\n";
  return 0;
}

int cmd_report(const CommonArgs& args) {
  ExperimentSpec spec = load_spec(args);
  const fs::path results = fs::path(args.out) / "results.csv";
  if (!fs::exists(results)) {
    std::cerr << "error: " << results.string()
              << " not found; run `mc` with the same --out first\n";
    return 1;
  }
  McRunResult result = read_results_csv(spec, results);
  write_summary_json(spec, result, fs::path(args.out) / "summary.json");
  std::cout << "wrote summary.json to " << args.out << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Monte Carlo toolkit for a periodically driven fractional OU process"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* sim = app.add_subcommand("simulate", "write one simulated path as CSV");
  auto* est = app.add_subcommand("estimate", "estimate on one simulated path");
  auto* mc = app.add_subcommand("mc", "run the replication sweep");
  auto* lim = app.add_subcommand("limits", "distributional tests of a finished mc run");
  auto* rep = app.add_subcommand("report", "re-summarize an existing results.csv");
  for (auto* cmd : {sim, est, mc, lim, rep}) add_common(cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) return cmd_simulate(args);
    if (est->parsed()) return cmd_estimate(args);
    if (mc->parsed()) return cmd_mc(args);
    if (lim->parsed()) return cmd_limits(args);
    return cmd_report(args);
  } catch (const DegenerateDesign& e) {
    std::cerr << "degenerate design: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fou
