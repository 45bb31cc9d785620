#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fou/estimator.hpp"
#include "fou/statkit.hpp"

namespace fou {

/// Seeded Monte Carlo experiment configuration.
struct ExperimentSpec {
  PeriodicDrift drift;
  double alpha;
  HurstParam H;

  double dt = 0x1.0p-8;
  std::vector<int> horizons;

  int replications = 1;
  std::uint64_t base_seed = 0;
  bool zero_noise = false;  // debug: drive with B^H = 0

  Eigen::Index limit_draws = 2000;

  std::filesystem::path output_dir = "out";

  void validate() const;
};

/// Parse the flat "key = value" sectioned config format.
ExperimentSpec parse_config(const std::filesystem::path& file);
ExperimentSpec parse_config_text(const std::string& text);

struct HorizonRecord {
  int n;
  double alpha_hat;
  Eigen::VectorXd mu_hat;
  double gamma_inv;
  double err_alpha_scaled;        // e^{alpha n}(alpha_hat - alpha), true alpha
  Eigen::VectorXd err_mu_scaled;  // n^{1-H}(mu_hat - mu), true mu
};

struct ReplicationResult {
  int rep;
  std::uint64_t seed;
  bool degenerate = false;
  std::vector<HorizonRecord> records;
};

struct McRunResult {
  std::vector<ReplicationResult> replications;
  int degenerate_count = 0;
  bool skip_warning = false;  // > 5% degenerate replications
};

/// One fBm path per replication covering the largest horizon; estimators
/// evaluated at every nested horizon on that path. Deterministic given spec:
/// replication r draws from the stream derived from (base_seed, r).
McRunResult run_mc(const ExperimentSpec& spec, int threads = 1);

/// Serialize per-replication records; header
/// rep,seed,n,alpha_hat,mu_hat_1..p,gamma_inv,err_alpha_scaled,err_mu_scaled_1..p.
void write_results_csv(const ExperimentSpec& spec, const McRunResult& result,
                       const std::filesystem::path& file);
McRunResult read_results_csv(const ExperimentSpec& spec,
                             const std::filesystem::path& file);

/// Medians of |alpha_hat - alpha| and ||mu_hat - mu||_inf per horizon.
void write_summary_json(const ExperimentSpec& spec, const McRunResult& result,
                        const std::filesystem::path& file);

struct LimitTestReport {
  KsResult alpha_ks;              // empirical scaled alpha errors vs limit sampler
  std::optional<KsResult> mu_ks;  // vs N(0, D_11); absent when D_11 = 0
  bool mu_shrinkage_ok = true;    // degenerate component check when D_11 = 0
  double cross_correlation = 0.0;
  double cross_correlation_se = 0.0;
  double sigma2 = 0.0;
  double A_inf = 0.0;
};

/// Distributional tests of the scaled errors at the largest horizon.
LimitTestReport run_limit_tests(const ExperimentSpec& spec, const McRunResult& result,
                                std::uint64_t limit_seed);

void write_limit_report_json(const ExperimentSpec& spec, const LimitTestReport& report,
                             const std::filesystem::path& file);

/// CLI entry point: simulate | estimate | mc | limits | report.
/// Exit codes: 0 success, 1 usage, 2 numerical/degenerate failure.
int cli_main(int argc, const char* const* argv);

}  // namespace fou
