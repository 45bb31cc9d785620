// Acceptance gate: one pass/fail line per criterion, exit code = failure count.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "fou/asymptotics.hpp"
#include "fou/harness.hpp"
#include "fou/quadrature.hpp"

using namespace fou;

namespace {

int g_failures = 0;

void report(int id, bool pass, const char* what, double elapsed_s) {
  std::printf("criterion %2d: %s  %s  (%.1fs)\n", id, pass ? "PASS" : "FAIL", what,
              elapsed_s);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

PeriodicDrift two_term_drift() {
  return PeriodicDrift({BasisFunction::constant(), BasisFunction::cosine(1)},
                       Eigen::Vector2d(1.0, 0.5));
}

PeriodicDrift constant_drift(double mu) {
  return PeriodicDrift({BasisFunction::constant()}, Eigen::VectorXd::Constant(1, mu));
}

ProcessPath random_path(const PeriodicDrift& d, double alpha, HurstParam H, int n,
                        double dt, std::uint64_t seed) {
  const auto m = static_cast<Eigen::Index>(std::llround(n / dt));
  return simulate_exact(d, alpha, generate_fbm_path(H, m, dt, seed));
}

ExperimentSpec make_spec(PeriodicDrift drift, double alpha, double H, double dt,
                         std::vector<int> horizons, int reps, std::uint64_t seed) {
  ExperimentSpec spec{std::move(drift), alpha, HurstParam(H)};
  spec.dt = dt;
  spec.horizons = std::move(horizons);
  spec.replications = reps;
  spec.base_seed = seed;
  return spec;
}

// seeds for the distributional criteria (5, 6); fixed ahead of the gate run
constexpr std::uint64_t kSeedMuH05 = 1;
constexpr std::uint64_t kSeedMuH07 = 1;
constexpr std::uint64_t kSeedAlphaLaw = 7;
constexpr std::uint64_t kSeedAlphaDraws = 107;

void criterion_1() {
  Timer t;
  const double alpha = 0.5, dt = 0x1.0p-12;
  const int n = 8;
  const auto d = two_term_drift();
  const auto m = static_cast<Eigen::Index>(std::llround(n / dt));
  FbmPath bh{HurstParam(0.7), dt, Eigen::VectorXd::Zero(m + 1), 0};
  EstimatorOutput est = estimate(simulate_exact(d, alpha, bh), HurstParam(0.7), n);
  const double err = std::max(std::abs(est.alpha_hat - alpha),
                              (est.mu_hat - d.mu).cwiseAbs().maxCoeff());
  report(1, err <= 1e-5, "zero-noise exact recovery within 1e-5", t.secs());
}

void criterion_2() {
  Timer t;
  const auto d = two_term_drift();
  bool pass = true;
  for (int i = 0; i < 100; ++i) {
    const HurstParam H(i % 2 == 0 ? 0.5 : 0.7);
    ProcessPath p = random_path(d, 0.5, H, 8, 0x1.0p-8, 500 + i);
    EstimatorOutput cf = estimate(p, H, 8);
    EstimatorOutput mx = estimate_matrix(p, H, 8);
    const double tol_a = 1e-9 * (1.0 + std::abs(cf.alpha_hat));
    pass = pass && std::abs(cf.alpha_hat - mx.alpha_hat) <= tol_a;
    for (int j = 0; j < d.p(); ++j)
      pass = pass &&
             std::abs(cf.mu_hat(j) - mx.mu_hat(j)) <= 1e-9 * (1.0 + std::abs(cf.mu_hat(j)));
  }
  report(2, pass, "closed-form vs matrix-solve agreement on 100 paths", t.secs());
}

struct ConsistencyRun {
  std::vector<double> med_alpha;  // per horizon
  std::vector<double> med_mu;
  std::vector<int> horizons;
};

ConsistencyRun consistency_run(double H, std::uint64_t seed) {
  ExperimentSpec spec =
      make_spec(two_term_drift(), 0.5, H, 0x1.0p-8, {6, 10, 14, 18}, 200, seed);
  McRunResult r = run_mc(spec);
  ConsistencyRun out;
  out.horizons = spec.horizons;
  for (std::size_t hi = 0; hi < spec.horizons.size(); ++hi) {
    std::vector<double> ea, em;
    for (const auto& rep : r.replications) {
      if (rep.degenerate) continue;
      ea.push_back(std::abs(rep.records[hi].alpha_hat - spec.alpha));
      em.push_back((rep.records[hi].mu_hat - spec.drift.mu).cwiseAbs().maxCoeff());
    }
    out.med_alpha.push_back(median(Eigen::Map<Eigen::VectorXd>(ea.data(), ea.size())));
    out.med_mu.push_back(median(Eigen::Map<Eigen::VectorXd>(em.data(), em.size())));
  }
  return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

double slope_log_median(const ConsistencyRun& run) {
  const auto k = run.horizons.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double x = run.horizons[i], y = std::log(run.med_alpha[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

void criteria_3_and_4() {
  Timer t;
  const ConsistencyRun r05 = consistency_run(0.5, 42);
  const ConsistencyRun r07 = consistency_run(0.7, 42);
  const bool c3 = strictly_decreasing(r05.med_alpha) && strictly_decreasing(r05.med_mu) &&
                  strictly_decreasing(r07.med_alpha) && strictly_decreasing(r07.med_mu);
  report(3, c3, "median errors strictly decrease across horizons (H=0.5, 0.7)", t.secs());

  Timer t4;
  const double s05 = slope_log_median(r05);
  const double s07 = slope_log_median(r07);
  const bool c4 = s05 >= -0.625 && s05 <= -0.375 && s07 >= -0.625 && s07 <= -0.375;
  std::printf("              slopes: H=0.5 %.3f, H=0.7 %.3f (band [-0.625, -0.375])\n",
              s05, s07);
  report(4, c4, "log median |alpha error| decays at the exponential rate", t4.secs());
}

double mu_limit_pvalue(double H, std::uint64_t seed) {
  ExperimentSpec spec =
      make_spec(constant_drift(1.0), 0.4, H, 0x1.0p-8, {18}, 1000, seed);
  McRunResult r = run_mc(spec);
  std::vector<double> scaled;
  for (const auto& rep : r.replications)
    if (!rep.degenerate) scaled.push_back(rep.records[0].err_mu_scaled(0));
  return ks_one_sample_normal(
             Eigen::Map<Eigen::VectorXd>(scaled.data(), scaled.size()), 0.0, 1.0)
      .p_value;
}

void criterion_5() {
  Timer t;
  const double p05 = mu_limit_pvalue(0.5, kSeedMuH05);
  const double p07 = mu_limit_pvalue(0.7, kSeedMuH07);
  std::printf("              KS p-values: H=0.5 %.4f, H=0.7 %.4f\n", p05, p07);
  report(5, p05 > 0.01 && p07 > 0.01,
         "n^{1-H} (mu_hat - mu) is standard normal at n=18", t.secs());
}

void criterion_6() {
  Timer t;
  ExperimentSpec spec =
      make_spec(constant_drift(1.0), 0.4, 0.7, 0x1.0p-10, {10}, 1000, kSeedAlphaLaw);
  McRunResult r = run_mc(spec);
  std::vector<double> scaled;
  for (const auto& rep : r.replications)
    if (!rep.degenerate) scaled.push_back(rep.records[0].err_alpha_scaled);

  AlphaLimitLaw law(spec.drift, spec.alpha, spec.H);
  Eigen::VectorXd draws = sample_alpha_limit(law, 2000, kSeedAlphaDraws);
  KsResult ks = ks_two_sample(
      Eigen::Map<Eigen::VectorXd>(scaled.data(), scaled.size()), draws);
  std::printf("              KS p-value: %.4f (stat %.4f)\n", ks.p_value, ks.statistic);
  report(6, ks.p_value > 0.01,
         "e^{alpha n} (alpha_hat - alpha) matches the ratio limit law", t.secs());
}

void criterion_7() {
  Timer t;
  const auto d = two_term_drift();
  const double alpha = 0.5;
  const int n = 6;
  double res[2];
  int i = 0;
  for (double dt : {0x1.0p-10, 0x1.0p-11}) {
    ProcessPath p = random_path(d, alpha, HurstParam(0.7), n, dt, 777);
    res[i++] = decomposition_residual(p, n);
  }
  std::printf("              residuals: %.3e (dt=2^-10), %.3e (dt=2^-11)\n", res[0],
              res[1]);
  report(7, res[0] <= 5e-3 && res[1] < res[0],
         "pathwise decomposition identity holds and refines with dt", t.secs());
}

void criterion_8() {
  Timer t;
  const auto d = constant_drift(1.0);
  bool pass = true;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    ProcessPath p = random_path(d, 0.5, HurstParam(0.7), 6, 0x1.0p-10, 900 + i);
    const double disc = error_representation_check(p, HurstParam(0.7), 6);
    worst = std::max(worst, disc);
    pass = pass && disc <= 1e-6;
  }
  std::printf("              worst discrepancy: %.3e\n", worst);
  report(8, pass, "mu error representation exact to 1e-6 on 20 paths", t.secs());
}

void criterion_9() {
  Timer t;
  bool pass = true;
  pass = pass && std::abs(sigma_H2(HurstParam(0.5), 1.0) - 0.5) <= 1e-10;
  pass = pass && std::abs(sigma_H2(HurstParam(0.75), 1.0) -
                          0.75 * std::sqrt(std::numbers::pi) / 2.0) <= 1e-10;
  const double alpha = 0.7;
  pass = pass &&
         std::abs(lambda_coefficient(BasisFunction::constant(), alpha) - 1.0 / alpha) <=
             1e-10;
  const DriftFunctionals f = drift_functionals(constant_drift(2.0), 0.5);
  pass = pass && std::abs(f.A_inf - 2.0 / 0.5) <= 1e-10;
  Eigen::MatrixXd D = d_matrix({BasisFunction::constant(), BasisFunction::cosine(1)});
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2, 2);
  expected(0, 0) = 1.0;
  pass = pass && (D - expected).cwiseAbs().maxCoeff() <= 1e-10;
  report(9, pass, "closed-form spot values to 1e-10", t.secs());
}

void criterion_10() {
  Timer t;
  const HurstParam H(0.7);
  const Eigen::Index m = 1 << 16;
  Eigen::VectorXd inc = generate_fgn(H, m, 1.0, 12345, FgnMethod::Circulant);
  bool pass = true;
  for (int k = 0; k <= 5; ++k) {
    double c = 0.0;
    for (Eigen::Index j = 0; j + k < m; ++j) c += inc(j) * inc(j + k);
    c /= static_cast<double>(m - k);
    // Bartlett variance of the lag-k sample autocovariance
    double var = 0.0;
    for (std::int64_t j = -4000; j <= 4000; ++j)
      var += fgn_autocovariance(j, H, 1.0) * fgn_autocovariance(j, H, 1.0) +
             fgn_autocovariance(j + k, H, 1.0) * fgn_autocovariance(j - k, H, 1.0);
    const double se = std::sqrt(var / static_cast<double>(m));
    pass = pass && std::abs(c - fgn_autocovariance(k, H, 1.0)) <= 4.0 * se;
  }

  // method comparison on independent replicates (one endpoint per path)
  const Eigen::Index reps = 600;
  Eigen::VectorXd chol(reps), circ(reps);
  for (Eigen::Index r = 0; r < reps; ++r) {
    chol(r) = generate_fgn(H, 16, 1.0, 50000 + r, FgnMethod::Cholesky).sum();
    circ(r) = generate_fgn(H, 16, 1.0, 60000 + r, FgnMethod::Circulant).sum();
  }
  KsResult ks = ks_two_sample(chol, circ);
  std::printf("              Cholesky/circulant KS p-value: %.4f\n", ks.p_value);
  report(10, pass && ks.p_value > 0.01,
         "fGn autocovariances within 4 SE; methods KS-compatible", t.secs());
}

void criterion_11() {
  Timer t;
  const auto d = two_term_drift();
  const double alpha = 0.5, dt = 0x1.0p-8;
  const int n = 20;
  bool pass = true;
  for (double H : {0.5, 0.7}) {
    ProcessPath p = random_path(d, alpha, HurstParam(H), n, dt, 606);
    const auto k = static_cast<Eigen::Index>(std::llround(n / dt));
    const double en = std::exp(-alpha * n);
    const double q = en * p.X(k);
    const double i1 = en * trapezoid(p.X.head(k + 1), dt);
    const double i2 = en * en * trapezoid(p.X.head(k + 1).cwiseAbs2(), dt);
    pass = pass && std::abs(i1 - q / alpha) <= 0.05 * std::abs(q / alpha);
    pass = pass && std::abs(i2 - q * q / (2.0 * alpha)) <= 0.05 * q * q / (2.0 * alpha);
  }
  report(11, pass, "pathwise limit relations hold at 5% on a long path", t.secs());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criteria_3_and_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ALL CRITERIA PASS" : "GATE FAILED",
              g_failures, g_failures == 1 ? "" : "s");
  return g_failures;
}
