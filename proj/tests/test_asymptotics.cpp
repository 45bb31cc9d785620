#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fou/asymptotics.hpp"
#include "fou/errors.hpp"
#include "fou/quadrature.hpp"
#include "fou/statkit.hpp"

using namespace fou;

namespace {

PeriodicDrift demo_drift() {
  return PeriodicDrift({BasisFunction::constant(), BasisFunction::cosine(1)},
                       Eigen::Vector2d(1.0, 0.5));
}

ProcessPath random_path(const PeriodicDrift& d, double alpha, HurstParam H, int n,
                        double dt, std::uint64_t seed) {
  const auto m = static_cast<Eigen::Index>(std::llround(n / dt));
  return simulate_exact(d, alpha, generate_fbm_path(H, m, dt, seed));
}

}  // namespace

TEST_CASE("sigma_H2 spot values and continuity") {
  CHECK(sigma_H2(HurstParam(0.5), 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sigma_H2(HurstParam(0.75), 1.0) ==
        doctest::Approx(0.75 * std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-10));
  CHECK(sigma_H2(HurstParam(0.5), 2.0) == doctest::Approx(0.25).epsilon(1e-12));
  for (double h = 0.5; h < 0.99; h += 0.05)
    CHECK(std::abs(sigma_H2(HurstParam(h + 1e-6), 0.7) - sigma_H2(HurstParam(h), 0.7)) <=
          1e-4);
  CHECK_THROWS_AS(sigma_H2(HurstParam(0.7), 0.0), DomainError);
}

TEST_CASE("D matrix is the outer product of basis means") {
  Eigen::MatrixXd D = d_matrix({BasisFunction::constant(), BasisFunction::cosine(1),
                                BasisFunction::sine(1)});
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(0, 0) = 1.0;
  CHECK((D - expected).cwiseAbs().maxCoeff() <= 1e-12);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
  CHECK(es.eigenvalues()(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(es.eigenvalues()(0)) <= 1e-12);
  CHECK(std::abs(es.eigenvalues()(1)) <= 1e-12);
}

TEST_CASE("limit-law sampler is deterministic and centered") {
  AlphaLimitLaw law(demo_drift(), 0.5, HurstParam(0.7));
  CHECK(law.T_trunc == doctest::Approx(24.0));
  CHECK(law.tail_sd_bound > 0.0);
  CHECK(law.tail_sd_bound < 1e-3);

  Eigen::VectorXd a = sample_alpha_limit(law, 500, 7);
  AlphaLimitLaw law2(demo_drift(), 0.5, HurstParam(0.7));
  Eigen::VectorXd b = sample_alpha_limit(law2, 500, 7);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.allFinite());
  CHECK(std::abs(median(a)) < 0.2);
}

TEST_CASE("scaled exponential integral variance matches sigma_H2") {
  // e^{-2 alpha n} E[(int_0^n e^{alpha s} dB)^2] -> H Gamma(2H) / alpha^{2H}
  const double alpha = 0.5;
  const HurstParam H(0.7);
  const int n = 10;
  const double dt = 0x1.0p-8;
  const auto m = static_cast<Eigen::Index>(std::llround(n / dt));
  Eigen::VectorXd eas(m + 1);
  for (Eigen::Index k = 0; k <= m; ++k)
    eas(k) = std::exp(alpha * static_cast<double>(k) * dt);

  double second_moment = 0.0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    FbmPath bh = generate_fbm_path(H, m, dt, 4000 + r);
    const double v = std::exp(-alpha * n) * integrate_against(eas, bh.values);
    second_moment += v * v;
  }
  second_moment /= reps;
  const double target = sigma_H2(H, alpha);
  CHECK(std::abs(second_moment - target) < 0.25 * target);
}

TEST_CASE("decomposition residual requires H > 1/2 and shrinks with dt") {
  const auto d = demo_drift();
  ProcessPath coarse = random_path(d, 0.5, HurstParam(0.7), 6, 0x1.0p-8, 31);
  ProcessPath fine = random_path(d, 0.5, HurstParam(0.7), 6, 0x1.0p-9, 31);
  const double rc = decomposition_residual(coarse, 6);
  const double rf = decomposition_residual(fine, 6);
  CHECK(rc < 0.05);
  CHECK(rf < rc);

  ProcessPath bm = random_path(d, 0.5, HurstParam(0.5), 6, 0x1.0p-8, 31);
  CHECK_THROWS_AS(decomposition_residual(bm, 6), DomainError);
}

TEST_CASE("estimation-error identity for mu") {
  PeriodicDrift flat({BasisFunction::constant()}, Eigen::VectorXd::Constant(1, 1.0));
  for (std::uint64_t seed : {41u, 42u, 43u}) {
    ProcessPath p = random_path(flat, 0.5, HurstParam(0.7), 6, 0x1.0p-10, seed);
    CHECK(error_representation_check(p, HurstParam(0.7), 6) <= 1e-6);
  }
  // oscillatory integrands carry an O((w dt)^2) quadrature ripple on top
  PeriodicDrift osc({BasisFunction::constant(), BasisFunction::cosine(2)},
                    Eigen::Vector2d(1.0, 0.5));
  ProcessPath p = random_path(osc, 0.5, HurstParam(0.7), 6, 0x1.0p-10, 44);
  CHECK(error_representation_check(p, HurstParam(0.7), 6) <= 5e-5);
}

TEST_CASE("zero-mean drift reduces the identity to mu_hat itself") {
  PeriodicDrift d({BasisFunction::cosine(1)}, Eigen::VectorXd::Zero(1));
  ProcessPath p = random_path(d, 0.5, HurstParam(0.7), 6, 0x1.0p-9, 55);
  EstimatorOutput est = estimate(p, HurstParam(0.7), 6);
  const auto k = static_cast<Eigen::Index>(std::llround(6 / p.dt()));
  Eigen::VectorXd phi(k + 1);
  for (Eigen::Index j = 0; j <= k; ++j)
    phi(j) = eval_basis(d.basis[0], static_cast<double>(j) * p.dt());
  const double g = integrate_against(phi, p.bh.values.head(k + 1));
  const double rhs = (p.alpha - est.alpha_hat) * est.stats.lambda_n(0) + g / 6.0;
  CHECK(std::abs(est.mu_hat(0) - rhs) <= 1e-5);
}
