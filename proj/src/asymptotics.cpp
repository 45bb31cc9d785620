#include "fou/asymptotics.hpp"

#include <cmath>

#include "fou/errors.hpp"
#include "fou/quadrature.hpp"
#include "fou/rng.hpp"
#include "fou/statkit.hpp"

namespace fou {
namespace {

constexpr std::uint64_t kTagNormal = 0x4e31;   // N1 stream
constexpr std::uint64_t kTagZinf = 0x5a1f;     // Z_inf stream

Eigen::VectorXd basis_values(const BasisFunction& phi, double dt, Eigen::Index k) {
  Eigen::VectorXd v(k + 1);
  for (Eigen::Index j = 0; j <= k; ++j)
    v(j) = eval_basis(phi, static_cast<double>(j) * dt);
  return v;
}

}  // namespace

double sigma_H2(HurstParam H, double alpha) {
  if (alpha <= 0.0) throw DomainError("alpha must be positive");
  return H.H * gamma_fn(2.0 * H.H) / std::pow(alpha, 2.0 * H.H);
}

Eigen::MatrixXd d_matrix(const std::vector<BasisFunction>& basis) {
  const auto p = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXd means(p);
  for (Eigen::Index i = 0; i < p; ++i) means(i) = integral_basis(basis[i], 1.0);
  return means * means.transpose();
}

AlphaLimitLaw::AlphaLimitLaw(const PeriodicDrift& drift, double alpha_, HurstParam H_,
                             double T_trunc_, double dt_)
    : alpha(alpha_),
      H(H_),
      A_inf(drift_functionals(drift, alpha_).A_inf),
      sigma2(sigma_H2(H_, alpha_)),
      T_trunc(T_trunc_ > 0.0 ? T_trunc_ : std::max(20.0, 12.0 / alpha_)),
      dt(dt_) {
  // tail bound reported with the sampler, same bound sample_Z_infinity uses
  auto g = [this](double s) { return std::exp(-alpha * s) * std::pow(s, H.H); };
  tail_sd_bound = simpson(g, T_trunc, T_trunc + 40.0 / alpha, 0.01 / alpha);
}

Eigen::VectorXd sample_alpha_limit(AlphaLimitLaw& law, Eigen::Index count,
                                   std::uint64_t seed) {
  if (count < 1) throw DomainError("count must be >= 1");
  Eigen::VectorXd draws(count);
  const double sd = std::sqrt(law.sigma2);
  for (Eigen::Index i = 0; i < count; ++i) {
    RngStream nstream = RngStream::derive(seed, kTagNormal, static_cast<std::uint64_t>(i));
    double denom = 0.0;
    std::uint64_t attempt = 0;
    do {
      const std::uint64_t zi =
          static_cast<std::uint64_t>(i) + (attempt << 32);  // fresh stream per retry
      denom = law.A_inf +
              law.alpha *
                  sample_Z_infinity(law.H, law.alpha, law.T_trunc, law.dt,
                                    RngStream::derive(seed, kTagZinf, zi).key())
                      .value;
      if (std::abs(denom) < 1e-12) {
        ++law.resample_count;
        ++attempt;
      }
    } while (std::abs(denom) < 1e-12);
    draws(i) = 2.0 * law.alpha * sd * nstream.normal() / denom;
  }
  return draws;
}

double decomposition_residual(const ProcessPath& path, int n) {
  if (path.bh.H.H <= 0.5)
    throw DomainError("decomposition identity is stated for H > 1/2");
  HurstParam H = path.bh.H;
  SufficientStats s = sufficient_stats(path, H, n);

  const double dt = path.dt();
  const auto k = static_cast<Eigen::Index>(std::llround(n / dt));
  const auto B = path.bh.values.head(k + 1);
  const auto Z = path.Z.head(k + 1);
  const double alpha = path.alpha;
  const PeriodicDrift& d = path.drift;
  const DriftFunctionals f = drift_functionals(d, alpha);

  Eigen::VectorXd t(k + 1), eas(k + 1), Lv(k + 1), Rv(k + 1);
  for (Eigen::Index j = 0; j <= k; ++j) {
    t(j) = static_cast<double>(j) * dt;
    eas(j) = std::exp(alpha * t(j));
    Lv(j) = drift_L(d, t(j));
    Rv(j) = A_of_t(d, alpha, t(j)) - f.A_inf;
  }

  const double lhs = 0.5 * path.X(k) * path.X(k) - s.lambda_n.dot(s.phi_dX);

  Eigen::VectorXd phi_dB(d.p());
  for (int i = 0; i < d.p(); ++i)
    phi_dB(i) = integrate_against(basis_values(d.basis[i], dt, k), B);

  const double int_eas_dB = integrate_against(eas, B);
  const double Bn = B(k);
  const double en_alpha = eas(k);

  // inner integral M_s = int_0^s e^{alpha r} B_r dr by cumulative trapezoid
  Eigen::VectorXd M = cumulative_trapezoid(eas.cwiseProduct(B), dt);

  const double S_n =
      0.5 * Bn * Bn + en_alpha * Rv(k) * Bn - trapezoid(Lv.cwiseProduct(B), dt) -
      alpha * trapezoid(B.cwiseProduct(B), dt) - s.lambda_n.dot(phi_dB) -
      alpha * trapezoid(eas.cwiseProduct(B).cwiseProduct(Rv), dt) +
      alpha * alpha *
          trapezoid(eas.cwiseInverse().cwiseProduct(B).cwiseProduct(M), dt);

  const double rhs = static_cast<double>(n) * alpha * s.gamma_inv +
                     (f.A_inf + alpha * Z(k)) * int_eas_dB + S_n;
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double error_representation_check(const ProcessPath& path, HurstParam H, int n) {
  EstimatorOutput est = estimate(path, H, n);
  const double dt = path.dt();
  const auto k = static_cast<Eigen::Index>(std::llround(n / dt));
  const auto B = path.bh.values.head(k + 1);

  Eigen::VectorXd G(path.drift.p());
  for (int i = 0; i < path.drift.p(); ++i)
    G(i) = integrate_against(basis_values(path.drift.basis[i], dt, k), B);

  const Eigen::VectorXd lhs = est.mu_hat - path.drift.mu;
  const Eigen::VectorXd rhs =
      (path.alpha - est.alpha_hat) * est.stats.lambda_n + G / static_cast<double>(n);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace fou
