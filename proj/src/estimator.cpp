#include "fou/estimator.hpp"

#include <cmath>

#include "fou/errors.hpp"
#include "fou/quadrature.hpp"

namespace fou {
namespace {

Eigen::Index grid_index(const ProcessPath& path, int n) {
  if (n < 1) throw DomainError("horizon n must be a positive integer");
  const double steps = static_cast<double>(n) / path.dt();
  const auto k = static_cast<Eigen::Index>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(k)) > 1e-9)
    throw DomainError("integer horizon does not land on the grid");
  if (k > path.steps()) throw DomainError("horizon exceeds the simulated path");
  return k;
}

Eigen::VectorXd basis_on_grid(const BasisFunction& phi, double dt, Eigen::Index k) {
  Eigen::VectorXd v(k + 1);
  for (Eigen::Index j = 0; j <= k; ++j)
    v(j) = eval_basis(phi, static_cast<double>(j) * dt);
  return v;
}

}  // namespace

double int_phi_dX(const ProcessPath& path, const BasisFunction& phi, int n) {
  const Eigen::Index k = grid_index(path, n);
  return integrate_against(basis_on_grid(phi, path.dt(), k), path.X.head(k + 1));
}

double int_X_dX(const ProcessPath& path, HurstParam H, int n) {
  const Eigen::Index k = grid_index(path, n);
  const double xn = path.X(k);
  if (H.H == 0.5) return 0.5 * (xn * xn - static_cast<double>(n));
  return 0.5 * xn * xn;
}

SufficientStats sufficient_stats(const ProcessPath& path, HurstParam H, int n) {
  const Eigen::Index k = grid_index(path, n);
  const double dt = path.dt();
  const auto X = path.X.head(k + 1);
  const int p = path.drift.p();

  SufficientStats s;
  s.n = n;
  s.lambda_n.resize(p);
  s.phi_dX.resize(p);
  for (int i = 0; i < p; ++i) {
    Eigen::VectorXd phi = basis_on_grid(path.drift.basis[i], dt, k);
    s.lambda_n(i) = trapezoid(phi.cwiseProduct(X), dt) / static_cast<double>(n);
    s.phi_dX(i) = integrate_against(phi, X);
  }
  s.v_n = trapezoid(X.cwiseProduct(X), dt);
  s.gamma_inv = s.v_n / static_cast<double>(n) - s.lambda_n.squaredNorm();
  s.x_dX = int_X_dX(path, H, n);
  s.realized_qv = (X.tail(k) - X.head(k)).squaredNorm();

  if (s.gamma_inv <= s.bessel_slack())
    throw DegenerateDesign("path is numerically in the span of the basis");
  return s;
}

EstimatorOutput estimate_closed_form(const SufficientStats& stats, HurstParam H) {
  if (stats.gamma_inv <= stats.bessel_slack())
    throw DegenerateDesign("gamma_n undefined");
  const double n = stats.n;
  const double gamma = 1.0 / stats.gamma_inv;
  const double cross = stats.lambda_n.dot(stats.phi_dX);

  EstimatorOutput out{Eigen::VectorXd(stats.lambda_n.size()), 0.0, stats,
                      EstimatorRoute::ClosedForm, H, 0.0};
  out.alpha_hat = gamma / n * (stats.x_dX - cross);
  out.mu_hat =
      (stats.phi_dX + gamma * stats.lambda_n * cross - gamma * stats.lambda_n * stats.x_dX) /
      n;
  return out;
}

EstimatorOutput estimate_matrix(const ProcessPath& path, HurstParam H, int n) {
  SufficientStats s = sufficient_stats(path, H, n);
  const int p = path.drift.p();
  const double nn = static_cast<double>(n);

  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(p + 1, p + 1);
  Q.topLeftCorner(p, p) = nn * Eigen::MatrixXd::Identity(p, p);
  Q.topRightCorner(p, 1) = nn * s.lambda_n;  // U_n
  Q.bottomLeftCorner(1, p) = nn * s.lambda_n.transpose();
  Q(p, p) = s.v_n;

  Eigen::VectorXd P(p + 1);
  P.head(p) = s.phi_dX;
  P(p) = s.x_dX;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Q, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  if (!std::isfinite(cond) || cond >= 1e12)
    throw DegenerateDesign("Q_n is numerically singular");

  Eigen::VectorXd theta = Q.partialPivLu().solve(P);
  EstimatorOutput out{theta.head(p), theta(p), std::move(s),
                      EstimatorRoute::MatrixSolve, H, cond};
  return out;
}

EstimatorOutput estimate(const ProcessPath& path, HurstParam H, int n) {
  return estimate_closed_form(sufficient_stats(path, H, n), H);
}

}  // namespace fou
