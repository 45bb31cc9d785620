#pragma once

#include <Eigen/Dense>

#include "fou/process.hpp"

namespace fou {

/// Sufficient statistics of the joint least-squares estimator at integer horizon n.
struct SufficientStats {
  int n = 0;
  Eigen::VectorXd lambda_n;   // Lambda_{n,i} = (1/n) int_0^n phi_i X ds
  double v_n = 0.0;           // V_n = int_0^n X^2 ds
  double gamma_inv = 0.0;     // (1/n) V_n - sum Lambda^2
  Eigen::VectorXd phi_dX;     // int_0^n phi_i dX
  double x_dX = 0.0;          // int_0^n X dX per the H convention
  double realized_qv = 0.0;   // sum (dX)^2 diagnostic (vs the exact n used at H=1/2)

  double bessel_slack() const { return 1e-8 * v_n / static_cast<double>(n); }
};

enum class EstimatorRoute { ClosedForm, MatrixSolve };

struct EstimatorOutput {
  Eigen::VectorXd mu_hat;
  double alpha_hat = 0.0;
  SufficientStats stats;
  EstimatorRoute route = EstimatorRoute::ClosedForm;
  HurstParam H;
  double condition = 0.0;  // matrix route only
};

/// int_0^n phi dX with trapezoid weights on phi (convention-safe: phi has
/// bounded variation, so the Ito correction vanishes at H = 1/2 and the sum
/// converges to the Young integral for H > 1/2).
double int_phi_dX(const ProcessPath& path, const BasisFunction& phi, int n);

/// The paper's closed forms: (X_n^2 - n)/2 at H = 1/2, X_n^2 / 2 for H > 1/2.
double int_X_dX(const ProcessPath& path, HurstParam H, int n);

/// Assemble the statistics at integer horizon n (n <= path horizon).
/// Throws DegenerateDesign when gamma_inv <= 1e-8 (1/n) V_n.
SufficientStats sufficient_stats(const ProcessPath& path, HurstParam H, int n);

/// theta_hat via the block-inverse closed form.
EstimatorOutput estimate_closed_form(const SufficientStats& stats, HurstParam H);

/// theta_hat via assembling Q_n and P_n and solving the dense system.
EstimatorOutput estimate_matrix(const ProcessPath& path, HurstParam H, int n);

/// Convenience: stats + closed form.
EstimatorOutput estimate(const ProcessPath& path, HurstParam H, int n);

}  // namespace fou
