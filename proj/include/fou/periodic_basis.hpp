#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace fou {

/// One element of the 1-periodic orthonormal family. Built-in kinds are the
/// normalized Fourier functions {1, sqrt(2) cos(2 pi k t), sqrt(2) sin(2 pi k t)};
/// a tabulated kind interpolates sampled values on [0,1) piecewise-linearly and
/// is not guaranteed orthonormal (see gram_defect).
struct BasisFunction {
  enum class Kind { Constant, Cosine, Sine, Tabulated };

  Kind kind = Kind::Constant;
  int k = 0;                   // frequency, Cosine/Sine only
  Eigen::VectorXd table;       // samples on [0,1), Tabulated only

  static BasisFunction constant() { return {Kind::Constant, 0, {}}; }
  static BasisFunction cosine(int k) { return {Kind::Cosine, k, {}}; }
  static BasisFunction sine(int k) { return {Kind::Sine, k, {}}; }
  static BasisFunction tabulated(Eigen::VectorXd samples) {
    return {Kind::Tabulated, 0, std::move(samples)};
  }

  bool operator==(const BasisFunction& o) const {
    return kind == o.kind && k == o.k && table.size() == o.table.size() &&
           (table.size() == 0 || table == o.table);
  }

  std::string name() const;
};

/// Value of phi at t mod 1.
double eval_basis(const BasisFunction& phi, double t);

/// Antiderivative int_0^t phi(s) ds (exact for built-in kinds, Simpson otherwise).
double integral_basis(const BasisFunction& phi, double t);

/// int_0^t exp(-alpha s) phi(s) ds (exact for built-in kinds, Simpson otherwise).
double exp_weighted_integral(const BasisFunction& phi, double alpha, double t);

/// lambda_phi = (int_0^1 phi(s) e^{alpha s} ds) / (e^alpha - 1).
double lambda_coefficient(const BasisFunction& phi, double alpha);

/// Periodic drift L(t) = sum_i mu_i phi_i(t).
struct PeriodicDrift {
  std::vector<BasisFunction> basis;
  Eigen::VectorXd mu;

  PeriodicDrift(std::vector<BasisFunction> b, Eigen::VectorXd m);

  int p() const { return static_cast<int>(basis.size()); }

  /// sup over [0,1) of |L| (coarse bound via coefficient sums for built-ins).
  double sup_bound() const;
};

/// Deterministic functionals of (drift, alpha) used by the estimator limits.
struct DriftFunctionals {
  double alpha = 0.0;
  double A1 = 0.0;               // int_0^1 e^{-alpha s} L(s) ds
  double A_inf = 0.0;            // A1 / (1 - e^{-alpha})
  Eigen::VectorXd lambda;        // lambda_{phi_i}
};

double drift_L(const PeriodicDrift& d, double t);

/// tilde L(t) = int_0^t L(s) ds.
double tilde_L(const PeriodicDrift& d, double t);

/// A_t = int_0^t e^{-alpha s} L(s) ds.
double A_of_t(const PeriodicDrift& d, double alpha, double t);

DriftFunctionals drift_functionals(const PeriodicDrift& d, double alpha);

/// R_t = A_t - A_inf, defined for t >= 1; |R_t| <= C e^{-alpha t}.
double remainder_R(const PeriodicDrift& d, double alpha, double t);

/// Max |<phi_i, phi_j> - delta_ij| over the basis, Simpson step 2^-12.
/// Reports orthonormality defects of tabulated functions instead of failing.
double gram_defect(const std::vector<BasisFunction>& basis);

}  // namespace fou
