#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "fou/estimator.hpp"
#include "fou/periodic_basis.hpp"
#include "fou/process.hpp"

namespace fou {

/// sigma_H^2 = H Gamma(2H) / alpha^{2H}, the variance of the Gaussian
/// numerator in the alpha limit law.
double sigma_H2(HurstParam H, double alpha);

/// D_ij = (int_0^1 phi_i)(int_0^1 phi_j): rank <= 1 outer product of basis means.
Eigen::MatrixXd d_matrix(const std::vector<BasisFunction>& basis);

/// Sampler configuration for the limit law of e^{alpha n}(alpha_hat - alpha).
struct AlphaLimitLaw {
  double alpha;
  HurstParam H;
  double A_inf;
  double sigma2;          // sigma_H^2
  double T_trunc;         // Z_inf truncation horizon
  double dt;              // Z_inf integration step
  double tail_sd_bound;   // reported truncation tail bound
  std::uint64_t resample_count = 0;  // near-zero denominators hit while sampling

  AlphaLimitLaw(const PeriodicDrift& drift, double alpha, HurstParam H,
                double T_trunc = 0.0, double dt = 0x1.0p-8);
};

/// i.i.d. draws of 2 alpha N1 / (A_inf + alpha Z_inf); N1 and Z_inf come from
/// separate streams derived from (seed, tag).
Eigen::VectorXd sample_alpha_limit(AlphaLimitLaw& law, Eigen::Index count,
                                   std::uint64_t seed);

/// Relative residual of the pathwise decomposition
///   X_n^2/2 - sum Lambda int phi dX = n alpha gamma_n^{-1}
///       + (A_inf + alpha Z_n) int_0^n e^{alpha s} dB^H + S_n,
/// with every S_n term evaluated from its definition. Requires H > 1/2.
double decomposition_residual(const ProcessPath& path, int n);

/// Max coordinate discrepancy of mu_hat - mu = (alpha - alpha_hat) Lambda + G_n / n,
/// where G_{n,i} = int_0^n phi_i dB^H on the known driving path.
double error_representation_check(const ProcessPath& path, HurstParam H, int n);

}  // namespace fou
