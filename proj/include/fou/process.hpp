#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "fou/fbm.hpp"
#include "fou/periodic_basis.hpp"

namespace fou {

enum class SimMethod { Exact, Euler };

/// Simulated observation of dX = (L(t) + alpha X) dt + dB^H, X_0 = 0,
/// together with the auxiliary path Z_t = int_0^t e^{-alpha s} B^H_s ds.
struct ProcessPath {
  PeriodicDrift drift;
  double alpha;
  FbmPath bh;
  Eigen::VectorXd X;   // same grid as bh.values
  Eigen::VectorXd Z;   // cumulative trapezoid of e^{-alpha s} B^H_s
  SimMethod method;

  double dt() const { return bh.dt; }
  Eigen::Index steps() const { return bh.steps(); }
  double horizon() const { return bh.horizon(); }
};

/// Z path by cumulative trapezoid rule; Z[0] = 0.
Eigen::VectorXd compute_Z(const FbmPath& bh, double alpha);

/// zeta_t = e^{-alpha t} B^H_t + alpha Z_t on the grid.
Eigen::VectorXd compute_zeta(const FbmPath& bh, const Eigen::VectorXd& Z, double alpha);

/// Reference simulator via the explicit solution
/// X_t = e^{alpha t} A_t + alpha e^{alpha t} Z_t + B^H_t.
ProcessPath simulate_exact(const PeriodicDrift& d, double alpha, const FbmPath& bh);

/// First-order Euler-Maruyama cross-check on the same driving path.
ProcessPath simulate_euler(const PeriodicDrift& d, double alpha, const FbmPath& bh);

/// One draw of Z_inf = int_0^inf e^{-alpha s} B^H_s ds, truncated at T_trunc.
struct ZInfinitySample {
  double value;
  double tail_sd_bound;  // SD bound of the discarded tail int_T^inf e^{-alpha s} B_s ds
};

ZInfinitySample sample_Z_infinity(HurstParam H, double alpha, double T_trunc,
                                  double dt, std::uint64_t seed);

/// CSV dump, header "t,X,BH,Z", 17 significant digits.
void dump_process_csv(const ProcessPath& path, const std::string& filename);

}  // namespace fou
