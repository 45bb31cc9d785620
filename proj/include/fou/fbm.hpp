#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace fou {

/// Hurst index, restricted to [1/2, 1).
struct HurstParam {
  double H;
  explicit HurstParam(double h);
};

enum class FgnMethod { Auto, Circulant, Cholesky };

/// fBm covariance: 1/2 (s^{2H} + t^{2H} - |t-s|^{2H}).
double fbm_covariance(double s, double t, HurstParam H);

/// fGn autocovariance at integer lag j for step dt:
/// gamma(j) = 1/2 dt^{2H} (|j+1|^{2H} + |j-1|^{2H} - 2|j|^{2H}).
double fgn_autocovariance(std::int64_t j, HurstParam H, double dt);

/// m stationary fractional-Gaussian-noise increments.
/// Circulant embedding (Davies-Harte) is the primary method; Cholesky of the
/// m x m covariance is the fallback (and only offered for m <= 4096).
/// Identical (H, m, dt, seed, method) gives bit-identical output.
Eigen::VectorXd generate_fgn(HurstParam H, Eigen::Index m, double dt,
                             std::uint64_t seed, FgnMethod method = FgnMethod::Auto);

/// fBm sample path on the uniform grid {0, dt, ..., m dt}.
struct FbmPath {
  HurstParam H;
  double dt;
  Eigen::VectorXd values;  // length m+1, values[0] = 0
  std::uint64_t seed;

  Eigen::Index steps() const { return values.size() - 1; }
  double horizon() const { return static_cast<double>(steps()) * dt; }
};

FbmPath generate_fbm_path(HurstParam H, Eigen::Index m, double dt,
                          std::uint64_t seed, FgnMethod method = FgnMethod::Auto);

/// CSV dump, header "t,BH", 17 significant digits.
void dump_fbm_csv(const FbmPath& path, const std::string& filename);

}  // namespace fou
