#include "fou/fbm.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <fstream>
#include <vector>

#include "fou/errors.hpp"
#include "fou/rng.hpp"

namespace fou {
namespace {

constexpr Eigen::Index kCholeskyLimit = 4096;

Eigen::VectorXd fgn_cholesky(HurstParam H, Eigen::Index m, double dt,
                             std::uint64_t seed) {
  if (m > kCholeskyLimit)
    throw NumericalError("Cholesky fGn generator limited to m <= 4096");
  Eigen::MatrixXd cov(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      cov(i, j) = cov(j, i) = fgn_autocovariance(i - j, H, dt);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw NumericalError("fGn covariance is not positive definite");
  RngStream rng(seed);
  Eigen::VectorXd z(m);
  for (Eigen::Index i = 0; i < m; ++i) z(i) = rng.normal();
  return llt.matrixL() * z;
}

Eigen::VectorXd fgn_circulant(HurstParam H, Eigen::Index m, double dt,
                              std::uint64_t seed, bool* ok) {
  const Eigen::Index M = 2 * m;
  // first row of the circulant embedding of the Toeplitz covariance
  Eigen::VectorXcd row(M);
  for (Eigen::Index j = 0; j <= m; ++j) row(j) = fgn_autocovariance(j, H, dt);
  for (Eigen::Index j = m + 1; j < M; ++j) row(j) = row(M - j);

  Eigen::FFT<double> fft;
  Eigen::VectorXcd spectrum(M);
  fft.fwd(spectrum, row);
  Eigen::VectorXd lam = spectrum.real();

  const double max_lam = lam.maxCoeff();
  if (lam.minCoeff() < -1e-9 * max_lam) {
    *ok = false;  // embedding failure, caller falls back to Cholesky
    return {};
  }
  lam = lam.cwiseMax(0.0);  // clamp roundoff negatives

  RngStream rng(seed);
  const double inv_M = 1.0 / static_cast<double>(M);
  Eigen::VectorXcd w(M);
  w(0) = std::sqrt(lam(0) * inv_M) * rng.normal();
  for (Eigen::Index k = 1; k < m; ++k) {
    const double s = std::sqrt(lam(k) * inv_M * 0.5);
    w(k) = std::complex<double>(s * rng.normal(), s * rng.normal());
  }
  w(m) = std::sqrt(lam(m) * inv_M) * rng.normal();
  for (Eigen::Index k = m + 1; k < M; ++k) w(k) = std::conj(w(M - k));

  Eigen::VectorXcd out(M);
  fft.fwd(out, w);
  *ok = true;
  return out.head(m).real();
}

}  // namespace

HurstParam::HurstParam(double h) : H(h) {
  if (!(h >= 0.5 && h < 1.0)) throw DomainError("Hurst index must lie in [1/2, 1)");
}

double fbm_covariance(double s, double t, HurstParam H) {
  if (s < 0.0 || t < 0.0) throw DomainError("fbm_covariance requires s,t >= 0");
  const double h2 = 2.0 * H.H;
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

double fgn_autocovariance(std::int64_t j, HurstParam H, double dt) {
  const double h2 = 2.0 * H.H;
  const double aj = std::abs(static_cast<double>(j));
  return 0.5 * std::pow(dt, h2) *
         (std::pow(aj + 1.0, h2) + std::pow(std::abs(aj - 1.0), h2) -
          2.0 * std::pow(aj, h2));
}

Eigen::VectorXd generate_fgn(HurstParam H, Eigen::Index m, double dt,
                             std::uint64_t seed, FgnMethod method) {
  if (m < 1) throw DomainError("generate_fgn requires m >= 1");
  if (dt <= 0.0) throw DomainError("generate_fgn requires dt > 0");
  switch (method) {
    case FgnMethod::Cholesky:
      return fgn_cholesky(H, m, dt, seed);
    case FgnMethod::Circulant: {
      bool ok = false;
      Eigen::VectorXd inc = fgn_circulant(H, m, dt, seed, &ok);
      if (!ok) throw NumericalError("circulant embedding has a negative eigenvalue");
      return inc;
    }
    case FgnMethod::Auto: {
      bool ok = false;
      Eigen::VectorXd inc = fgn_circulant(H, m, dt, seed, &ok);
      if (ok) return inc;
      return fgn_cholesky(H, m, dt, seed);
    }
  }
  throw DomainError("unknown fGn method");
}

FbmPath generate_fbm_path(HurstParam H, Eigen::Index m, double dt,
                          std::uint64_t seed, FgnMethod method) {
  Eigen::VectorXd inc = generate_fgn(H, m, dt, seed, method);
  FbmPath path{H, dt, Eigen::VectorXd(m + 1), seed};
  path.values(0) = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) path.values(k + 1) = path.values(k) + inc(k);
  return path;
}

void dump_fbm_csv(const FbmPath& path, const std::string& filename) {
  std::ofstream out(filename);
  if (!out) throw std::runtime_error("cannot open " + filename);
  out << "t,BH\n";
  out.precision(17);
  for (Eigen::Index k = 0; k < path.values.size(); ++k)
    out << static_cast<double>(k) * path.dt << ',' << path.values(k) << '\n';
}

}  // namespace fou
