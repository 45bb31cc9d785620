#include "fou/process.hpp"

#include <cmath>
#include <fstream>

#include "fou/errors.hpp"
#include "fou/quadrature.hpp"

namespace fou {
namespace {

constexpr double kAlphaHorizonGuard = 40.0;  // e^{80} after squaring is near overflow

void check_guard(double alpha, double horizon) {
  if (alpha <= 0.0) throw DomainError("alpha must be positive");
  if (alpha * horizon > kAlphaHorizonGuard)
    throw NumericalError("alpha * horizon exceeds the overflow guard (40)");
}

}  // namespace

Eigen::VectorXd compute_Z(const FbmPath& bh, double alpha) {
  if (alpha <= 0.0) throw DomainError("alpha must be positive");
  Eigen::VectorXd integrand(bh.values.size());
  for (Eigen::Index k = 0; k < bh.values.size(); ++k)
    integrand(k) = std::exp(-alpha * static_cast<double>(k) * bh.dt) * bh.values(k);
  return cumulative_trapezoid(integrand, bh.dt);
}

Eigen::VectorXd compute_zeta(const FbmPath& bh, const Eigen::VectorXd& Z, double alpha) {
  Eigen::VectorXd zeta(bh.values.size());
  for (Eigen::Index k = 0; k < bh.values.size(); ++k)
    zeta(k) = std::exp(-alpha * static_cast<double>(k) * bh.dt) * bh.values(k) +
              alpha * Z(k);
  return zeta;
}

ProcessPath simulate_exact(const PeriodicDrift& d, double alpha, const FbmPath& bh) {
  check_guard(alpha, bh.horizon());
  Eigen::VectorXd Z = compute_Z(bh, alpha);
  Eigen::VectorXd X(bh.values.size());
  for (Eigen::Index k = 0; k < bh.values.size(); ++k) {
    const double t = static_cast<double>(k) * bh.dt;
    const double eat = std::exp(alpha * t);
    X(k) = eat * A_of_t(d, alpha, t) + alpha * eat * Z(k) + bh.values(k);
  }
  return ProcessPath{d, alpha, bh, std::move(X), std::move(Z), SimMethod::Exact};
}

ProcessPath simulate_euler(const PeriodicDrift& d, double alpha, const FbmPath& bh) {
  check_guard(alpha, bh.horizon());
  Eigen::VectorXd X(bh.values.size());
  X(0) = 0.0;
  for (Eigen::Index k = 0; k + 1 < bh.values.size(); ++k) {
    const double t = static_cast<double>(k) * bh.dt;
    X(k + 1) = X(k) + (drift_L(d, t) + alpha * X(k)) * bh.dt +
               (bh.values(k + 1) - bh.values(k));
  }
  Eigen::VectorXd Z = compute_Z(bh, alpha);
  return ProcessPath{d, alpha, bh, std::move(X), std::move(Z), SimMethod::Euler};
}

ZInfinitySample sample_Z_infinity(HurstParam H, double alpha, double T_trunc,
                                  double dt, std::uint64_t seed) {
  if (alpha <= 0.0) throw DomainError("alpha must be positive");
  if (T_trunc < 5.0 / alpha)
    throw DomainError("Z_inf truncation horizon below 5/alpha; tail too heavy");
  const auto m = static_cast<Eigen::Index>(std::llround(T_trunc / dt));
  FbmPath bh = generate_fbm_path(H, m, dt, seed);
  Eigen::VectorXd Z = compute_Z(bh, alpha);

  // sd of the discarded tail is at most int_T^inf e^{-alpha s} s^H ds
  auto g = [alpha, H](double s) { return std::exp(-alpha * s) * std::pow(s, H.H); };
  const double tail = simpson(g, T_trunc, T_trunc + 40.0 / alpha, 0.01 / alpha);
  return {Z(Z.size() - 1), tail};
}

void dump_process_csv(const ProcessPath& path, const std::string& filename) {
  std::ofstream out(filename);
  if (!out) throw std::runtime_error("cannot open " + filename);
  out << "t,X,BH,Z\n";
  out.precision(17);
  for (Eigen::Index k = 0; k < path.X.size(); ++k)
    out << static_cast<double>(k) * path.dt() << ',' << path.X(k) << ','
        << path.bh.values(k) << ',' << path.Z(k) << '\n';
}

}  // namespace fou
