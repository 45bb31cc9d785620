#pragma once

#include <Eigen/Dense>
#include <functional>

namespace fou {

/// Trapezoid rule on a uniform grid: integral of the sampled values over [0, m*dt].
inline double trapezoid(const Eigen::Ref<const Eigen::VectorXd>& f, double dt) {
  const Eigen::Index m = f.size() - 1;
  if (m < 1) return 0.0;
  return dt * (f.segment(1, m - 1).sum() + 0.5 * (f(0) + f(m)));
}

/// Cumulative trapezoid: out[k] = trapezoid of f over [0, k*dt], out[0] = 0.
inline Eigen::VectorXd cumulative_trapezoid(
    const Eigen::Ref<const Eigen::VectorXd>& f, double dt) {
  Eigen::VectorXd out(f.size());
  out(0) = 0.0;
  for (Eigen::Index k = 1; k < f.size(); ++k)
    out(k) = out(k - 1) + 0.5 * dt * (f(k - 1) + f(k));
  return out;
}

/// Composite Simpson rule for g over [a, b] with step <= max_step.
inline double simpson(const std::function<double(double)>& g, double a, double b,
                      double max_step = 0x1.0p-10) {
  if (b <= a) return 0.0;
  auto n = static_cast<Eigen::Index>(std::ceil((b - a) / max_step));
  if (n % 2 == 1) ++n;
  if (n < 2) n = 2;
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0.0, even = 0.0;
  for (Eigen::Index k = 1; k < n; k += 2) odd += g(a + static_cast<double>(k) * h);
  for (Eigen::Index k = 2; k < n; k += 2) even += g(a + static_cast<double>(k) * h);
  return h / 3.0 * (g(a) + g(b) + 4.0 * odd + 2.0 * even);
}

/// Riemann-sum stochastic integral with trapezoid weights on the integrand:
/// sum_k 1/2 (w_k + w_{k+1}) (x_{k+1} - x_k).
inline double integrate_against(const Eigen::Ref<const Eigen::VectorXd>& w,
                                const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index m = x.size() - 1;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < m; ++k)
    acc += 0.5 * (w(k) + w(k + 1)) * (x(k + 1) - x(k));
  return acc;
}

}  // namespace fou
