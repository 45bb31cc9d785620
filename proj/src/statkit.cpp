#include "fou/statkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fou/errors.hpp"

namespace fou {
namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey/Pugh).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double ks_pvalue(double d, double ne) {
  // Stephens' small-sample correction on top of the asymptotic distribution.
  const double sq = std::sqrt(ne);
  return kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
}

}  // namespace

double gamma_fn(double x) {
  if (x <= 0.0) throw DomainError("gamma_fn requires x > 0");
  if (x < 0.5) {
    // reflection, only reachable via internal recursion
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double normal_cdf(double x, double mean, double sd) {
  if (sd <= 0.0) throw DomainError("normal_cdf requires sd > 0");
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // dual theta-series: fast and cancellation-free for small lambda
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double y = std::exp(-pi2 / (8.0 * lambda * lambda));
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda *
                       (y + std::pow(y, 9) + std::pow(y, 25) + std::pow(y, 49));
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(Eigen::VectorXd a, Eigen::VectorXd b) {
  if (a.size() < 30 || b.size() < 30)
    throw DomainError("ks_two_sample requires samples of size >= 30");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto n1 = a.size(), n2 = b.size();
  double d = 0.0;
  Eigen::Index i = 0, j = 0;
  while (i < n1 && j < n2) {
    const double x = std::min(a(i), b(j));
    while (i < n1 && a(i) <= x) ++i;
    while (j < n2 && b(j) <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    static_cast<double>(n1 + n2);
  return {d, ks_pvalue(d, ne), n1, n2};
}

KsResult ks_one_sample_normal(Eigen::VectorXd a, double mean, double sd) {
  if (a.size() < 30) throw DomainError("ks_one_sample_normal requires >= 30 points");
  if (sd <= 0.0) throw DomainError("sd must be positive");
  std::sort(a.begin(), a.end());
  const auto n = a.size();
  double d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double f = normal_cdf(a(i), mean, sd);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return {d, ks_pvalue(d, static_cast<double>(n)), n, 0};
}

double median(Eigen::VectorXd v) {
  if (v.size() == 0) throw DomainError("median of empty sample");
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return (n % 2 == 1) ? v(n / 2) : 0.5 * (v(n / 2 - 1) + v(n / 2));
}

}  // namespace fou
