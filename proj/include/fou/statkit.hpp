#pragma once

#include <Eigen/Dense>

namespace fou {

/// Gamma function via the Lanczos approximation (g = 7, 9 terms);
/// relative error below 1e-12 on [0.5, 5]. Requires x > 0.
double gamma_fn(double x);

/// Standard normal CDF.
double normal_cdf(double x, double mean = 0.0, double sd = 1.0);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;  // 0 for one-sample
};

/// Two-sided two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// at effective size n1 n2 / (n1 + n2). Requires both samples >= 30.
KsResult ks_two_sample(Eigen::VectorXd a, Eigen::VectorXd b);

/// One-sample KS against N(mean, sd^2). Requires >= 30 points and sd > 0.
KsResult ks_one_sample_normal(Eigen::VectorXd a, double mean, double sd);

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_q(double lambda);

double median(Eigen::VectorXd v);

}  // namespace fou
