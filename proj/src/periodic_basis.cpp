#include "fou/periodic_basis.hpp"

#include <cmath>
#include <numbers>

#include "fou/errors.hpp"
#include "fou/quadrature.hpp"

namespace fou {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double t) { return t - std::floor(t); }

double eval_tabulated(const Eigen::VectorXd& table, double t) {
  if (table.size() == 0)
    throw DomainError("tabulated basis function has an empty table");
  const auto n = table.size();
  const double u = frac(t) * static_cast<double>(n);
  const auto i = static_cast<Eigen::Index>(u);
  const double w = u - static_cast<double>(i);
  const double left = table(i);
  const double right = table((i + 1) % n);  // wraps, 1-periodic
  return left + w * (right - left);
}

}  // namespace

std::string BasisFunction::name() const {
  switch (kind) {
    case Kind::Constant: return "constant";
    case Kind::Cosine: return "cos:" + std::to_string(k);
    case Kind::Sine: return "sin:" + std::to_string(k);
    case Kind::Tabulated: return "tabulated";
  }
  return "?";
}

double eval_basis(const BasisFunction& phi, double t) {
  switch (phi.kind) {
    case BasisFunction::Kind::Constant:
      return 1.0;
    case BasisFunction::Kind::Cosine:
      return kSqrt2 * std::cos(kTwoPi * phi.k * frac(t));
    case BasisFunction::Kind::Sine:
      return kSqrt2 * std::sin(kTwoPi * phi.k * frac(t));
    case BasisFunction::Kind::Tabulated:
      return eval_tabulated(phi.table, t);
  }
  return 0.0;
}

double integral_basis(const BasisFunction& phi, double t) {
  const double w = kTwoPi * phi.k;
  switch (phi.kind) {
    case BasisFunction::Kind::Constant:
      return t;
    case BasisFunction::Kind::Cosine:
      return kSqrt2 * std::sin(w * t) / w;
    case BasisFunction::Kind::Sine:
      return kSqrt2 * (1.0 - std::cos(w * t)) / w;
    case BasisFunction::Kind::Tabulated: {
      // one full period has a fixed integral; Simpson only on the fractional tail
      const double n_whole = std::floor(t);
      auto g = [&phi](double s) { return eval_basis(phi, s); };
      const double per_period = simpson(g, 0.0, 1.0);
      return n_whole * per_period + simpson(g, 0.0, t - n_whole);
    }
  }
  return 0.0;
}

double exp_weighted_integral(const BasisFunction& phi, double alpha, double t) {
  if (alpha <= 0.0) throw DomainError("alpha must be positive");
  const double w = kTwoPi * phi.k;
  const double a2w2 = alpha * alpha + w * w;
  switch (phi.kind) {
    case BasisFunction::Kind::Constant:
      return -std::expm1(-alpha * t) / alpha;
    case BasisFunction::Kind::Cosine:
      return kSqrt2 *
             (std::exp(-alpha * t) * (w * std::sin(w * t) - alpha * std::cos(w * t)) +
              alpha) /
             a2w2;
    case BasisFunction::Kind::Sine:
      return kSqrt2 *
             (-std::exp(-alpha * t) * (alpha * std::sin(w * t) + w * std::cos(w * t)) +
              w) /
             a2w2;
    case BasisFunction::Kind::Tabulated: {
      auto g = [&phi, alpha](double s) {
        return std::exp(-alpha * s) * eval_basis(phi, s);
      };
      return simpson(g, 0.0, t);
    }
  }
  return 0.0;
}

double lambda_coefficient(const BasisFunction& phi, double alpha) {
  if (alpha <= 0.0) throw DomainError("alpha must be positive");
  const double w = kTwoPi * phi.k;
  const double a2w2 = alpha * alpha + w * w;
  const double em1 = std::expm1(alpha);  // e^alpha - 1
  switch (phi.kind) {
    case BasisFunction::Kind::Constant:
      return 1.0 / alpha;
    case BasisFunction::Kind::Cosine:
      // int_0^1 e^{as} sqrt2 cos(ws) ds = sqrt2 alpha (e^a - 1) / (a^2 + w^2)
      return kSqrt2 * alpha / a2w2;
    case BasisFunction::Kind::Sine:
      // int_0^1 e^{as} sqrt2 sin(ws) ds = -sqrt2 w (e^a - 1) / (a^2 + w^2)
      return -kSqrt2 * w / a2w2;
    case BasisFunction::Kind::Tabulated: {
      auto g = [&phi, alpha](double s) {
        return std::exp(alpha * s) * eval_basis(phi, s);
      };
      return simpson(g, 0.0, 1.0) / em1;
    }
  }
  return 0.0;
}

PeriodicDrift::PeriodicDrift(std::vector<BasisFunction> b, Eigen::VectorXd m)
    : basis(std::move(b)), mu(std::move(m)) {
  if (basis.empty()) throw DomainError("basis must have p >= 1 functions");
  if (mu.size() != static_cast<Eigen::Index>(basis.size()))
    throw DomainError("mu length must match basis size");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (basis[i] == basis[j])
        throw DomainError("basis functions must be pairwise distinct");
}

double PeriodicDrift::sup_bound() const {
  double s = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double sup_phi = kSqrt2;
    if (basis[i].kind == BasisFunction::Kind::Constant) sup_phi = 1.0;
    if (basis[i].kind == BasisFunction::Kind::Tabulated)
      sup_phi = basis[i].table.size() ? basis[i].table.cwiseAbs().maxCoeff() : 0.0;
    s += std::abs(mu(static_cast<Eigen::Index>(i))) * sup_phi;
  }
  return s;
}

double drift_L(const PeriodicDrift& d, double t) {
  double v = 0.0;
  for (int i = 0; i < d.p(); ++i) v += d.mu(i) * eval_basis(d.basis[i], t);
  return v;
}

double tilde_L(const PeriodicDrift& d, double t) {
  double v = 0.0;
  for (int i = 0; i < d.p(); ++i) v += d.mu(i) * integral_basis(d.basis[i], t);
  return v;
}

double A_of_t(const PeriodicDrift& d, double alpha, double t) {
  double v = 0.0;
  for (int i = 0; i < d.p(); ++i)
    v += d.mu(i) * exp_weighted_integral(d.basis[i], alpha, t);
  return v;
}

DriftFunctionals drift_functionals(const PeriodicDrift& d, double alpha) {
  if (alpha <= 0.0) throw DomainError("alpha must be positive");
  DriftFunctionals f;
  f.alpha = alpha;
  f.A1 = A_of_t(d, alpha, 1.0);
  f.A_inf = f.A1 / -std::expm1(-alpha);
  f.lambda.resize(d.p());
  for (int i = 0; i < d.p(); ++i) f.lambda(i) = lambda_coefficient(d.basis[i], alpha);
  return f;
}

double remainder_R(const PeriodicDrift& d, double alpha, double t) {
  if (t < 1.0) throw DomainError("remainder_R requires t >= 1");
  const DriftFunctionals f = drift_functionals(d, alpha);
  return A_of_t(d, alpha, t) - f.A_inf;
}

double gram_defect(const std::vector<BasisFunction>& basis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      auto g = [&](double s) { return eval_basis(basis[i], s) * eval_basis(basis[j], s); };
      const double gram = simpson(g, 0.0, 1.0, 0x1.0p-12);
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram - target));
    }
  }
  return worst;
}

}  // namespace fou
