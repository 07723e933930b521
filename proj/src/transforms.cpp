#include <wentropy/transforms.hpp>

#include <cmath>
#include <limits>
#include <string>

#include <wentropy/entropies.hpp>
#include <wentropy/errors.hpp>
#include <wentropy/format.hpp>
#include <wentropy/numerics.hpp>

namespace wentropy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassFloor = 1e-300;

double plogp(double p) {
  if (p < kMassFloor) return 0.0;
  return p * std::log(p);
}

double residual_mass(const Distribution& d, double t) {
  const double s = d.survival(t);
  if (s < kMassFloor) {
    throw DomainError("degenerate tail at t=" + format_shortest(t));
  }
  return s;
}

double head_mass(const Distribution& d, double t) {
  const double f = d.cdf(t);
  if (f < kMassFloor) {
    throw DomainError("degenerate head at t=" + format_shortest(t));
  }
  return f;
}

void check_paths(double branch, double direct, const char* what) {
  const double tol =
      1e-6 * std::max(1.0, std::max(std::abs(branch), std::abs(direct)));
  if (!(std::abs(branch - direct) <= tol)) {
    throw NumericalError(std::string(what) +
                         ": branch formula disagrees with direct quadrature "
                         "on the transformed density (" +
                         format_shortest(branch) + " vs " +
                         format_shortest(direct) + ")");
  }
}

/// E{phi(X) g(X) | X in the tail (or head) at u}, with the conditioning mass
/// supplied by the caller.
double conditional_expectation(const Distribution& d,
                               const std::function<double(double)>& weight,
                               double lo, double hi, double mass) {
  const QuadratureConfig cfg = measure_config();
  auto r = integrate(
      [&d, &weight](double x) {
        const double f = d.density(x);
        if (f < kMassFloor) return 0.0;
        return weight(x) * f;
      },
      lo, hi, cfg);
  return r.value / mass;
}

/// Direct evaluation of the weighted residual/past entropy of Y = phi(X) by
/// quadrature in y-space over the transformed density
/// f_Y(y) = f_X(inv(y)) / |phi'(inv(y))|.
double direct_transformed(const Distribution& d, const MonotoneTransform& phi,
                          double t, PhiKind measure) {
  const bool increasing = phi.direction == TransformDirection::Increasing;
  const double lo = d.support_lower();
  const double hi = d.support_upper();
  const double u = phi.inverse(t);

  // P(Y > t) and the y-range endpoints of the transformed support.
  double norm;
  double y_lo;
  double y_hi;
  if (increasing) {
    norm = measure == PhiKind::ResidualPhi ? residual_mass(d, u)
                                           : head_mass(d, u);
    y_lo = phi.forward(lo);
    y_hi = std::isfinite(hi) ? phi.forward(hi) : kInf;
  } else {
    norm = measure == PhiKind::ResidualPhi ? head_mass(d, u)
                                           : residual_mass(d, u);
    y_lo = std::isfinite(hi) ? phi.forward(hi) : 0.0;
    y_hi = phi.forward(lo);
  }

  auto integrand = [&d, &phi, norm](double y) {
    const double x = phi.inverse(y);
    const double fx = d.density(x);
    if (fx < kMassFloor) return 0.0;
    const double fy = fx / std::abs(phi.derivative(x));
    return -y * plogp(fy / norm);
  };
  const QuadratureConfig cfg = measure_config();
  if (measure == PhiKind::ResidualPhi) {
    return integrate(integrand, t, y_hi, cfg).value;
  }
  return integrate(integrand, y_lo, t, cfg).value;
}

}  // namespace

MonotoneTransform identity_transform() {
  MonotoneTransform phi;
  phi.forward = [](double x) { return x; };
  phi.derivative = [](double) { return 1.0; };
  phi.inverse = [](double y) { return y; };
  phi.direction = TransformDirection::Increasing;
  return phi;
}

MonotoneTransform affine_transform(double a, double b) {
  if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("affine transform needs finite a != 0");
  }
  MonotoneTransform phi;
  phi.forward = [a, b](double x) { return a * x + b; };
  phi.derivative = [a](double) { return a; };
  phi.inverse = [a, b](double y) { return (y - b) / a; };
  phi.direction = a > 0.0 ? TransformDirection::Increasing
                          : TransformDirection::Decreasing;
  return phi;
}

void validate_transform(const MonotoneTransform& phi, const Distribution& d) {
  if (!phi.forward || !phi.derivative || !phi.inverse) {
    throw DomainError("transform is missing forward, derivative or inverse");
  }
  const bool increasing = phi.direction == TransformDirection::Increasing;
  for (int i = 0; i < 257; ++i) {
    const double p = 1e-4 + (1.0 - 2e-4) * i / 256.0;
    const double x = d.quantile(p);
    const double slope = phi.derivative(x);
    if (!std::isfinite(slope) || (increasing ? slope <= 0.0 : slope >= 0.0)) {
      throw DomainError("transform derivative at x=" + format_shortest(x) +
                        " contradicts the declared direction");
    }
    const double y = phi.forward(x);
    const double back = phi.forward(phi.inverse(y));
    if (!(std::abs(back - y) <= 1e-9 * std::max(1.0, std::abs(y)))) {
      throw DomainError("transform inverse fails round-trip at x=" +
                        format_shortest(x));
    }
  }
}

PhiEntropy phi_entropy(const Distribution& d, const MonotoneTransform& phi,
                       PhiKind kind, double t) {
  validate_transform(phi, d);
  const QuadratureConfig cfg = measure_config();
  const double lo = d.support_lower();
  const double hi = d.support_upper();

  double norm;
  double a;
  double b;
  if (kind == PhiKind::ResidualPhi) {
    norm = residual_mass(d, t);
    a = std::max(t, lo);
    b = hi;
  } else {
    norm = head_mass(d, t);
    a = lo;
    b = std::min(t, hi);
  }
  auto r = integrate(
      [&d, &phi, norm](double x) {
        const double f = d.density(x);
        if (f < kMassFloor) return 0.0;
        return -phi.forward(x) * plogp(f / norm);
      },
      a, b, cfg);
  return {kind, r.value};
}

double transformed_weighted_residual(const Distribution& d,
                                     const MonotoneTransform& phi, double t) {
  validate_transform(phi, d);
  const bool increasing = phi.direction == TransformDirection::Increasing;
  const double lo = d.support_lower();
  const double hi = d.support_upper();
  const double u = phi.inverse(t);

  double branch;
  if (increasing) {
    const double mass = residual_mass(d, u);
    const double extra = conditional_expectation(
        d,
        [&phi](double x) {
          return phi.forward(x) * std::log(phi.derivative(x));
        },
        std::max(u, lo), hi, mass);
    branch = phi_entropy(d, phi, PhiKind::ResidualPhi, u).value + extra;
  } else {
    const double mass = head_mass(d, u);
    const double extra = conditional_expectation(
        d,
        [&phi](double x) {
          return phi.forward(x) * std::log(-phi.derivative(x));
        },
        lo, std::min(u, hi), mass);
    branch = phi_entropy(d, phi, PhiKind::PastPhi, u).value + extra;
  }
  const double direct = direct_transformed(d, phi, t, PhiKind::ResidualPhi);
  check_paths(branch, direct, "transformed weighted residual entropy");
  return branch;
}

double transformed_weighted_past(const Distribution& d,
                                 const MonotoneTransform& phi, double t) {
  validate_transform(phi, d);
  const bool increasing = phi.direction == TransformDirection::Increasing;
  const double lo = d.support_lower();
  const double hi = d.support_upper();
  const double u = phi.inverse(t);

  double branch;
  if (increasing) {
    const double mass = head_mass(d, u);
    const double extra = conditional_expectation(
        d,
        [&phi](double x) {
          return phi.forward(x) * std::log(phi.derivative(x));
        },
        lo, std::min(u, hi), mass);
    branch = phi_entropy(d, phi, PhiKind::PastPhi, u).value + extra;
  } else {
    const double mass = residual_mass(d, u);
    const double extra = conditional_expectation(
        d,
        [&phi](double x) {
          return phi.forward(x) * std::log(-phi.derivative(x));
        },
        std::max(u, lo), hi, mass);
    branch = phi_entropy(d, phi, PhiKind::ResidualPhi, u).value + extra;
  }
  const double direct = direct_transformed(d, phi, t, PhiKind::PastPhi);
  check_paths(branch, direct, "transformed weighted past entropy");
  return branch;
}

namespace {

// The composed formulas only see the base measures at u = (t-b)/a, so t must
// map back into the support.
double affine_pullback(const Distribution& d, double a, double b, double t) {
  if (!(a > 0.0) || !(b >= 0.0)) {
    throw DomainError("affine map needs a > 0 and b >= 0");
  }
  const double u = (t - b) / a;
  if (u < d.support_lower() || u > d.support_upper()) {
    throw DomainError("t=" + format_shortest(t) +
                      " maps outside the support of the base law");
  }
  return u;
}

}  // namespace

double affine_residual(const Distribution& d, double a, double b, double t) {
  const double u = affine_pullback(d, a, b, t);
  return a * weighted_residual_entropy(d, u).value +
         mean_residual_value(d, u).value * a * std::log(a) +
         b * (residual_entropy(d, u).value + std::log(a));
}

double affine_past(const Distribution& d, double a, double b, double t) {
  const double u = affine_pullback(d, a, b, t);
  return a * weighted_past_entropy(d, u).value +
         mean_past_lifetime(d, u).value * a * std::log(a) +
         b * (past_entropy(d, u).value + std::log(a));
}

}  // namespace wentropy
