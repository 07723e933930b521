#pragma once

#include <functional>

#include <wentropy/distribution.hpp>

namespace wentropy {

enum class TransformDirection { Increasing, Decreasing };
enum class PhiKind { ResidualPhi, PastPhi };

/// Strictly monotone, continuously differentiable map of the lifetime axis,
/// supplied with its exact derivative and inverse (numerical differencing of
/// a user map would double-stack error inside the expectation terms).
struct MonotoneTransform {
  std::function<double(double)> forward;
  std::function<double(double)> derivative;
  std::function<double(double)> inverse;
  TransformDirection direction = TransformDirection::Increasing;
};

MonotoneTransform identity_transform();
/// y = a x + b with a != 0; direction follows the sign of a.
MonotoneTransform affine_transform(double a, double b);

/// Screens the transform against the law's central quantile range: the
/// derivative sign must match the declared direction at 257 sample points
/// and forward(inverse(y)) must return y within 1e-9 relative.  Violations
/// throw DomainError.
void validate_transform(const MonotoneTransform& phi, const Distribution& d);

/// Generalized weighted entropy with weight phi(x) instead of x:
///   ResidualPhi: -(1/S(t)) int_t^nu  phi(x) f(x) log(f(x)/S(t)) dx
///   PastPhi:     -(1/F(t)) int_lo^t phi(x) f(x) log(f(x)/F(t)) dx
/// For phi = identity these are exactly the weighted residual and past
/// entropies.
struct PhiEntropy {
  PhiKind kind = PhiKind::ResidualPhi;
  double value = 0.0;
};

PhiEntropy phi_entropy(const Distribution& d, const MonotoneTransform& phi,
                       PhiKind kind, double t);

/// Weighted residual (past) entropy of Y = phi(X) at t, evaluated through
/// the monotone-transform branch formulas:
///   increasing: ResidualPhi(u) + E{phi(X) log phi'(X) | X > u},  u = inv(t)
///   decreasing: PastPhi(u)     + E{phi(X) log[-phi'(X)] | X <= u}
/// (and the mirrored branches for the past measure).  The result is verified
/// in-function against direct quadrature on the transformed density within
/// 1e-6; disagreement throws NumericalError.
double transformed_weighted_residual(const Distribution& d,
                                     const MonotoneTransform& phi, double t);
double transformed_weighted_past(const Distribution& d,
                                 const MonotoneTransform& phi, double t);

/// Scale/shift compositions for Y = aX + b (a > 0, b >= 0), with u = (t-b)/a:
///   residual: a Hw_res(u) + delta(u) a log a + b [H_res(u) + log a]
///   past:     a Hw_past(u) + mu(u) a log a + b [H_past(u) + log a]
/// Throws once u leaves the window where the base measures exist.
double affine_residual(const Distribution& d, double a, double b, double t);
double affine_past(const Distribution& d, double a, double b, double t);

}  // namespace wentropy
