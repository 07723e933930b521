#pragma once

#include <functional>
#include <limits>

namespace wentropy {

/// Tolerances for adaptive quadrature.  converged in the result means the
/// error estimate fell below max(abs_tol, rel_tol * |value|).
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_depth = 60;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = std::numeric_limits<double>::infinity();
  bool converged = false;
  long evaluations = 0;
};

/// Adaptive quadrature of f over (a, b) with b possibly +infinity.
///
/// Panels are scored with an embedded open 7/15 Gauss-Kronrod pair, so the
/// integrand is never evaluated at a or b; integrable endpoint behaviour such
/// as x^(alpha-1) or x*log(x) is resolved by subdivision toward the endpoint.
/// A semi-infinite upper limit is folded to (0,1) through x = a + u/(1-u)
/// with Jacobian (1-u)^-2 before the same machinery runs.
///
/// Throws DomainError for an invalid interval or config and NumericalError
/// if f returns NaN (the offending abscissa is named in the message).
/// Non-convergence within max_depth is reported via converged=false, never
/// by throwing.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureConfig& cfg = {});

/// First derivative of f at t by central differencing with step
/// h = cbrt(machine epsilon) * max(1, |t|).  When t +/- h would leave
/// (lo, hi) the step is shrunk, and at a boundary a one-sided second-order
/// stencil is used instead.  Throws DomainError if the domain cannot
/// accommodate any stencil.
double differentiate(const std::function<double(double)>& f, double t,
                     double lo = -std::numeric_limits<double>::infinity(),
                     double hi = std::numeric_limits<double>::infinity());

/// Root of g on a bracketing interval [lo, hi] (sign change required) by
/// bisection with secant acceleration.  Iterates until the bracket width
/// falls below 1e-12 * max(1, |x|).  Throws BracketError when g(lo) and
/// g(hi) have the same sign so callers can widen the bracket and retry.
double find_root(const std::function<double(double)>& g, double lo, double hi);

/// log Gamma(x) for x > 0, accurate to 1e-12 relative for x >= 1; smaller
/// arguments are lifted with log Gamma(x) = log Gamma(x+1) - log x.
double log_gamma(double x);

/// psi_0(x) = d/dx log Gamma(x) for x > 0, consistent with log_gamma.
double digamma(double x);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
/// Series expansion for x < a+1, continued fraction otherwise.
double reg_inc_gamma(double a, double x);

/// Regularized incomplete beta I_x(a, b) for a, b > 0, 0 <= x <= 1.
double reg_inc_beta(double a, double b, double x);

inline constexpr double euler_gamma = 0.57721566490153286;

}  // namespace wentropy
