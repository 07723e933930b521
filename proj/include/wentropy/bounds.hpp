#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <wentropy/distribution.hpp>

namespace wentropy {

enum class BoundId {
  Eq24_global,
  Eq14_residual_lower,
  Eq25_past_upper,
  Eq17_past_upper,
};

/// NotApplicable means a hypothesis of the bound failed the numerical
/// precondition check; the inequality itself is then never asserted.
enum class BoundVerdict { Holds, Fails, NotApplicable };

enum class ClassKind { WURL, WUPL };
enum class Monotonicity { Decreasing, Increasing, Neither };

const char* bound_name(BoundId id);
const char* bound_verdict_name(BoundVerdict v);
const char* class_kind_name(ClassKind k);
std::optional<ClassKind> class_kind_from_name(const std::string& name);
const char* monotonicity_name(Monotonicity m);

/// One probe point of a bound.  Slack is rhs - lhs for upper bounds and
/// lhs - rhs for lower bounds, so nonnegative slack always means "holds".
struct BoundSample {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

struct BoundReport {
  BoundId bound_id = BoundId::Eq24_global;
  std::string dist;
  bool precondition_met = false;
  std::vector<BoundSample> samples;
  double min_slack = 0.0;
  BoundVerdict verdict = BoundVerdict::NotApplicable;
  /// Envelope data (global bound only): the maximizer mu_M of
  /// b(mu) = mu log(nu^2/(2 mu)) over (0, nu] and its value b(mu_M).
  double envelope_mu = 0.0;
  double envelope_value = 0.0;
};

/// Global upper bound Hw <= mu log(nu^2/(2 mu)) with mu = E(X); requires a
/// bounded support (precondition fails otherwise).  A single sample at t=0.
BoundReport bound_global(const Distribution& d);

/// Residual lower bound Hw_res(t) >= -delta(t) log lambda(t), valid when the
/// hazard is decreasing (checked numerically on a geometric grid).
BoundReport bound_residual_lower(const Distribution& d,
                                 const std::vector<double>& t_grid);

/// Past upper bounds, returned as the pair (first, second):
///   first:  Hw_past(t) <= mu(t) log(t^2/(2 mu(t))), unconditional;
///   second: Hw_past(t) <= int_0^t x tau(x) dx - mu(t)[1 + log tau(t)],
///           valid when the reversed hazard is decreasing.
std::pair<BoundReport, BoundReport> bound_past_upper(
    const Distribution& d, const std::vector<double>& t_grid);

struct DerivativeSample {
  double t = 0.0;
  double derivative = 0.0;
};

/// Sign evidence for the monotone-class verdict.  The two compatibility
/// flags record the non-strict tests independently; when both hold (a curve
/// that is constant within tolerance) the verdict resolves to Decreasing.
struct ClassificationReport {
  ClassKind class_kind = ClassKind::WURL;
  std::string dist;
  Monotonicity verdict = Monotonicity::Neither;
  bool decreasing_compatible = false;
  bool increasing_compatible = false;
  std::vector<DerivativeSample> derivative_samples;
  double zero_tolerance = 0.0;
};

/// Classifies the weighted residual (WURL) or weighted past (WUPL) entropy
/// curve by the sign of its numerical derivative on a 128-point interior
/// quantile grid spanning [0.01, 0.99] (a 1% margin at both ends).
/// Per-point failures shrink the grid; fewer than 16 surviving points throw
/// NumericalError.
ClassificationReport classify(const Distribution& d, ClassKind kind);

}  // namespace wentropy
