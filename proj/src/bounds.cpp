#include <wentropy/bounds.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <wentropy/entropies.hpp>
#include <wentropy/errors.hpp>
#include <wentropy/numerics.hpp>

namespace wentropy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSlackTol = 1e-7;

/// Non-strict decrease of fn along a 64-point geometric grid spanning the
/// central [1e-3, 1-1e-3] quantile range, with 1e-9 relative tolerance.
bool decreasing_on_support(const Distribution& d,
                           const std::function<double(double)>& fn) {
  const double lo = d.quantile(1e-3);
  const double hi = d.quantile(1.0 - 1e-3);
  const double ratio = hi / lo;
  double prev = fn(lo);
  for (int i = 1; i < 64; ++i) {
    const double t = lo * std::pow(ratio, i / 63.0);
    const double cur = fn(t);
    if (cur > prev + 1e-9 * std::abs(prev)) return false;
    prev = cur;
  }
  return true;
}

BoundReport finish(BoundId id, const Distribution& d, bool precondition,
                   std::vector<BoundSample> samples) {
  BoundReport r;
  r.bound_id = id;
  r.dist = d.spec();
  r.precondition_met = precondition;
  r.samples = std::move(samples);
  r.envelope_mu = kNaN;
  r.envelope_value = kNaN;
  if (!precondition) {
    r.min_slack = kNaN;
    r.verdict = BoundVerdict::NotApplicable;
    return r;
  }
  double worst = kInf;
  for (const auto& s : r.samples) worst = std::min(worst, s.slack);
  r.min_slack = worst;
  r.verdict =
      worst >= -kSlackTol ? BoundVerdict::Holds : BoundVerdict::Fails;
  return r;
}

}  // namespace

const char* bound_name(BoundId id) {
  switch (id) {
    case BoundId::Eq24_global: return "Eq24_global";
    case BoundId::Eq14_residual_lower: return "Eq14_residual_lower";
    case BoundId::Eq25_past_upper: return "Eq25_past_upper";
    case BoundId::Eq17_past_upper: return "Eq17_past_upper";
  }
  throw DomainError("unreachable bound id");
}

const char* bound_verdict_name(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Holds: return "holds";
    case BoundVerdict::Fails: return "fails";
    case BoundVerdict::NotApplicable: return "not applicable";
  }
  throw DomainError("unreachable bound verdict");
}

const char* class_kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::WURL: return "WURL";
    case ClassKind::WUPL: return "WUPL";
  }
  throw DomainError("unreachable class kind");
}

std::optional<ClassKind> class_kind_from_name(const std::string& name) {
  if (name == "WURL" || name == "wurl") return ClassKind::WURL;
  if (name == "WUPL" || name == "wupl") return ClassKind::WUPL;
  return std::nullopt;
}

const char* monotonicity_name(Monotonicity m) {
  switch (m) {
    case Monotonicity::Decreasing: return "Decreasing";
    case Monotonicity::Increasing: return "Increasing";
    case Monotonicity::Neither: return "Neither";
  }
  throw DomainError("unreachable monotonicity");
}

BoundReport bound_global(const Distribution& d) {
  const double nu = d.support_upper();
  if (!std::isfinite(nu)) {
    return finish(BoundId::Eq24_global, d, false, {});
  }
  const double mu = d.mean();
  BoundSample s;
  s.t = 0.0;
  s.lhs = weighted_entropy(d).value;
  s.rhs = mu * std::log(nu * nu / (2.0 * mu));
  s.slack = s.rhs - s.lhs;
  auto r = finish(BoundId::Eq24_global, d, true, {s});
  // Envelope of b(mu) = mu log(nu^2/(2 mu)) over mu in (0, nu]: the interior
  // stationary point nu^2/(2e) applies until it leaves the range at nu = 2e.
  const double two_e = 2.0 * std::exp(1.0);
  if (nu < two_e) {
    r.envelope_mu = nu * nu / two_e;
    r.envelope_value = r.envelope_mu;
  } else {
    r.envelope_mu = nu;
    r.envelope_value = nu * std::log(nu / 2.0);
  }
  return r;
}

BoundReport bound_residual_lower(const Distribution& d,
                                 const std::vector<double>& t_grid) {
  const bool dfr =
      decreasing_on_support(d, [&d](double t) { return d.hazard(t); });
  if (!dfr) {
    return finish(BoundId::Eq14_residual_lower, d, false, {});
  }
  std::vector<BoundSample> samples;
  for (double t : t_grid) {
    BoundSample s;
    s.t = t;
    s.lhs = weighted_residual_entropy(d, t).value;
    s.rhs = -mean_residual_value(d, t).value * std::log(d.hazard(t));
    s.slack = s.lhs - s.rhs;
    samples.push_back(s);
  }
  return finish(BoundId::Eq14_residual_lower, d, true, std::move(samples));
}

std::pair<BoundReport, BoundReport> bound_past_upper(
    const Distribution& d, const std::vector<double>& t_grid) {
  std::vector<BoundSample> first;
  for (double t : t_grid) {
    BoundSample s;
    s.t = t;
    s.lhs = weighted_past_entropy(d, t).value;
    const double mu = mean_past_lifetime(d, t).value;
    s.rhs = mu * std::log(t * t / (2.0 * mu));
    s.slack = s.rhs - s.lhs;
    first.push_back(s);
  }
  auto eq25 = finish(BoundId::Eq25_past_upper, d, true, std::move(first));

  const bool drh = decreasing_on_support(
      d, [&d](double t) { return d.reversed_hazard(t); });
  if (!drh) {
    return {std::move(eq25),
            finish(BoundId::Eq17_past_upper, d, false, {})};
  }
  const QuadratureConfig cfg = measure_config();
  std::vector<BoundSample> second;
  for (double t : t_grid) {
    BoundSample s;
    s.t = t;
    s.lhs = weighted_past_entropy(d, t).value;
    // x tau(x) stays bounded as x -> 0+, so the head integral is proper.
    const double head =
        integrate(
            [&d](double x) {
              if (d.cdf(x) < 1e-300) return 0.0;
              return x * d.reversed_hazard(x);
            },
            d.support_lower(), std::min(t, d.support_upper()), cfg)
            .value;
    const double mu = mean_past_lifetime(d, t).value;
    s.rhs = head - mu * (1.0 + std::log(d.reversed_hazard(t)));
    s.slack = s.rhs - s.lhs;
    second.push_back(s);
  }
  return {std::move(eq25),
          finish(BoundId::Eq17_past_upper, d, true, std::move(second))};
}

ClassificationReport classify(const Distribution& d, ClassKind kind) {
  ClassificationReport r;
  r.class_kind = kind;
  r.dist = d.spec();

  const double hi = d.support_upper();
  auto curve = [&d, kind](double u) {
    return kind == ClassKind::WURL ? weighted_residual_entropy(d, u).value
                                   : weighted_past_entropy(d, u).value;
  };
  const double lo_bound = kind == ClassKind::WURL ? 0.0 : d.support_lower();
  const double hi_bound = kind == ClassKind::WURL ? hi : kInf;

  double max_value = 0.0;
  for (int i = 0; i < 128; ++i) {
    const double p = 0.01 + 0.98 * i / 127.0;
    const double t = d.quantile(p);
    try {
      DerivativeSample s;
      s.t = t;
      s.derivative = differentiate(curve, t, lo_bound, hi_bound);
      max_value = std::max(max_value, std::abs(curve(t)));
      r.derivative_samples.push_back(s);
    } catch (const std::exception&) {
      // Skip points where the curve or its stencil is not computable.
    }
  }
  if (r.derivative_samples.size() < 16) {
    throw NumericalError("classification grid collapsed: fewer than 16 "
                         "evaluable points");
  }
  r.zero_tolerance = 1e-7 * (1.0 + max_value);
  bool dec = true;
  bool inc = true;
  for (const auto& s : r.derivative_samples) {
    if (s.derivative > r.zero_tolerance) dec = false;
    if (s.derivative < -r.zero_tolerance) inc = false;
  }
  r.decreasing_compatible = dec;
  r.increasing_compatible = inc;
  // Non-strict classes overlap on constant curves; Decreasing is the
  // resolved label in that case, with both flags left visible.
  r.verdict = dec ? Monotonicity::Decreasing
                  : (inc ? Monotonicity::Increasing : Monotonicity::Neither);
  return r;
}

}  // namespace wentropy
