#include <wentropy/characterization.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <wentropy/entropies.hpp>
#include <wentropy/errors.hpp>
#include <wentropy/numerics.hpp>

namespace wentropy {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_input(const ReconstructionInput& in) {
  if (!(in.t > 0.0)) {
    throw DomainError("reconstruction requires t > 0");
  }
  if (!(in.delta_value >= in.t)) {
    throw DomainError("reconstruction input violates delta(t) >= t");
  }
  const double excess = in.delta_value - in.t;
  if (std::abs(in.tail_integral - excess) >
      1e-9 * std::max(1.0, std::abs(in.delta_value))) {
    throw DomainError(
        "reconstruction input violates tail_integral = delta(t) - t");
  }
}

/// Left side of the corrected determining equation.
double corrected_lhs(double x, const ReconstructionInput& in) {
  return x * (in.t * std::log(x) + in.Hw_value - in.delta_value);
}

}  // namespace

ReconstructionInput reconstruction_input(const Distribution& d, double t) {
  const double lo = d.support_lower();
  const double hi = d.support_upper();
  ReconstructionInput in;
  in.t = t;
  in.Hw_value = weighted_residual_entropy(d, t).value;
  in.delta_value = mean_residual_value(d, t).value;
  in.tail_integral = in.delta_value - t;
  in.Hw_derivative = differentiate(
      [&d](double s) { return weighted_residual_entropy(d, s).value; }, t, lo,
      hi);
  in.H_derivative = differentiate(
      [&d](double s) { return residual_entropy(d, s).value; }, t, lo, hi);
  return in;
}

double g_paper(double x, const ReconstructionInput& in) {
  if (!(x > 0.0)) {
    throw DomainError("g_paper requires x > 0");
  }
  return x * (in.t * (1.0 - std::log(x)) - in.Hw_value + in.tail_integral) +
         in.t * in.H_derivative;
}

double g_paper_stationary_point(const ReconstructionInput& in) {
  if (!(in.t > 0.0)) {
    throw DomainError("the stationary point needs t > 0");
  }
  return std::exp(-(in.Hw_value - in.tail_integral) / in.t);
}

std::vector<GAuditSample> audit_g_paper(const Distribution& d,
                                        const std::vector<double>& t_grid) {
  std::vector<GAuditSample> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const ReconstructionInput in = reconstruction_input(d, t);
    const double lam = d.hazard(t);
    out.push_back({t, lam, g_paper(lam, in)});
  }
  return out;
}

HazardSolution reconstruct_hazard(const ReconstructionInput& in) {
  validate_input(in);
  const double x0 =
      std::exp(-(in.t + in.Hw_value - in.delta_value) / in.t);
  if (!std::isfinite(x0) || x0 <= 0.0) {
    std::ostringstream msg;
    msg << "interior minimum location overflowed (exponent "
        << -(in.t + in.Hw_value - in.delta_value) / in.t << ")";
    throw BracketError(msg.str());
  }
  const double min_val = -in.t * x0;
  const double target = in.Hw_derivative;
  const double slack = 1e-12 * std::max(1.0, std::abs(min_val));

  HazardSolution sol;
  sol.minimum_location = x0;
  sol.minimum_value = min_val;

  if (target < min_val - slack) {
    std::ostringstream msg;
    msg << "no positive root: target " << target
        << " lies below the interior minimum " << min_val << " at x = " << x0;
    throw BracketError(msg.str());
  }
  if (std::abs(target - min_val) <= slack) {
    // Tangency: the two roots coincide at the minimum.
    sol.candidates.push_back(x0);
    sol.unique = true;
    return sol;
  }

  auto shifted = [&in, target](double x) {
    return corrected_lhs(x, in) - target;
  };

  // Left branch, decreasing from 0- toward the minimum: a strictly negative
  // target always has a root here, so failing to bracket it is a failure
  // (returning only the right root would hand callers a spurious "unique"
  // solution).  A target of exactly zero has no left root and skips this.
  if (target < 0.0) {
    double a = x0 / 8.0;
    bool left_found = false;
    for (int i = 0; i <= 40 && a > 0.0; ++i, a /= 2.0) {
      if (shifted(a) > 0.0) {
        sol.candidates.push_back(find_root(shifted, a, x0));
        left_found = true;
        break;
      }
    }
    if (!left_found) {
      std::ostringstream msg;
      msg << "root below the interior minimum (" << min_val << " at x = " << x0
          << ") not bracketed within 40 halvings";
      throw BracketError(msg.str());
    }
  }

  // Right branch, increasing from the minimum without bound.
  double b = 8.0 * x0;
  bool bracketed = false;
  for (int i = 0; i <= 40; ++i, b *= 2.0) {
    if (std::isfinite(b) && shifted(b) > 0.0) {
      bracketed = true;
      break;
    }
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg << "root above the interior minimum (" << min_val << " at x = " << x0
        << ") not bracketed within 40 doublings";
    throw BracketError(msg.str());
  }
  sol.candidates.push_back(find_root(shifted, x0, b));

  std::sort(sol.candidates.begin(), sol.candidates.end());
  sol.unique = sol.candidates.size() == 1;
  return sol;
}

const char* point_flag_name(PointFlag flag) {
  switch (flag) {
    case PointFlag::Unique:
      return "unique";
    case PointFlag::Resolved:
      return "resolved";
    case PointFlag::Failed:
      return "failed";
  }
  return "failed";
}

namespace {

/// Candidate closest to the anchor value.
double pick_nearest(const std::vector<double>& candidates, double anchor) {
  double best = candidates.front();
  for (double c : candidates) {
    if (std::abs(c - anchor) < std::abs(best - anchor)) best = c;
  }
  return best;
}

}  // namespace

ReconstructionReport reconstruct_survival_curve(
    const Distribution& d, const std::vector<double>& t_grid,
    std::optional<double> seed) {
  if (t_grid.size() < 2) {
    throw DomainError("reconstruction needs at least two grid points");
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > std::max(0.0, d.support_lower()))) {
      throw DomainError("grid points must lie inside the positive support");
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("grid must be strictly increasing");
    }
  }
  if (!(t_grid.back() < d.support_upper())) {
    throw DomainError("grid points must lie inside the support");
  }

  ReconstructionReport report;
  report.dist = d.spec();
  report.points.resize(t_grid.size());

  // Phase 1: independent pointwise root search.
  std::size_t failures = 0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    ReconstructionPoint& p = report.points[i];
    p.t = t_grid[i];
    p.survival_true = d.survival(p.t);
    p.lambda_hat = kNaN;
    p.survival_hat = kNaN;
    try {
      const HazardSolution sol =
          reconstruct_hazard(reconstruction_input(d, p.t));
      p.candidates = sol.candidates;
      p.flag = sol.unique ? PointFlag::Unique : PointFlag::Resolved;
    } catch (const std::exception&) {
      p.flag = PointFlag::Failed;
      ++failures;
    }
  }
  if (failures * 10 > t_grid.size()) {
    std::ostringstream msg;
    msg << "hazard reconstruction failed at " << failures << " of "
        << t_grid.size() << " grid points";
    throw NumericalError(msg.str());
  }

  // Phase 2: sequential continuity selection.
  bool have_anchor = false;
  double anchor = 0.0;
  for (ReconstructionPoint& p : report.points) {
    if (p.flag == PointFlag::Failed) continue;
    if (p.candidates.size() == 1) {
      p.lambda_hat = p.candidates.front();
    } else if (have_anchor) {
      p.lambda_hat = pick_nearest(p.candidates, anchor);
    } else if (seed.has_value()) {
      p.lambda_hat = pick_nearest(p.candidates, *seed);
    } else {
      throw DomainError(
          "first resolvable grid point has multiple hazard candidates; "
          "pass a seed");
    }
    anchor = p.lambda_hat;
    have_anchor = true;
  }
  if (!have_anchor) {
    throw NumericalError("no grid point produced a hazard estimate");
  }

  // Bridged hazards for accumulation only: Failed points borrow the nearest
  // resolved value (previous if any, else the next one).
  std::vector<double> bridged(t_grid.size());
  double carry = kNaN;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    if (report.points[i].flag != PointFlag::Failed) {
      carry = report.points[i].lambda_hat;
    }
    bridged[i] = carry;
  }
  carry = kNaN;
  for (std::size_t i = report.points.size(); i-- > 0;) {
    if (report.points[i].flag != PointFlag::Failed) {
      carry = report.points[i].lambda_hat;
    }
    if (std::isnan(bridged[i])) bridged[i] = carry;
  }

  // Launch segment: dyadic refinement of (0, t_1] anchored on the first
  // bridged value, swept downward so continuity selection stays meaningful.
  const double t1 = t_grid.front();
  std::vector<std::pair<double, double>> launch;  // (s, lambda), ascending
  launch.reserve(8);
  double down_anchor = bridged.front();
  for (int j = 1; j <= 6; ++j) {
    const double s = t1 / std::pow(2.0, j);
    try {
      const HazardSolution sol = reconstruct_hazard(reconstruction_input(d, s));
      const double lam = sol.unique ? sol.candidates.front()
                                    : pick_nearest(sol.candidates, down_anchor);
      launch.emplace_back(s, lam);
      down_anchor = lam;
    } catch (const std::exception&) {
      // Sub-grid points are best-effort refinement; skip quietly.
    }
  }
  std::sort(launch.begin(), launch.end());

  // Hazard at 0 by linear extrapolation from the two lowest samples.
  double lambda0;
  if (launch.size() >= 2) {
    const auto& [s1, l1] = launch[0];
    const auto& [s2, l2] = launch[1];
    lambda0 = l1 - s1 * (l2 - l1) / (s2 - s1);
  } else if (launch.size() == 1) {
    const double s2 = t1;
    const double l2 = bridged.front();
    const auto& [s1, l1] = launch[0];
    lambda0 = l1 - s1 * (l2 - l1) / (s2 - s1);
  } else {
    lambda0 = bridged.front();
  }
  lambda0 = std::max(lambda0, 0.0);

  // Trapezoidal accumulation of the cumulative hazard from 0.
  double cum = 0.0;
  double prev_s = 0.0;
  double prev_l = lambda0;
  for (const auto& [s, lam] : launch) {
    cum += 0.5 * (s - prev_s) * (lam + prev_l);
    prev_s = s;
    prev_l = lam;
  }
  report.max_survival_error = 0.0;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    ReconstructionPoint& p = report.points[i];
    cum += 0.5 * (p.t - prev_s) * (bridged[i] + prev_l);
    prev_s = p.t;
    prev_l = bridged[i];
    p.survival_hat = std::exp(-cum);
    report.max_survival_error = std::max(
        report.max_survival_error, std::abs(p.survival_hat - p.survival_true));
  }
  return report;
}

}  // namespace wentropy
