#include "wentropy/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wentropy/errors.hpp"
#include "wentropy/format.hpp"

namespace wentropy {

namespace {

constexpr double kMassFloor = 1e-300;

// p log p with the vanishing-mass guard: exactly 0 below 1e-300.
double plogp(double p) {
  if (p < kMassFloor) return 0.0;
  return p * std::log(p);
}

void check_agreement(double a, double b, const char* what) {
  const double tol = 1e-8 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  if (!(std::abs(a - b) <= tol) &&
      (std::isfinite(a) && std::isfinite(b))) {
    throw NumericalError(std::string(what) + ": alternate forms disagree (" +
                         format_shortest(a) + " vs " + format_shortest(b) +
                         ")");
  }
}

// Smallest abscissa (by doubling) where the survival drops below 1e-14;
// used only as the truncation fallback when the mapped semi-infinite rule
// fails to converge.
double tail_cutoff(const Distribution& d, double from) {
  double x = std::max({from, d.mean(), 1.0});
  for (int i = 0; i < 120; ++i) {
    if (d.survival(x) < 1e-14) return x;
    x *= 2.0;
  }
  return x;
}

// Integrate f over (lo, hi); when hi is infinite and the mapped rule fails
// to converge, retry on the truncated interval where survival < 1e-14.
QuadratureResult integrate_support(const Distribution& d,
                                   const std::function<double(double)>& f,
                                   double lo, double hi,
                                   const QuadratureConfig& cfg) {
  QuadratureResult r = integrate(f, lo, hi, cfg);
  if (!r.converged && std::isinf(hi)) {
    const double cut = tail_cutoff(d, lo);
    if (cut > lo) {
      QuadratureResult t = integrate(f, lo, cut, cfg);
      if (t.converged) return t;
    }
  }
  return r;
}

double residual_norm(const Distribution& d, double t, const char* what) {
  const double s = d.survival(t);
  if (s < kMassFloor) {
    throw DomainError(std::string(what) + ": degenerate tail at t=" +
                      format_shortest(t));
  }
  return s;
}

double past_norm(const Distribution& d, double t, const char* what) {
  const double c = d.cdf(t);
  if (c < kMassFloor) {
    throw DomainError(std::string(what) + ": degenerate head at t=" +
                      format_shortest(t));
  }
  return c;
}

}  // namespace

const char* measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::DifferentialEntropy: return "differential";
    case MeasureKind::WeightedEntropy: return "weighted";
    case MeasureKind::ResidualEntropy: return "residual";
    case MeasureKind::PastEntropy: return "past";
    case MeasureKind::WeightedResidualEntropy: return "weighted-residual";
    case MeasureKind::WeightedPastEntropy: return "weighted-past";
    case MeasureKind::MeanResidualValue: return "mean-residual-value";
    case MeasureKind::MeanPastLifetime: return "mean-past-lifetime";
    case MeasureKind::LengthBiasedCdf: return "length-biased-cdf";
    case MeasureKind::LengthBiasedSurvival: return "length-biased-survival";
  }
  throw DomainError("unreachable measure kind");
}

std::optional<MeasureKind> measure_from_name(const std::string& name) {
  static constexpr MeasureKind kAll[] = {
      MeasureKind::DifferentialEntropy,  MeasureKind::WeightedEntropy,
      MeasureKind::ResidualEntropy,      MeasureKind::PastEntropy,
      MeasureKind::WeightedResidualEntropy,
      MeasureKind::WeightedPastEntropy,  MeasureKind::MeanResidualValue,
      MeasureKind::MeanPastLifetime,     MeasureKind::LengthBiasedCdf,
      MeasureKind::LengthBiasedSurvival};
  for (MeasureKind k : kAll) {
    if (name == measure_name(k)) return k;
  }
  return std::nullopt;
}

bool measure_needs_t(MeasureKind kind) {
  return kind != MeasureKind::DifferentialEntropy &&
         kind != MeasureKind::WeightedEntropy;
}

QuadratureConfig measure_config() { return {1e-11, 1e-9, 60}; }

MeasureValue differential_entropy(const Distribution& d,
                                  const QuadratureConfig& cfg) {
  auto r = integrate_support(
      d, [&d](double x) { return -plogp(d.density(x)); }, d.support_lower(),
      d.support_upper(), cfg);
  return {r.value, r.converged};
}

MeasureValue weighted_entropy(const Distribution& d,
                              const QuadratureConfig& cfg) {
  auto r = integrate_support(
      d, [&d](double x) { return -x * plogp(d.density(x)); },
      d.support_lower(), d.support_upper(), cfg);
  return {r.value, r.converged};
}

std::optional<double> closed_form_weighted_entropy(const Distribution& d) {
  auto beta_form = [](double a, double b) {
    const double logB = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
    return a / (a + b) *
           (logB - (a - 1.0) * (digamma(a + 1.0) - digamma(a + b + 1.0)) -
            (b - 1.0) * (digamma(b) - digamma(a + b + 1.0)));
  };
  switch (d.family()) {
    case Family::Exponential: {
      const double lam = d.rate();
      return (2.0 - std::log(lam)) / lam;
    }
    case Family::Uniform:
      return d.mean() * std::log(d.support_upper() - d.support_lower());
    case Family::Gamma: {
      const double a = d.shape();
      const double b = d.scale();
      return a * b * (a * std::log(b) + log_gamma(a)) -
             a * (a - 1.0) * b * (std::log(b) + digamma(a + 1.0)) +
             a * (a + 1.0) * b;
    }
    case Family::Beta:
      return beta_form(d.alpha(), d.beta_param());
    case Family::TriangularUp:
      return beta_form(2.0, 1.0);
    case Family::TriangularDown:
      return beta_form(1.0, 2.0);
    case Family::PiecewiseConstant: {
      double h = 0.0;
      double kterm = 0.0;
      const auto& c = d.weights();
      for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] <= 0.0) continue;
        h -= c[k] * std::log(c[k]);
        kterm -= static_cast<double>(k + 1) * c[k] * std::log(c[k]);
      }
      return kterm - 0.5 * h;
    }
  }
  return std::nullopt;
}

MeasureValue residual_entropy(const Distribution& d, double t,
                              const QuadratureConfig& cfg) {
  const double norm = residual_norm(d, t, "residual entropy");
  const double lo = std::max(t, d.support_lower());
  auto r = integrate_support(
      d,
      [&d, norm](double x) { return -plogp(d.density(x) / norm); },
      lo, d.support_upper(), cfg);
  return {r.value, r.converged};
}

MeasureValue past_entropy(const Distribution& d, double t,
                          const QuadratureConfig& cfg) {
  const double norm = past_norm(d, t, "past entropy");
  const double hi = std::min(t, d.support_upper());
  auto r = integrate(
      [&d, norm](double x) { return -plogp(d.density(x) / norm); },
      d.support_lower(), hi, cfg);
  return {r.value, r.converged};
}

MeasureValue weighted_residual_entropy(const Distribution& d, double t,
                                       const QuadratureConfig& cfg) {
  const double norm = residual_norm(d, t, "weighted residual entropy");
  const double lo = std::max(t, d.support_lower());
  const double hi = d.support_upper();

  // Direct form of the shifted conditional integral.
  auto direct = integrate_support(
      d,
      [&d, norm](double x) {
        return -x * plogp(d.density(x) / norm);
      },
      lo, hi, cfg);

  // Expanded form: delta(t) log survival - (1/survival) * int x f log f,
  // with delta(t) itself in its survival-integral form.
  auto xflogf = integrate_support(
      d, [&d](double x) { return x * plogp(d.density(x)); }, lo, hi, cfg);
  auto survint = integrate_support(
      d, [&d](double x) { return d.survival(x); }, lo, hi, cfg);
  const double delta = t + survint.value / norm;
  const double expanded = delta * std::log(norm) - xflogf.value / norm;

  check_agreement(direct.value, expanded, "weighted residual entropy");
  return {direct.value,
          direct.converged && xflogf.converged && survint.converged};
}

MeasureValue weighted_past_entropy(const Distribution& d, double t,
                                   const QuadratureConfig& cfg) {
  const double norm = past_norm(d, t, "weighted past entropy");
  const double hi = std::min(t, d.support_upper());
  auto r = integrate(
      [&d, norm](double x) {
        return -x * plogp(d.density(x) / norm);
      },
      d.support_lower(), hi, cfg);
  return {r.value, r.converged};
}

MeasureValue mean_residual_value(const Distribution& d, double t,
                                 const QuadratureConfig& cfg) {
  const double norm = residual_norm(d, t, "mean residual value");
  const double lo = std::max(t, d.support_lower());
  const double hi = d.support_upper();
  auto direct = integrate_support(
      d, [&d](double x) { return x * d.density(x); }, lo, hi, cfg);
  auto survint = integrate_support(
      d, [&d](double x) { return d.survival(x); }, lo, hi, cfg);
  const double a = direct.value / norm;
  const double b = t + survint.value / norm;
  check_agreement(a, b, "mean residual value");
  return {a, direct.converged && survint.converged};
}

MeasureValue mean_past_lifetime(const Distribution& d, double t,
                                const QuadratureConfig& cfg) {
  const double norm = past_norm(d, t, "mean past lifetime");
  const double lo = d.support_lower();
  const double hi = std::min(t, d.support_upper());
  auto direct = integrate(
      [&d](double x) { return x * d.density(x); }, lo, hi, cfg);
  auto cdfint = integrate(
      [&d](double x) { return d.cdf(x); }, lo, hi, cfg);
  const double a = direct.value / norm;
  // mu(t) = t - (1/F(t)) int_0^t F; the cdf is 0 below the support and 1
  // beyond it, so only (lo, hi) needs quadrature.
  const double head = cdfint.value + (t > hi ? t - hi : 0.0);
  const double b = t - head / norm;
  check_agreement(a, b, "mean past lifetime");
  return {a, direct.converged && cdfint.converged};
}

MeasureValue length_biased_cdf(const Distribution& d, double t,
                               const QuadratureConfig& cfg) {
  const double mean = d.mean();
  const double hi = std::min(t, d.support_upper());
  if (hi <= d.support_lower()) return {0.0, true};
  auto r = integrate(
      [&d](double x) { return x * d.density(x); }, d.support_lower(), hi, cfg);
  return {std::min(1.0, r.value / mean), r.converged};
}

MeasureValue length_biased_survival(const Distribution& d, double t,
                                    const QuadratureConfig& cfg) {
  const double mean = d.mean();
  const double lo = std::max(t, d.support_lower());
  if (lo >= d.support_upper()) return {0.0, true};
  auto r = integrate_support(
      d, [&d](double x) { return x * d.density(x); }, lo, d.support_upper(),
      cfg);
  return {std::min(1.0, r.value / mean), r.converged};
}

MeasureValue eval_measure(const Distribution& d, MeasureKind kind, double t,
                          const QuadratureConfig& cfg) {
  switch (kind) {
    case MeasureKind::DifferentialEntropy: return differential_entropy(d, cfg);
    case MeasureKind::WeightedEntropy: return weighted_entropy(d, cfg);
    case MeasureKind::ResidualEntropy: return residual_entropy(d, t, cfg);
    case MeasureKind::PastEntropy: return past_entropy(d, t, cfg);
    case MeasureKind::WeightedResidualEntropy:
      return weighted_residual_entropy(d, t, cfg);
    case MeasureKind::WeightedPastEntropy:
      return weighted_past_entropy(d, t, cfg);
    case MeasureKind::MeanResidualValue: return mean_residual_value(d, t, cfg);
    case MeasureKind::MeanPastLifetime: return mean_past_lifetime(d, t, cfg);
    case MeasureKind::LengthBiasedCdf: return length_biased_cdf(d, t, cfg);
    case MeasureKind::LengthBiasedSurvival:
      return length_biased_survival(d, t, cfg);
  }
  throw DomainError("unreachable measure kind");
}

MeasureValue joint_weighted_entropy_quadrature(const Distribution& x,
                                               const Distribution& y) {
  // Iterated quadrature of the full 2-D integrand.
  const QuadratureConfig inner_cfg{1e-10, 1e-8, 60};
  const QuadratureConfig outer_cfg{1e-9, 1e-7, 60};
  auto inner = [&x, &y, &inner_cfg](double xv) {
    const double fx = x.density(xv);
    if (fx < kMassFloor) return 0.0;
    auto r = integrate_support(
        y,
        [&y, xv, fx](double yv) {
          const double joint = fx * y.density(yv);
          return -xv * yv * plogp(joint);
        },
        y.support_lower(), y.support_upper(), inner_cfg);
    return r.value;
  };
  auto outer = integrate_support(x, inner, x.support_lower(),
                                 x.support_upper(), outer_cfg);
  return {outer.value, outer.converged};
}

MeasureValue joint_weighted_entropy(const Distribution& x,
                                    const Distribution& y) {
  const QuadratureConfig cfg = measure_config();
  const MeasureValue hx = weighted_entropy(x, cfg);
  const MeasureValue hy = weighted_entropy(y, cfg);
  const double formula = y.mean() * hx.value + x.mean() * hy.value;

  const MeasureValue outer = joint_weighted_entropy_quadrature(x, y);
  const double tol = 1e-6 * std::max(1.0, std::abs(formula));
  if (!(std::abs(outer.value - formula) <= tol)) {
    throw NumericalError(
        "joint weighted entropy: 2-D quadrature disagrees with the product "
        "formula (" +
        format_shortest(outer.value) + " vs " + format_shortest(formula) +
        ")");
  }
  return {formula, hx.converged && hy.converged && outer.converged};
}

std::vector<double> default_grid(const Distribution& d, int points) {
  if (points < 2) throw DomainError("grid needs at least 2 points");
  const double lo = d.quantile(1e-3);
  const double hi = std::min(d.quantile(1.0 - 1e-3), d.support_upper());
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo + step * static_cast<double>(i);
  }
  return grid;
}

EntropyCurve entropy_curve(const Distribution& d, MeasureKind kind,
                           const std::vector<double>& t_grid,
                           const QuadratureConfig& cfg) {
  EntropyCurve curve;
  curve.kind = kind;
  curve.dist = d.spec();
  curve.grid.reserve(t_grid.size());
  for (double t : t_grid) {
    CurvePoint p;
    p.t = t;
    try {
      const MeasureValue v = eval_measure(d, kind, t, cfg);
      p.value = v.value;
      p.converged = v.converged;
    } catch (const std::exception&) {
      // Per-point failures are recorded, not fatal.
      p.value = std::numeric_limits<double>::quiet_NaN();
      p.converged = false;
    }
    curve.grid.push_back(p);
  }
  return curve;
}

EntropyCurve entropy_curve(const Distribution& d, MeasureKind kind) {
  return entropy_curve(d, kind, default_grid(d));
}

}  // namespace wentropy
