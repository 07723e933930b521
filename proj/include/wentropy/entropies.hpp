#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wentropy/distribution.hpp"
#include "wentropy/numerics.hpp"

namespace wentropy {

enum class MeasureKind {
  DifferentialEntropy,
  WeightedEntropy,
  ResidualEntropy,
  PastEntropy,
  WeightedResidualEntropy,
  WeightedPastEntropy,
  MeanResidualValue,     // E[X | X > t]
  MeanPastLifetime,      // E[X | X <= t]
  LengthBiasedCdf,
  LengthBiasedSurvival,
};

/// CLI/JSON name of a measure ("weighted", "weighted-past", ...).
const char* measure_name(MeasureKind kind);
std::optional<MeasureKind> measure_from_name(const std::string& name);
/// Dynamic measures need an evaluation shift t; the two static entropies
/// do not.
bool measure_needs_t(MeasureKind kind);

/// A scalar measure evaluation; converged covers every quadrature involved.
struct MeasureValue {
  double value = 0.0;
  bool converged = false;
};

struct CurvePoint {
  double t = 0.0;
  double value = 0.0;
  bool converged = false;
};

struct EntropyCurve {
  MeasureKind kind = MeasureKind::WeightedEntropy;
  std::string dist;  // canonical distribution spec
  std::vector<CurvePoint> grid;
};

/// Quadrature tolerances used for measure evaluation.  Tighter than the raw
/// QuadratureConfig default so stacked integrals and two-route agreement
/// checks stay well inside their stated tolerances.
QuadratureConfig measure_config();

// Static measures over the whole support.
MeasureValue differential_entropy(const Distribution& d,
                                  const QuadratureConfig& cfg = measure_config());
MeasureValue weighted_entropy(const Distribution& d,
                              const QuadratureConfig& cfg = measure_config());

/// Closed-form weighted entropy; available for every built-in family.
std::optional<double> closed_form_weighted_entropy(const Distribution& d);

// Dynamic measures.  Residual-type evaluations accept any t below the upper
// support end (conditioning on X > t); past-type evaluations require enough
// head mass (cdf(t) above the 1e-300 floor).  All conditional normalizers
// come from the closed-form cdf/survival, never from quadrature.  The two
// mean measures and the weighted residual entropy are each computed through
// two algebraic routes that must agree within 1e-8 (scaled by magnitude);
// disagreement throws NumericalError.
MeasureValue residual_entropy(const Distribution& d, double t,
                              const QuadratureConfig& cfg = measure_config());
MeasureValue past_entropy(const Distribution& d, double t,
                          const QuadratureConfig& cfg = measure_config());
MeasureValue weighted_residual_entropy(const Distribution& d, double t,
                                       const QuadratureConfig& cfg = measure_config());
MeasureValue weighted_past_entropy(const Distribution& d, double t,
                                   const QuadratureConfig& cfg = measure_config());
MeasureValue mean_residual_value(const Distribution& d, double t,
                                 const QuadratureConfig& cfg = measure_config());
MeasureValue mean_past_lifetime(const Distribution& d, double t,
                                const QuadratureConfig& cfg = measure_config());
MeasureValue length_biased_cdf(const Distribution& d, double t,
                               const QuadratureConfig& cfg = measure_config());
MeasureValue length_biased_survival(const Distribution& d, double t,
                                    const QuadratureConfig& cfg = measure_config());

/// Single dispatch over MeasureKind; t is ignored for static measures.
MeasureValue eval_measure(const Distribution& d, MeasureKind kind, double t,
                          const QuadratureConfig& cfg = measure_config());

/// Weighted entropy of the product of two independent lifetimes, computed as
/// E(Y) Hw(X) + E(X) Hw(Y) and cross-checked against iterated 2-D quadrature
/// of -xy f g log(fg); disagreement beyond 1e-6 throws NumericalError.
MeasureValue joint_weighted_entropy(const Distribution& x,
                                    const Distribution& y);

/// The iterated 2-D quadrature alone, without the product-formula cross-check.
MeasureValue joint_weighted_entropy_quadrature(const Distribution& x,
                                               const Distribution& y);

/// Evenly spaced grid of the given size spanning
/// [quantile(1e-3), min(quantile(1-1e-3), nu)].
std::vector<double> default_grid(const Distribution& d, int points = 512);

/// Evaluate a measure over a grid.  Per-point failures are recorded as
/// non-converged NaN points rather than thrown.
EntropyCurve entropy_curve(const Distribution& d, MeasureKind kind,
                           const std::vector<double>& t_grid,
                           const QuadratureConfig& cfg = measure_config());
EntropyCurve entropy_curve(const Distribution& d, MeasureKind kind);

}  // namespace wentropy
