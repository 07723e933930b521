#pragma once

#include <string>
#include <vector>

namespace wentropy {

enum class Family {
  Exponential,
  Uniform,
  Gamma,
  Beta,
  TriangularUp,
  TriangularDown,
  PiecewiseConstant,
};

/// Absolutely continuous lifetime law supported inside (0, nu) with nu
/// possibly +infinity.  cdf, survival and quantile are closed-form (via the
/// regularized incomplete gamma/beta functions where needed), never
/// quadrature.  Instances are immutable and safe for concurrent use.
class Distribution {
 public:
  static Distribution exponential(double lambda);
  static Distribution uniform(double a, double b);  // requires 0 <= a < b
  static Distribution gamma(double shape, double scale);
  static Distribution beta(double alpha, double beta);
  static Distribution triangular_up();    // density 2x on (0,1)
  static Distribution triangular_down();  // density 2(1-x) on (0,1)
  /// Unit-width bins [k-1, k) carrying the given nonnegative weights, which
  /// must sum to 1 within 1e-9.
  static Distribution piecewise_constant(std::vector<double> weights);

  /// Parse a spec string: "exponential:lambda=1", "uniform:a=0,b=2",
  /// "gamma:alpha=2,beta=1", "beta:alpha=2,beta=0.5", "triangular-up",
  /// "triangular-down", "pwc:c=0.2|0.5|0.3".  Unknown families or keys,
  /// missing or duplicate keys and malformed numbers throw ParseError.
  static Distribution parse(const std::string& spec);

  /// Canonical spec string; parse(spec()) reproduces the distribution.
  std::string spec() const;

  Family family() const { return family_; }

  double density(double x) const;
  double cdf(double x) const;
  double survival(double x) const;
  /// density/survival; throws DomainError once survival underflows (1e-300).
  double hazard(double x) const;
  /// density/cdf; throws DomainError once the cdf is below 1e-300.
  double reversed_hazard(double x) const;
  /// Inverse cdf for p in (0,1) (closed form, or a bracketed root of the
  /// closed-form cdf for Gamma and Beta).
  double quantile(double p) const;
  double mean() const;

  double support_lower() const;  // 0 except Uniform(a, b), which gives a
  double support_upper() const;  // nu; +infinity for Exponential and Gamma

  // Family-specific parameter accessors; throw DomainError on mismatch.
  double rate() const;           // Exponential
  double shape() const;          // Gamma
  double scale() const;          // Gamma
  double alpha() const;          // Beta
  double beta_param() const;     // Beta
  const std::vector<double>& weights() const;  // PiecewiseConstant

 private:
  Distribution(Family f, double p1, double p2, std::vector<double> w);

  Family family_;
  double p1_ = 0.0;
  double p2_ = 0.0;
  std::vector<double> weights_;
};

}  // namespace wentropy
