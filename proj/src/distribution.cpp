#include "wentropy/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "wentropy/errors.hpp"
#include "wentropy/format.hpp"
#include "wentropy/numerics.hpp"

namespace wentropy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDenomFloor = 1e-300;

double parse_number(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("malformed number '" + token + "' in distribution spec");
  }
  return value;
}

std::vector<std::pair<std::string, std::string>> parse_pairs(
    const std::string& body) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t pos = 0;
  while (pos <= body.size()) {
    const size_t comma = std::min(body.find(',', pos), body.size());
    const std::string item = body.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size()) {
      throw ParseError("expected key=value, got '" + item + "'");
    }
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    pos = comma + 1;
  }
  return out;
}

double take_key(std::vector<std::pair<std::string, std::string>>& pairs,
                const std::string& key) {
  for (auto it = pairs.begin(); it != pairs.end(); ++it) {
    if (it->first == key) {
      const double v = parse_number(it->second);
      pairs.erase(it);
      for (const auto& rest : pairs) {
        if (rest.first == key) {
          throw ParseError("duplicate key '" + key + "'");
        }
      }
      return v;
    }
  }
  throw ParseError("missing key '" + key + "'");
}

void expect_empty(const std::vector<std::pair<std::string, std::string>>& p) {
  if (!p.empty()) {
    throw ParseError("unknown key '" + p.front().first + "'");
  }
}

}  // namespace

Distribution::Distribution(Family f, double p1, double p2,
                           std::vector<double> w)
    : family_(f), p1_(p1), p2_(p2), weights_(std::move(w)) {}

Distribution Distribution::exponential(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("exponential rate must be positive and finite");
  }
  return {Family::Exponential, lambda, 0.0, {}};
}

Distribution Distribution::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw DomainError("uniform requires 0 <= a < b < infinity");
  }
  return {Family::Uniform, a, b, {}};
}

Distribution Distribution::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) ||
      !std::isfinite(scale)) {
    throw DomainError("gamma shape and scale must be positive and finite");
  }
  return {Family::Gamma, shape, scale, {}};
}

Distribution Distribution::beta(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) ||
      !std::isfinite(beta)) {
    throw DomainError("beta parameters must be positive and finite");
  }
  return {Family::Beta, alpha, beta, {}};
}

Distribution Distribution::triangular_up() {
  return {Family::TriangularUp, 0.0, 0.0, {}};
}

Distribution Distribution::triangular_down() {
  return {Family::TriangularDown, 0.0, 0.0, {}};
}

Distribution Distribution::piecewise_constant(std::vector<double> weights) {
  if (weights.empty()) {
    throw DomainError("piecewise constant law needs at least one bin");
  }
  double sum = 0.0;
  bool any_positive = false;
  for (double c : weights) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw DomainError("bin weights must be nonnegative and finite");
    }
    if (c > 0.0) any_positive = true;
    sum += c;
  }
  if (!any_positive || std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("bin weights must sum to 1 within 1e-9");
  }
  return {Family::PiecewiseConstant, 0.0, 0.0, std::move(weights)};
}

Distribution Distribution::parse(const std::string& spec) {
  const size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string body =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);

  try {
    if (name == "triangular-up" || name == "triangular-down") {
      if (colon != std::string::npos) {
        throw ParseError("'" + name + "' takes no parameters");
      }
      return name == "triangular-up" ? triangular_up() : triangular_down();
    }
    if (colon == std::string::npos || body.empty()) {
      throw ParseError("expected '" + name + ":key=value,...'");
    }
    if (name == "pwc") {
      auto pairs = parse_pairs(body);
      std::string list;
      for (auto it = pairs.begin(); it != pairs.end(); ++it) {
        if (it->first == "c") {
          list = it->second;
          pairs.erase(it);
          break;
        }
      }
      if (list.empty()) throw ParseError("missing key 'c'");
      expect_empty(pairs);
      std::vector<double> weights;
      size_t pos = 0;
      while (pos <= list.size()) {
        const size_t bar = std::min(list.find('|', pos), list.size());
        weights.push_back(parse_number(list.substr(pos, bar - pos)));
        pos = bar + 1;
      }
      return piecewise_constant(std::move(weights));
    }

    auto pairs = parse_pairs(body);
    if (name == "exponential") {
      const double lambda = take_key(pairs, "lambda");
      expect_empty(pairs);
      return exponential(lambda);
    }
    if (name == "uniform") {
      const double a = take_key(pairs, "a");
      const double b = take_key(pairs, "b");
      expect_empty(pairs);
      return uniform(a, b);
    }
    if (name == "gamma") {
      const double alpha = take_key(pairs, "alpha");
      const double beta = take_key(pairs, "beta");
      expect_empty(pairs);
      return gamma(alpha, beta);
    }
    if (name == "beta") {
      const double alpha = take_key(pairs, "alpha");
      const double beta = take_key(pairs, "beta");
      expect_empty(pairs);
      return Distribution::beta(alpha, beta);
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown distribution family '" + name + "'");
}

std::string Distribution::spec() const {
  switch (family_) {
    case Family::Exponential:
      return "exponential:lambda=" + format_shortest(p1_);
    case Family::Uniform:
      return "uniform:a=" + format_shortest(p1_) +
             ",b=" + format_shortest(p2_);
    case Family::Gamma:
      return "gamma:alpha=" + format_shortest(p1_) +
             ",beta=" + format_shortest(p2_);
    case Family::Beta:
      return "beta:alpha=" + format_shortest(p1_) +
             ",beta=" + format_shortest(p2_);
    case Family::TriangularUp:
      return "triangular-up";
    case Family::TriangularDown:
      return "triangular-down";
    case Family::PiecewiseConstant: {
      std::string out = "pwc:c=";
      for (size_t i = 0; i < weights_.size(); ++i) {
        if (i) out += '|';
        out += format_shortest(weights_[i]);
      }
      return out;
    }
  }
  throw DomainError("unreachable family");
}

double Distribution::density(double x) const {
  switch (family_) {
    case Family::Exponential:
      return x < 0.0 ? 0.0 : p1_ * std::exp(-p1_ * x);
    case Family::Uniform:
      return (x > p1_ && x < p2_) ? 1.0 / (p2_ - p1_) : 0.0;
    case Family::Gamma: {
      if (x < 0.0) return 0.0;
      if (p1_ == 1.0) return std::exp(-x / p2_) / p2_;
      if (x == 0.0) return p1_ > 1.0 ? 0.0 : kInf;
      return std::exp((p1_ - 1.0) * std::log(x) - x / p2_ -
                      p1_ * std::log(p2_) - log_gamma(p1_));
    }
    case Family::Beta: {
      if (x <= 0.0 || x >= 1.0) {
        if (x == 0.0 && p1_ < 1.0) return kInf;
        if (x == 1.0 && p2_ < 1.0) return kInf;
        if (x == 0.0 && p1_ == 1.0) return p2_;
        if (x == 1.0 && p2_ == 1.0) return p1_;
        return 0.0;
      }
      const double lb = log_gamma(p1_) + log_gamma(p2_) - log_gamma(p1_ + p2_);
      double lp = -lb;
      if (p1_ != 1.0) lp += (p1_ - 1.0) * std::log(x);
      if (p2_ != 1.0) lp += (p2_ - 1.0) * std::log1p(-x);
      return std::exp(lp);
    }
    case Family::TriangularUp:
      return (x > 0.0 && x < 1.0) ? 2.0 * x : 0.0;
    case Family::TriangularDown:
      return (x > 0.0 && x < 1.0) ? 2.0 * (1.0 - x) : 0.0;
    case Family::PiecewiseConstant: {
      if (x < 0.0 || x >= static_cast<double>(weights_.size())) return 0.0;
      return weights_[static_cast<size_t>(x)];
    }
  }
  throw DomainError("unreachable family");
}

double Distribution::cdf(double x) const {
  switch (family_) {
    case Family::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
    case Family::Uniform:
      return std::clamp((x - p1_) / (p2_ - p1_), 0.0, 1.0);
    case Family::Gamma:
      return x <= 0.0 ? 0.0 : reg_inc_gamma(p1_, x / p2_);
    case Family::Beta:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return reg_inc_beta(p1_, p2_, x);
    case Family::TriangularUp:
      return std::clamp(x, 0.0, 1.0) * std::clamp(x, 0.0, 1.0);
    case Family::TriangularDown: {
      const double u = std::clamp(x, 0.0, 1.0);
      return u * (2.0 - u);
    }
    case Family::PiecewiseConstant: {
      if (x <= 0.0) return 0.0;
      double acc = 0.0;
      for (size_t k = 0; k < weights_.size(); ++k) {
        if (x >= static_cast<double>(k + 1)) {
          acc += weights_[k];
        } else {
          acc += weights_[k] * (x - static_cast<double>(k));
          break;
        }
      }
      return std::min(acc, 1.0);
    }
  }
  throw DomainError("unreachable family");
}

double Distribution::survival(double x) const {
  // The exponential tail is computed directly to keep far-tail precision.
  if (family_ == Family::Exponential) {
    return x <= 0.0 ? 1.0 : std::exp(-p1_ * x);
  }
  return std::max(0.0, 1.0 - cdf(x));
}

double Distribution::hazard(double x) const {
  const double s = survival(x);
  if (s < kDenomFloor) {
    throw DomainError("hazard undefined: survival vanished at x=" +
                      format_shortest(x));
  }
  return density(x) / s;
}

double Distribution::reversed_hazard(double x) const {
  const double c = cdf(x);
  if (c < kDenomFloor) {
    throw DomainError("reversed hazard undefined: cdf vanished at x=" +
                      format_shortest(x));
  }
  return density(x) / c;
}

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile requires p in (0,1)");
  }
  switch (family_) {
    case Family::Exponential:
      return -std::log1p(-p) / p1_;
    case Family::Uniform:
      return p1_ + p * (p2_ - p1_);
    case Family::Gamma: {
      double hi = p1_ * p2_;  // mean as the first guess
      int guard = 0;
      while (cdf(hi) < p) {
        hi *= 2.0;
        if (++guard > 300) {
          throw NumericalError("gamma quantile bracket expansion failed");
        }
      }
      return find_root([this, p](double x) { return cdf(x) - p; }, 0.0, hi);
    }
    case Family::Beta:
      return find_root([this, p](double x) { return cdf(x) - p; }, 0.0, 1.0);
    case Family::TriangularUp:
      return std::sqrt(p);
    case Family::TriangularDown:
      return 1.0 - std::sqrt(1.0 - p);
    case Family::PiecewiseConstant: {
      double acc = 0.0;
      for (size_t k = 0; k < weights_.size(); ++k) {
        if (weights_[k] > 0.0 && p <= acc + weights_[k]) {
          return static_cast<double>(k) + (p - acc) / weights_[k];
        }
        acc += weights_[k];
      }
      return static_cast<double>(weights_.size());
    }
  }
  throw DomainError("unreachable family");
}

double Distribution::mean() const {
  switch (family_) {
    case Family::Exponential:
      return 1.0 / p1_;
    case Family::Uniform:
      return 0.5 * (p1_ + p2_);
    case Family::Gamma:
      return p1_ * p2_;
    case Family::Beta:
      return p1_ / (p1_ + p2_);
    case Family::TriangularUp:
      return 2.0 / 3.0;
    case Family::TriangularDown:
      return 1.0 / 3.0;
    case Family::PiecewiseConstant: {
      double acc = 0.0;
      for (size_t k = 0; k < weights_.size(); ++k) {
        acc += weights_[k] * (static_cast<double>(k) + 0.5);
      }
      return acc;
    }
  }
  throw DomainError("unreachable family");
}

double Distribution::support_lower() const {
  return family_ == Family::Uniform ? p1_ : 0.0;
}

double Distribution::support_upper() const {
  switch (family_) {
    case Family::Exponential:
    case Family::Gamma:
      return kInf;
    case Family::Uniform:
      return p2_;
    case Family::Beta:
    case Family::TriangularUp:
    case Family::TriangularDown:
      return 1.0;
    case Family::PiecewiseConstant:
      return static_cast<double>(weights_.size());
  }
  throw DomainError("unreachable family");
}

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}
}  // namespace

double Distribution::rate() const {
  require(family_ == Family::Exponential, "rate(): not exponential");
  return p1_;
}

double Distribution::shape() const {
  require(family_ == Family::Gamma, "shape(): not gamma");
  return p1_;
}

double Distribution::scale() const {
  require(family_ == Family::Gamma, "scale(): not gamma");
  return p2_;
}

double Distribution::alpha() const {
  require(family_ == Family::Beta, "alpha(): not beta");
  return p1_;
}

double Distribution::beta_param() const {
  require(family_ == Family::Beta, "beta_param(): not beta");
  return p2_;
}

const std::vector<double>& Distribution::weights() const {
  require(family_ == Family::PiecewiseConstant, "weights(): not piecewise");
  return weights_;
}

}  // namespace wentropy
