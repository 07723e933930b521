#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <wentropy/distribution.hpp>
#include <wentropy/errors.hpp>
#include <wentropy/numerics.hpp>

#include "oracle.hpp"

using namespace wentropy;

namespace {

std::vector<Distribution> parameter_sweep() {
  return {
      Distribution::exponential(0.5),
      Distribution::exponential(1.0),
      Distribution::exponential(2.7),
      Distribution::uniform(0.0, 1.0),
      Distribution::uniform(0.9, 1.3),
      Distribution::uniform(1.0 - 1e-6, 1.0),
      Distribution::gamma(0.5, 1.0),
      Distribution::gamma(2.0, 1.0),
      Distribution::gamma(3.0, 0.5),
      Distribution::beta(0.5, 0.5),
      Distribution::beta(2.0, 3.0),
      Distribution::beta(1.0, 2.0),
      Distribution::triangular_up(),
      Distribution::triangular_down(),
      Distribution::piecewise_constant({0.2, 0.5, 0.3}),
      Distribution::piecewise_constant({0.5, 0.0, 0.5}),
  };
}

double numeric_mean(const Distribution& d) {
  auto r = integrate([&d](double x) { return x * d.density(x); },
                     d.support_lower(), d.support_upper(),
                     QuadratureConfig{1e-12, 1e-10, 60});
  REQUIRE(r.converged);
  return r.value;
}

}  // namespace

TEST_CASE("densities integrate to one") {
  for (const auto& d : parameter_sweep()) {
    auto r = integrate([&d](double x) { return d.density(x); },
                       d.support_lower(), d.support_upper(), {});
    INFO(d.spec());
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0) < 1e-8);
  }
}

TEST_CASE("numeric mean matches the closed form") {
  for (const auto& d : parameter_sweep()) {
    INFO(d.spec());
    CHECK(std::abs(numeric_mean(d) - d.mean()) < 1e-8);
  }
}

TEST_CASE("closed-form cdf spot values") {
  CHECK(Distribution::exponential(1.0).cdf(1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  // Gamma(2,1) cdf at 1 equals 1 - 2/e.
  CHECK(Distribution::gamma(2.0, 1.0).cdf(1.0) ==
        doctest::Approx(0.26424111765711533).epsilon(1e-12));
  CHECK(Distribution::beta(2.0, 1.0).cdf(0.5) ==
        doctest::Approx(0.25).epsilon(1e-13));
  CHECK(Distribution::triangular_up().cdf(0.5) == doctest::Approx(0.25));
  CHECK(Distribution::triangular_down().cdf(0.5) == doctest::Approx(0.75));
  const auto pwc = Distribution::piecewise_constant({0.2, 0.5, 0.3});
  CHECK(pwc.cdf(1.5) == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(pwc.survival(2.5) == doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("cdf + survival = 1 and hazard identities") {
  for (const auto& d : parameter_sweep()) {
    INFO(d.spec());
    for (int i = 1; i <= 9; ++i) {
      const double t = d.quantile(i / 10.0);
      CHECK(std::abs(d.cdf(t) + d.survival(t) - 1.0) < 1e-12);
      CHECK(d.hazard(t) * d.survival(t) ==
            doctest::Approx(d.density(t)).epsilon(1e-10));
      CHECK(d.reversed_hazard(t) * d.cdf(t) ==
            doctest::Approx(d.density(t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("hazard and reversed hazard spot values") {
  CHECK(Distribution::exponential(2.0).hazard(0.3) == doctest::Approx(2.0));
  CHECK(Distribution::exponential(2.0).hazard(5.0) == doctest::Approx(2.0));
  // Uniform(0,1): hazard 1/(1-t), reversed hazard 1/t.
  CHECK(Distribution::uniform(0.0, 1.0).hazard(0.5) == doctest::Approx(2.0));
  CHECK(Distribution::uniform(0.0, 1.0).reversed_hazard(0.5) ==
        doctest::Approx(2.0));
  // TriangularUp: reversed hazard 2x/x^2 = 2/x.
  CHECK(Distribution::triangular_up().reversed_hazard(0.5) ==
        doctest::Approx(4.0));
  const auto pwc = Distribution::piecewise_constant({0.2, 0.5, 0.3});
  CHECK(pwc.hazard(2.5) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(Distribution::uniform(0.0, 1.0).hazard(1.0), DomainError);
  CHECK_THROWS_AS(Distribution::exponential(1.0).hazard(800.0), DomainError);
  CHECK_THROWS_AS(Distribution::uniform(0.5, 1.0).reversed_hazard(0.2),
                  DomainError);
}

TEST_CASE("quantile inverts the cdf") {
  for (const auto& d : parameter_sweep()) {
    INFO(d.spec());
    for (int i = 1; i <= 16; ++i) {
      const double p = i / 17.0;
      const double x = d.quantile(p);
      CHECK(std::abs(d.cdf(x) - p) < 1e-9);
    }
  }
  CHECK_THROWS_AS(Distribution::exponential(1.0).quantile(0.0), DomainError);
  CHECK_THROWS_AS(Distribution::exponential(1.0).quantile(1.0), DomainError);
}

TEST_CASE("quantile handles zero-weight plateaus") {
  const auto d = Distribution::piecewise_constant({0.5, 0.0, 0.5});
  CHECK(d.quantile(0.5) == doctest::Approx(1.0));
  CHECK(d.quantile(0.25) == doctest::Approx(0.5));
  CHECK(d.quantile(0.75) == doctest::Approx(2.5));
  CHECK(d.density(1.5) == 0.0);
  CHECK(d.cdf(1.7) == doctest::Approx(0.5));
}

TEST_CASE("spec strings round-trip") {
  for (const auto& d : parameter_sweep()) {
    const auto back = Distribution::parse(d.spec());
    CHECK(back.spec() == d.spec());
    CHECK(back.family() == d.family());
  }
  CHECK(Distribution::parse("exponential:lambda=1").spec() ==
        "exponential:lambda=1");
  CHECK(Distribution::parse("uniform:a=0,b=2").support_upper() == 2.0);
  CHECK(Distribution::parse("gamma:alpha=2,beta=1").mean() == 2.0);
  CHECK(Distribution::parse("pwc:c=0.2|0.5|0.3").mean() ==
        doctest::Approx(1.6).epsilon(1e-14));
  CHECK(Distribution::parse("triangular-up").mean() ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("spec parsing rejects malformed input") {
  CHECK_THROWS_AS(Distribution::parse("weibull:k=2"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("exponential"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("exponential:rate=1"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("exponential:lambda=zero"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("exponential:lambda=1,lambda=2"),
                  ParseError);
  CHECK_THROWS_AS(Distribution::parse("exponential:lambda=-1"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("uniform:a=1,b=0.5"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("uniform:a=-1,b=2"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("uniform:a=0,b=2,c=3"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("triangular-up:x=1"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("pwc:c=0.5|0.4"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("pwc:c=0.5|x|0.5"), ParseError);
  CHECK_THROWS_AS(Distribution::parse("gamma:alpha=0,beta=1"), ParseError);
}

TEST_CASE("support endpoints") {
  CHECK(std::isinf(Distribution::exponential(1.0).support_upper()));
  CHECK(std::isinf(Distribution::gamma(2.0, 1.0).support_upper()));
  CHECK(Distribution::uniform(0.3, 1.7).support_lower() == 0.3);
  CHECK(Distribution::uniform(0.3, 1.7).support_upper() == 1.7);
  CHECK(Distribution::beta(2.0, 3.0).support_upper() == 1.0);
  CHECK(Distribution::piecewise_constant({0.2, 0.5, 0.3}).support_upper() ==
        3.0);
}

TEST_CASE("tail mean against an independent rule") {
  // E[X] for Gamma(2,1) recomputed by tanh-sinh on the folded tail.
  const auto d = Distribution::gamma(2.0, 1.0);
  const double m =
      oracle::integrate_to_inf([&d](double x) { return x * d.density(x); }, 0.0);
  CHECK(m == doctest::Approx(2.0).epsilon(1e-9));
}
