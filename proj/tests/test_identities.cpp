#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <wentropy/distribution.hpp>
#include <wentropy/errors.hpp>
#include <wentropy/identities.hpp>

using namespace wentropy;

namespace {
constexpr double kLog2 = 0.69314718055994531;

std::vector<double> quantile_grid(const Distribution& d, int n) {
  std::vector<double> g;
  for (int i = 1; i <= n; ++i) {
    g.push_back(d.quantile(static_cast<double>(i) / (n + 1.0)));
  }
  return g;
}

const IdentityReport& by_id(const std::vector<IdentityReport>& rs,
                            IdentityId id) {
  for (const auto& r : rs) {
    if (r.identity_id == id) return r;
  }
  throw std::runtime_error("report not found");
}

const ResidualSample& at_t(const IdentityReport& r, double t) {
  for (const auto& s : r.residuals) {
    if (std::abs(s.t - t) < 1e-12) return s;
  }
  throw std::runtime_error("sample not found");
}
}  // namespace

TEST_CASE("tail mean identity") {
  const auto exp1 = check_tail_mean_identity(Distribution::exponential(1.0), 1.0);
  CHECK(exp1.verdict == Verdict::Holds);
  CHECK(exp1.max_abs_residual < 1e-9);
  // Both sides are 2/e.
  CHECK(exp1.residuals[0].lhs ==
        doctest::Approx(0.73575888234288467).epsilon(1e-9));
  CHECK(exp1.residuals[0].rhs ==
        doctest::Approx(0.73575888234288467).epsilon(1e-9));

  CHECK(check_tail_mean_identity(Distribution::gamma(2.0, 1.0), 1.0)
            .max_abs_residual < 1e-8);
  const auto uni = check_tail_mean_identity(Distribution::uniform(0.0, 1.0), 0.5);
  CHECK(uni.verdict == Verdict::Holds);
  CHECK(uni.residuals[0].lhs == doctest::Approx(0.375).epsilon(1e-10));
}

TEST_CASE("head mean identity") {
  const auto uni = check_head_mean_identity(Distribution::uniform(0.0, 1.0), 0.5);
  CHECK(uni.verdict == Verdict::Holds);
  CHECK(uni.residuals[0].lhs == doctest::Approx(0.125).epsilon(1e-10));
  CHECK(uni.residuals[0].rhs == doctest::Approx(0.125).epsilon(1e-10));

  CHECK(check_head_mean_identity(Distribution::exponential(1.0), 1.0)
            .max_abs_residual < 1e-8);
  CHECK(check_head_mean_identity(Distribution::gamma(2.0, 1.0), 1.0)
            .max_abs_residual < 1e-8);

  // t beyond the support: the head integral saturates at the mean while the
  // cdf integral keeps absorbing the excess.
  const auto past_end =
      check_head_mean_identity(Distribution::uniform(0.0, 1.0), 1.5);
  CHECK(past_end.verdict == Verdict::Holds);
  CHECK(past_end.residuals[0].lhs == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("decomposition of the weighted entropy") {
  CHECK(check_decomposition(Distribution::exponential(1.0), 1.0)
            .max_abs_residual < 1e-7);
  CHECK(check_decomposition(Distribution::uniform(0.0, 1.0), 0.5)
            .max_abs_residual < 1e-7);
  CHECK(check_decomposition(Distribution::gamma(2.0, 1.0), 2.0)
            .max_abs_residual < 1e-6);

  for (const auto& d :
       {Distribution::exponential(1.0), Distribution::uniform(0.0, 1.0),
        Distribution::gamma(2.0, 1.0), Distribution::beta(2.0, 1.0)}) {
    INFO(d.spec());
    for (double t : quantile_grid(d, 10)) {
      const auto r = check_decomposition(d, t);
      INFO("t=" << t << " residual=" << r.max_abs_residual);
      CHECK(r.verdict == Verdict::Holds);
      CHECK(r.max_abs_residual < 1e-6);
    }
  }
}

TEST_CASE("audit of the printed residual-side claims on the exponential") {
  const auto d = Distribution::exponential(1.0);
  const auto reports = audit_paper_derivative_identities(d, {0.5, 1.0, 2.0});
  REQUIRE(reports.size() == 3);

  const auto& eq10 = by_id(reports, IdentityId::Eq10_claimed);
  CHECK(eq10.verdict == Verdict::Diverges);
  CHECK(std::isinf(eq10.max_abs_residual));
  const auto& s10 = at_t(eq10, 1.0);
  CHECK(s10.lhs == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(std::isinf(s10.rhs));
  CHECK(s10.rhs > 0.0);

  const auto& eq11 = by_id(reports, IdentityId::Eq11_claimed);
  CHECK(eq11.verdict == Verdict::Fails);
  const auto& s11 = at_t(eq11, 1.0);
  CHECK(s11.lhs == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(s11.rhs) < 1e-6);
  CHECK(eq11.max_abs_residual == doctest::Approx(1.0).epsilon(1e-5));

  const auto& eq16 = by_id(reports, IdentityId::Eq16_claimed);
  CHECK(eq16.verdict == Verdict::Fails);
  CHECK(eq16.max_abs_residual > 1e-3);
}

TEST_CASE("audit of the printed claims on the uniform") {
  const auto d = Distribution::uniform(0.0, 1.0);
  const auto reports =
      audit_paper_derivative_identities(d, {0.25, 0.5, 0.75});
  REQUIRE(reports.size() == 3);

  // Both sides of the printed integral relation are finite here, but unequal.
  const auto& eq10 = by_id(reports, IdentityId::Eq10_claimed);
  CHECK(eq10.verdict == Verdict::Fails);
  const auto& s10 = at_t(eq10, 0.5);
  CHECK(s10.lhs == doctest::Approx(0.75 * std::log(0.5)).epsilon(1e-6));
  CHECK(s10.rhs == doctest::Approx(std::log(0.5) - 0.5).epsilon(1e-5));

  const auto& eq16 = by_id(reports, IdentityId::Eq16_claimed);
  CHECK(eq16.verdict == Verdict::Fails);
  const auto& s16 = at_t(eq16, 0.5);
  CHECK(s16.lhs == doctest::Approx(0.25 * std::log(0.5)).epsilon(1e-6));
  CHECK(s16.rhs == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("corrected derivative identities hold") {
  {
    const auto d = Distribution::exponential(1.0);
    const auto reports = check_corrected_derivatives(d, {0.5, 1.0, 2.0});
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
      INFO(r.note << " residual=" << r.max_abs_residual);
      CHECK(r.verdict == Verdict::Holds);
      CHECK(r.max_abs_residual < 1e-5);
    }
    const auto& rr = by_id(reports, IdentityId::CorrectedResidualDerivative);
    const auto& s = at_t(rr, 1.0);
    // lambda [t log lambda + Hw - delta] = 1 [0 + 3 - 2] = 1.
    CHECK(s.lhs == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(s.rhs == doctest::Approx(1.0).epsilon(1e-7));

    const auto& cc = by_id(reports, IdentityId::CorrectedEq10);
    CHECK(at_t(cc, 1.0).rhs == doctest::Approx(3.0).epsilon(1e-6));
  }
  {
    const auto d = Distribution::uniform(0.0, 1.0);
    const auto reports = check_corrected_derivatives(d, {0.3, 0.5, 0.7});
    for (const auto& r : reports) {
      INFO(r.note << " residual=" << r.max_abs_residual);
      CHECK(r.verdict == Verdict::Holds);
    }
    const auto& pp = by_id(reports, IdentityId::CorrectedPastDerivative);
    const auto& s = at_t(pp, 0.5);
    const double expect = 0.5 * std::log(0.5) + 0.5;
    CHECK(s.lhs == doctest::Approx(expect).epsilon(1e-5));
    CHECK(s.rhs == doctest::Approx(expect).epsilon(1e-7));
  }
  {
    const auto d = Distribution::gamma(2.0, 1.0);
    const auto reports =
        check_corrected_derivatives(d, {0.5, 1.0, 2.0, 4.0});
    for (const auto& r : reports) {
      INFO(r.note << " residual=" << r.max_abs_residual);
      CHECK(r.verdict == Verdict::Holds);
      CHECK(r.max_abs_residual < 1e-5);
    }
  }
}

TEST_CASE("affine and product identities") {
  const auto x = Distribution::exponential(1.0);
  const auto y = Distribution::uniform(0.0, 1.0);
  const auto reports = check_affine_and_product(x, y, 2.0, 1.0);
  REQUIRE(reports.size() == 3);

  const auto& aff = by_id(reports, IdentityId::Prop21i);
  CHECK(aff.verdict == Verdict::Holds);
  // 2[2 + log 2] + 1[1 + log 2] = 5 + 3 log 2.
  CHECK(aff.residuals[0].rhs ==
        doctest::Approx(5.0 + 3.0 * kLog2).epsilon(1e-9));
  CHECK(aff.residuals[0].lhs ==
        doctest::Approx(5.0 + 3.0 * kLog2).epsilon(1e-7));

  const auto& prod = by_id(reports, IdentityId::Prop21ii);
  CHECK(prod.verdict == Verdict::Holds);
  CHECK(prod.residuals[0].lhs == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(prod.residuals[0].rhs == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(prod.dist == "exponential:lambda=1 * uniform:a=0,b=1");

  const auto& unif = by_id(reports, IdentityId::Eq29);
  CHECK(unif.verdict == Verdict::Holds);
  CHECK(std::abs(unif.residuals[0].lhs) < 1e-9);
}

TEST_CASE("identity transform and doubly uniform product") {
  const auto u2 = Distribution::uniform(0.0, 2.0);
  const auto reports = check_affine_and_product(u2, u2, 1.0, 0.0);
  REQUIRE(reports.size() == 4);  // Eq29 fires once per uniform input

  const auto& aff = by_id(reports, IdentityId::Prop21i);
  CHECK(aff.verdict == Verdict::Holds);
  CHECK(aff.residuals[0].lhs == doctest::Approx(kLog2).epsilon(1e-8));

  const auto& prod = by_id(reports, IdentityId::Prop21ii);
  CHECK(prod.verdict == Verdict::Holds);
  CHECK(prod.residuals[0].rhs == doctest::Approx(2.0 * kLog2).epsilon(1e-9));

  // Hw = E(X) H = 1 * log 2 for Uniform(0,2).
  const auto& unif = by_id(reports, IdentityId::Eq29);
  CHECK(unif.verdict == Verdict::Holds);
  CHECK(unif.residuals[0].lhs == doctest::Approx(kLog2).epsilon(1e-9));
  CHECK(unif.residuals[0].rhs == doctest::Approx(kLog2).epsilon(1e-9));

  CHECK_THROWS_AS(check_affine_and_product(u2, u2, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(check_affine_and_product(u2, u2, 1.0, -1.0), DomainError);
}

TEST_CASE("full suite on the exponential") {
  const auto d = Distribution::exponential(1.0);
  const auto reports = run_identity_suite(d, {0.5, 1.0, 2.0});
  REQUIRE(reports.size() == 9);

  CHECK(by_id(reports, IdentityId::Eq9).verdict == Verdict::Holds);
  CHECK(by_id(reports, IdentityId::Eq13).verdict == Verdict::Holds);
  CHECK(by_id(reports, IdentityId::Thm32_decomposition).verdict ==
        Verdict::Holds);
  CHECK(by_id(reports, IdentityId::Eq10_claimed).verdict == Verdict::Diverges);
  CHECK(by_id(reports, IdentityId::Eq11_claimed).verdict == Verdict::Fails);
  CHECK(by_id(reports, IdentityId::Eq16_claimed).verdict == Verdict::Fails);
  CHECK(by_id(reports, IdentityId::CorrectedResidualDerivative).verdict ==
        Verdict::Holds);
  CHECK(by_id(reports, IdentityId::CorrectedPastDerivative).verdict ==
        Verdict::Holds);
  CHECK(by_id(reports, IdentityId::CorrectedEq10).verdict == Verdict::Holds);

  for (const auto& r : reports) {
    CHECK(r.dist == "exponential:lambda=1");
    CHECK(r.residuals.size() == 3);
    CHECK(!r.note.empty());
  }
}

TEST_CASE("identity and verdict names") {
  CHECK(std::string(identity_name(IdentityId::Eq9)) == "Eq9");
  CHECK(std::string(identity_name(IdentityId::Eq10_claimed)) == "Eq10_claimed");
  CHECK(std::string(identity_name(IdentityId::Thm32_decomposition)) ==
        "Thm32_decomposition");
  CHECK(std::string(identity_name(IdentityId::CorrectedResidualDerivative)) ==
        "CorrectedResidualDerivative");
  CHECK(std::string(verdict_name(Verdict::Holds)) == "holds");
  CHECK(std::string(verdict_name(Verdict::Fails)) == "fails");
  CHECK(std::string(verdict_name(Verdict::Diverges)) == "diverges");
}
