#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kelab/domains.hpp"
#include "kelab/errors.hpp"
#include "kelab/hermgeo.hpp"
#include "kelab/potentials.hpp"
#include "kelab/sampling.hpp"

using namespace kelab;

namespace {

double length_at(const PotentialField& p, const ComplexPoint& z) {
  return gradient_length_sq(p, metric_from_potential(p, z, false));
}

}  // namespace

TEST_CASE("ball potential") {
  const auto p = ball_potential(3);
  const ComplexPoint z{{0.1, 0.2}, {0.3, -0.1}, {0, 0.4}};
  CHECK(p(z) == doctest::Approx(-std::log(1 - z.norm_sq())));
  CHECK(p.ricci_constant() == 4.0);
  CHECK(p.analytic_order() >= 4);
  CHECK_THROWS_AS(p(ComplexPoint{{0.9, 0}, {0.5, 0}, {0, 0}}), MembershipError);
  CHECK(length_at(ball_potential(2), ComplexPoint{{0.3, 0}, {0.4, 0}}) == doctest::Approx(0.25));
}

TEST_CASE("canonical potentials") {
  SUBCASE("ball: (1/K) log det g reproduces phi_rho") {
    const auto c = canonical_potential(DomainModel::ball(2), 3.0);
    for (const auto& z : sample_points(DomainModel::ball(2), 5, 3))
      CHECK(c(z) == doctest::Approx(-std::log(1 - z.norm_sq())).epsilon(1e-12));
  }
  SUBCASE("polydisc: log det of diag 2/(1-|z|^2)^2") {
    const auto c = canonical_potential(DomainModel::polydisc(2), 1.0);
    const ComplexPoint z{{0.3, 0.1}, {-0.5, 0.2}};
    const double expect = 2 * std::log(2.0) - 2 * std::log(1 - std::norm(z[0])) - 2 * std::log(1 - std::norm(z[1]));
    CHECK(c(z) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(c.analytic_order() >= 4);
    CHECK(einstein_defect(c, z, true) < 1e-10);
  }
  SUBCASE("other K rescale") {
    const auto c1 = canonical_potential(DomainModel::type_one(2, 2), 1.0);
    const auto c2 = canonical_potential(DomainModel::type_one(2, 2), 2.0);
    const ComplexPoint z{{0.1, 0}, {0.2, 0.1}, {0, -0.2}, {0.1, 0.1}};
    CHECK(einstein_defect(c2, z, false) < 1e-3);
    // g_2 = g_1 / 2, so c_2 = (log det g_1 - n log 2) / 2
    CHECK(c2(z) == doctest::Approx((c1(z) - 4 * std::log(2.0)) / 2).epsilon(1e-10));
  }
  CHECK_THROWS_AS(canonical_potential(flat_potential(2)), NotEinsteinError);
  CHECK_THROWS_AS(canonical_potential(DomainModel::flat(2), 1.0), NotEinsteinError);
  // phi_rho declared with K = 1 although its metric has K = 3
  const auto wrong = expression_potential(DomainModel::ball(2), 1.0, "wrong K", [](auto z, auto zb) {
    return -log(cplx{1.0} - z[0] * zb[0] - z[1] * zb[1]);
  });
  CHECK_THROWS_AS(canonical_potential(wrong), NotEinsteinError);
}

TEST_CASE("rescaled ball potential has constant length (n+1)/K") {
  const ComplexPoint u{{0, 0}, {1 / std::sqrt(2.0), 0}, {0, 1 / std::sqrt(2.0)}};
  for (auto [n, K] : std::vector<std::pair<int, double>>{{1, 2}, {2, 3}, {2, 1}, {3, 4}}) {
    const auto p = rescaled_ball_potential(n, K);
    for (const auto& z : sample_points(DomainModel::ball(n), 20, 5)) {
      CHECK(length_at(p, z) == doctest::Approx((n + 1.0) / K).epsilon(1e-12));
      CHECK(length_at(p.fd_only(), z) == doctest::Approx((n + 1.0) / K).epsilon(1e-6));
      const double s = 1 - z.norm_sq();
      CHECK(p(z) == doctest::Approx((n + 1.0) / K * (std::log(std::norm(1.0 + z[0])) - std::log(s))));
    }
  }
  const auto q = rescaled_ball_potential(3, 2.0, u);
  for (const auto& z : sample_points(DomainModel::ball(3), 10, 8)) CHECK(length_at(q, z) == doctest::Approx(2.0));
  CHECK_THROWS_AS(rescaled_ball_potential(2, 3.0, ComplexPoint{{0.5, 0}, {0.5, 0}}), InvalidArgument);
  CHECK_THROWS_AS(rescaled_ball_potential(2, 3.0, ComplexPoint{{1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(rescaled_ball_potential(2, -1.0), InvalidArgument);
  // the singular set {1 + <z, u> = 0} is reported before membership
  CHECK_THROWS_AS(rescaled_ball_potential(2, 3.0)(ComplexPoint{{-1, 0}, {0, 0}}), SingularityError);
  CHECK_THROWS_AS(rescaled_ball_potential(2, 3.0)(ComplexPoint{{0.9, 0}, {0.9, 0}}), MembershipError);
}

TEST_CASE("product potentials") {
  const auto a = rescaled_ball_potential(2, 3.0);
  const auto b = rescaled_ball_potential(1, 3.0);
  const auto p = product_potential(a, b);
  CHECK(p.dim() == 3);
  CHECK(p.ricci_constant() == 3.0);
  CHECK(p.domain().kind() == DomainKind::Product);
  const ComplexPoint z{{0.2, 0.1}, {-0.3, 0.3}, {0.5, -0.2}};
  CHECK(p(z) == doctest::Approx(a(ComplexPoint{z[0], z[1]}) + b(ComplexPoint{z[2]})));
  // block-diagonal metric: lengths add
  CHECK(length_at(p, z) == doctest::Approx(1.0 + 2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(product_potential(a, rescaled_ball_potential(1, 2.0)), NormalizationError);
  const auto same = product_potential(a, flat_potential(0).scaled(1.0));
  CHECK(same.dim() == 2);
}

TEST_CASE("constant-length certificates") {
  const auto p = rescaled_ball_potential(2, 3.0);
  const auto cert = certify_constant_length(p, 50, 4, 1e-8);
  CHECK(cert.valid());
  CHECK(cert.analytic);
  CHECK(cert.constant == doctest::Approx(1.0));
  CHECK(cert.lower_bound == doctest::Approx(1.0));
  CHECK(cert.sample_count == 50);
  const auto bad = certify_constant_length(ball_potential(2), 50, 4, 1e-8);
  CHECK_FALSE(bad.constant_ok());
  CHECK_FALSE(bad.valid());
  // polydisc product: constant 2 + 2 over K = 2, strictly above (n+1)/K
  const auto pd = product_potential(rescaled_ball_potential(1, 2.0), rescaled_ball_potential(1, 2.0));
  const auto c2 = certify_constant_length(pd, 30, 2, 1e-8);
  CHECK(c2.valid());
  CHECK(c2.constant == doctest::Approx(2.0));
  CHECK(c2.lower_bound == doctest::Approx(1.5));
}

TEST_CASE("Kai-Ohsawa constant") {
  for (int n = 1; n <= 3; ++n) {
    const auto r = kai_ohsawa_constant(DomainModel::ball(n));
    CHECK(r.L == doctest::Approx(n + 1.0).epsilon(1e-10));
    CHECK(r.lower_bound == doctest::Approx(n + 1.0));
    CHECK(r.spot_max_deviation < 1e-10);
    REQUIRE(r.slice_derivatives.size() == 1);
    CHECK(r.slice_derivatives[0] == doctest::Approx(n + 1.0).epsilon(1e-10));
  }
  for (int m = 1; m <= 3; ++m) {
    const auto r = kai_ohsawa_constant(DomainModel::polydisc(m));
    CHECK(r.L == doctest::Approx(2.0 * m).epsilon(1e-10));
    CHECK(r.lower_bound == doctest::Approx(2.0 * m));
    CHECK(r.slice_derivatives.size() == static_cast<std::size_t>(m));
    for (double d : r.slice_derivatives) CHECK(d == doctest::Approx(2.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(kai_ohsawa_constant(DomainModel::type_one(2, 2)), UnsupportedDomainError);
}

TEST_CASE("ball minimality rows") {
  const auto rows = ball_minimality_report(
      {DomainModel::ball(3), DomainModel::type_one(2, 2), DomainModel::type_three(1), DomainModel::type_four(3)}, 2.0);
  REQUIRE(rows.size() == 4);
  CHECK_FALSE(rows[0].strict);
  CHECK(rows[0].rc_over_K == doctest::Approx(2.0));
  CHECK(rows[1].strict);
  CHECK(rows[1].rc_over_K == doctest::Approx(4.0));
  CHECK(rows[1].ball_value == doctest::Approx(2.5));
  CHECK_FALSE(rows[2].strict);
  CHECK(rows[3].strict);
  for (const auto& r : ball_minimality_report(exceptional_invariants(), 1.0)) CHECK(r.strict);
}

TEST_CASE("reference points") {
  CHECK(reference_point(DomainModel::ball(2)) == ComplexPoint::zero(2));
  const auto r = reference_point(DomainModel::product({DomainModel::ball(1), DomainModel::half_plane_product(1)}));
  CHECK(r == ComplexPoint{{0, 0}, {-1, 0}});
}
