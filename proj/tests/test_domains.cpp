#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "kelab/domain.hpp"
#include "kelab/domains.hpp"
#include "kelab/errors.hpp"
#include "kelab/hermgeo.hpp"
#include "kelab/sampling.hpp"

using namespace kelab;

namespace {

// det(I - Z Z^*) with Z assembled here independently of the library.
double det_oracle(const Eigen::MatrixXcd& Z) {
  const auto I = Eigen::MatrixXcd::Identity(Z.rows(), Z.rows());
  return (I - Z * Z.adjoint()).determinant().real();
}

ComplexPoint small_point(int n, double scale) {
  std::vector<cplx> c;
  for (int i = 0; i < n; ++i) c.emplace_back(scale * std::cos(1.0 + i), scale * std::sin(2.0 * i + 0.5));
  return ComplexPoint(c);
}

}  // namespace

TEST_CASE("invariants of the catalog") {
  auto check = [](const DomainModel& d, double c, int n, int r) {
    const auto inv = d.invariants();
    CHECK(inv.c == doctest::Approx(c));
    CHECK(inv.n == n);
    CHECK(inv.rank == r);
    CHECK(inv.rc == doctest::Approx(r * c));
  };
  check(DomainModel::ball(3), 4, 3, 1);
  check(DomainModel::type_one(2, 3), 5, 6, 2);
  check(DomainModel::type_two(5), 8, 10, 2);
  check(DomainModel::type_two(6), 10, 15, 3);
  check(DomainModel::type_three(3), 4, 6, 3);
  check(DomainModel::type_four(5), 5, 5, 2);
  const auto ex = exceptional_invariants();
  REQUIRE(ex.size() == 2);
  CHECK(ex[0].n == 16);
  CHECK(ex[0].c == 12);
  CHECK(ex[1].n == 27);
  CHECK(ex[1].rank == 3);
  // products: rc is additive, c is not defined
  const auto prod = DomainModel::product({DomainModel::ball(2), DomainModel::polydisc(2)});
  CHECK(prod.dim() == 4);
  CHECK(prod.invariants().rc == doctest::Approx(3 + 4));
  CHECK_FALSE(prod.bergman_exponent().has_value());
}

TEST_CASE("ball equivalence flags") {
  CHECK(DomainModel::ball(4).is_ball_equivalent());
  CHECK(DomainModel::type_one(1, 3).is_ball_equivalent());
  CHECK(DomainModel::type_two(3).is_ball_equivalent());
  CHECK(DomainModel::type_three(1).is_ball_equivalent());
  CHECK_FALSE(DomainModel::type_one(2, 2).is_ball_equivalent());
  CHECK_FALSE(DomainModel::type_four(3).is_ball_equivalent());
  CHECK_FALSE(DomainModel::polydisc(2).is_ball_equivalent());
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(DomainModel::ball(0), InvalidArgument);
  CHECK_THROWS_AS(DomainModel::type_one(0, 2), InvalidArgument);
  CHECK_THROWS_AS(DomainModel::type_two(2), InvalidArgument);
  CHECK_THROWS_AS(DomainModel::type_four(2), InvalidArgument);
  CHECK_THROWS_AS(DomainModel::product({}), InvalidArgument);
}

TEST_CASE("generic norms against matrix determinants") {
  SUBCASE("ball and polydisc") {
    const ComplexPoint z{{0.3, 0.1}, {-0.2, 0.4}};
    CHECK(generic_norm(DomainModel::ball(2), z) == doctest::Approx(1 - z.norm_sq()).epsilon(1e-14));
    CHECK(generic_norm(DomainModel::polydisc(2), z) ==
          doctest::Approx((1 - std::norm(z[0])) * (1 - std::norm(z[1]))).epsilon(1e-14));
  }
  SUBCASE("type I") {
    const auto z = small_point(6, 0.3);
    Eigen::MatrixXcd Z(2, 3);
    for (int i = 0; i < 6; ++i) Z(i / 3, i % 3) = z[i];
    CHECK(generic_norm(DomainModel::type_one(2, 3), z) == doctest::Approx(det_oracle(Z)).epsilon(1e-13));
  }
  SUBCASE("type II uses the square root") {
    const auto z = small_point(6, 0.25);
    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(4, 4);
    int k = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++k) {
        Z(i, j) = z[k];
        Z(j, i) = -z[k];
      }
    CHECK(generic_norm(DomainModel::type_two(4), z) == doctest::Approx(std::sqrt(det_oracle(Z))).epsilon(1e-13));
  }
  SUBCASE("type III scales off-diagonal entries") {
    const auto z = small_point(3, 0.3);
    Eigen::MatrixXcd Z(2, 2);
    Z << z[0], z[1] / std::sqrt(2.0), z[1] / std::sqrt(2.0), z[2];
    CHECK(generic_norm(DomainModel::type_three(2), z) == doctest::Approx(det_oracle(Z)).epsilon(1e-13));
    // tr(Z Z^*) = |z|^2 in these coordinates
    CHECK((Z * Z.adjoint()).trace().real() == doctest::Approx(z.norm_sq()).epsilon(1e-14));
  }
  SUBCASE("type IV") {
    const auto z = small_point(3, 0.3);
    cplx zz = 0.0;
    for (int i = 0; i < 3; ++i) zz += z[i] * z[i];
    CHECK(generic_norm(DomainModel::type_four(3), z) ==
          doctest::Approx(1 - 2 * z.norm_sq() + std::norm(zz)).epsilon(1e-13));
  }
  SUBCASE("origin") {
    for (const auto& d : {DomainModel::type_one(2, 2), DomainModel::type_two(4), DomainModel::type_three(3),
                          DomainModel::type_four(4)})
      CHECK(generic_norm(d, ComplexPoint::zero(d.dim())) == doctest::Approx(1.0));
  }
}

TEST_CASE("membership") {
  const auto b = DomainModel::ball(2);
  CHECK(b.contains(ComplexPoint{{0.5, 0}, {0.5, 0}}));
  CHECK_FALSE(b.contains(ComplexPoint{{0.8, 0}, {0.8, 0}}));
  CHECK(DomainModel::polydisc(2).contains(ComplexPoint{{0.8, 0}, {0.8, 0}}));
  CHECK_THROWS_AS(b.require_contains(ComplexPoint{{1.0, 0}, {0, 0}}), MembershipError);
  CHECK_THROWS_AS(b.require_contains(ComplexPoint{{0.1, 0}}), MembershipError);
  // type I: operator norm < 1, which the Euclidean norm does not capture
  CHECK(DomainModel::type_one(2, 2).contains(ComplexPoint{{0.9, 0}, {0, 0}, {0, 0}, {0.9, 0}}));
  CHECK_FALSE(DomainModel::type_one(2, 2).contains(ComplexPoint{{0.6, 0}, {0.6, 0}, {0.6, 0}, {0.6, 0}}));
  const auto h = DomainModel::half_plane_product(2);
  CHECK(h.contains(ComplexPoint{{-1, 3}, {-0.01, -5}}));
  CHECK_FALSE(h.contains(ComplexPoint{{-1, 3}, {0, 0}}));
}

TEST_CASE("Bergman potential is -c log N with metric c times the Euclidean one at 0") {
  const ComplexPoint z{{0.2, 0.1}, {-0.1, 0.3}};
  const auto b = DomainModel::ball(2);
  CHECK(bergman_potential(b)(z) == doctest::Approx(-3 * std::log(1 - z.norm_sq())));
  for (const auto& [d, scale] : std::vector<std::pair<DomainModel, double>>{
           {DomainModel::ball(2), 3}, {DomainModel::polydisc(3), 2}, {DomainModel::type_one(2, 2), 4},
           {DomainModel::type_two(4), 6}, {DomainModel::type_three(2), 3}, {DomainModel::type_four(3), 6}}) {
    const auto frame = metric_from_potential(bergman_potential(d), ComplexPoint::zero(d.dim()), false);
    const Eigen::MatrixXcd expect = scale * Eigen::MatrixXcd::Identity(d.dim(), d.dim());
    CHECK((frame.g - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(ke_potential(b, 2.0)(z) == doctest::Approx(bergman_potential(b)(z) / 2));
  CHECK_THROWS_AS(bergman_potential(DomainModel::flat(2)), UnsupportedDomainError);
  // half-planes: log K_H, whose metric 2/(w + wbar)^2 has Ricci constant 1
  const auto h = bergman_potential(DomainModel::half_plane_product(1));
  CHECK(h(ComplexPoint{{-1, 0.3}}) == doctest::Approx(std::log(0.5)));
  CHECK(metric_from_potential(h, ComplexPoint{{-0.5, 0}}, false).g(0, 0).real() == doctest::Approx(2.0));
  CHECK(einstein_defect(h, ComplexPoint{{-0.7, 0.2}}, true) < 1e-10);
}

TEST_CASE("Cayley transforms") {
  const ComplexPoint z{{0.3, -0.2}, {0.1, 0.4}};
  for (const auto& d : {DomainModel::ball(2), DomainModel::polydisc(2)}) {
    const auto w = cayley(d, z);
    const auto back = cayley_inverse(d, w);
    for (int a = 0; a < 2; ++a) CHECK(std::abs(back[a] - z[a]) < 1e-14);
  }
  const auto w = cayley(DomainModel::ball(2), z);
  CHECK(w[0].real() + std::norm(w[1]) < 0);
  const auto wp = cayley(DomainModel::polydisc(2), z);
  CHECK(wp[0].real() < 0);
  CHECK(wp[1].real() < 0);
  CHECK(std::abs(cayley(DomainModel::ball(1), ComplexPoint{{0, 0}})[0] + 1.0) < 1e-15);
  CHECK_THROWS_AS(cayley(DomainModel::ball(1), ComplexPoint{{-1, 0}}), SingularityError);
  CHECK_THROWS_AS(cayley_inverse(DomainModel::polydisc(1), ComplexPoint{{1, 0}}), SingularityError);
  CHECK_THROWS_AS(cayley(DomainModel::type_one(2, 2), ComplexPoint::zero(4)), UnsupportedDomainError);
}

TEST_CASE("half-plane and Siegel kernels") {
  CHECK(halfplane_kernel({-1.0, 7.0}) == doctest::Approx(0.5));
  CHECK(halfplane_kernel({-0.5, 0.0}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(halfplane_kernel({0.0, 1.0}), MembershipError);
  // polydisc(2): c = 2, slice value sum_a log K_H(w^a)
  const auto pd = DomainModel::polydisc(2);
  CHECK(siegel_log_kernel_on_polydisc_slice(pd, ComplexPoint{{-1, 0}, {-0.5, 1}}) ==
        doctest::Approx(std::log(0.5) + std::log(2.0)));
  const auto b = DomainModel::ball(3);
  CHECK(siegel_log_kernel_on_polydisc_slice(b, ComplexPoint{{-1, 0}, {0, 0}, {0, 0}}) ==
        doctest::Approx(2 * std::log(0.5)));
  CHECK_THROWS_AS(siegel_log_kernel_on_polydisc_slice(b, ComplexPoint{{-1, 0}, {0.1, 0}, {0, 0}}),
                  UnsupportedPointError);
  // on the slice the full kernel agrees with the sliced one
  CHECK(siegel_log_kernel(b, ComplexPoint{{-0.7, 0.2}, {0, 0}, {0, 0}}) ==
        doctest::Approx(siegel_log_kernel_on_polydisc_slice(b, ComplexPoint{{-0.7, 0.2}, {0, 0}, {0, 0}})));
  // sigma^* log K_S = log K_S o sigma
  const ComplexPoint z{{0.2, 0.1}, {-0.3, 0.2}, {0.1, -0.1}};
  CHECK(siegel_potential(b)(z) == doctest::Approx(siegel_log_kernel(b, cayley(b, z))).epsilon(1e-13));
}

TEST_CASE("seeded sampling stays inside the capped domain") {
  for (const auto& d : {DomainModel::ball(3), DomainModel::polydisc(2), DomainModel::type_one(2, 2),
                        DomainModel::type_three(2), DomainModel::type_four(3), DomainModel::half_plane_product(2)}) {
    const auto a = sample_points(d, 25, 11);
    const auto b = sample_points(d, 25, 11);
    REQUIRE(a.size() == 25);
    CHECK(a == b);
    CHECK(a != sample_points(d, 25, 12));
    for (const auto& z : a) {
      CHECK(d.contains(z));
      if (d.kind() != DomainKind::HalfPlaneProduct) {
        std::vector<cplx> s;
        for (const auto& c : z.coords()) s.push_back(c / kSampleCap);
        CHECK(d.contains(ComplexPoint(s)));
      }
    }
  }
  CHECK(sample_points(DomainModel::ball(1), 0, 1).empty());
  CHECK_THROWS_AS(sample_points(DomainModel::ball(1), -1, 1), InvalidArgument);
}
