#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kelab/domains.hpp"
#include "kelab/errors.hpp"
#include "kelab/hermgeo.hpp"
#include "kelab/potentials.hpp"

using namespace kelab;

namespace {

const ComplexPoint kZ{{0.3, -0.1}, {-0.2, 0.4}};

// Closed-form geometry of phi_rho = -log(1 - |z|^2) on Ball(2).
Eigen::MatrixXcd ball_metric(const ComplexPoint& z) {
  const double s = 1 - z.norm_sq();
  Eigen::MatrixXcd g(z.dim(), z.dim());
  for (int a = 0; a < z.dim(); ++a)
    for (int b = 0; b < z.dim(); ++b) g(a, b) = (a == b ? 1.0 / s : 0.0) + std::conj(z[a]) * z[b] / (s * s);
  return g;
}

}  // namespace

TEST_CASE("ball metric with its Christoffel symbols") {
  const auto p = ball_potential(2);
  for (bool fd : {false, true}) {
    const auto q = fd ? p.fd_only() : p;
    const double tol = fd ? 1e-6 : 1e-13;
    const auto f = metric_from_potential(q, kZ, true);
    CHECK((f.g - ball_metric(kZ)).cwiseAbs().maxCoeff() < tol);
    CHECK((f.g * f.g_inv - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(f.log_det_g == doctest::Approx(std::log(ball_metric(kZ).determinant().real())));
    CHECK(f.invariant_defect() < (fd ? 1e-5 : 1e-12));
    const double s = 1 - kZ.norm_sq();
    for (int l = 0; l < 2; ++l)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const cplx expect = ((l == a ? std::conj(kZ[b]) : 0.0) + (l == b ? std::conj(kZ[a]) : 0.0)) / s;
          CHECK(std::abs(f.christoffel[static_cast<std::size_t>(l)](a, b) - expect) < (fd ? 1e-4 : 1e-12));
        }
  }
}

TEST_CASE("flat metric has no connection and no curvature") {
  const auto p = flat_potential(3);
  const ComplexPoint z{{1.5, 2}, {-3, 0}, {0.1, 7}};
  const auto f = metric_from_potential(p, z, true);
  CHECK((f.g - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  for (const auto& G : f.christoffel) CHECK(G.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(ricci_analytic(p, z).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(ricci(p, z).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(gradient_length_sq(p, f) == doctest::Approx(z.norm_sq()));
}

TEST_CASE("gradient length of phi_rho is |z|^2") {
  const auto p = ball_potential(2);
  const auto f = metric_from_potential(p, kZ, false);
  CHECK(gradient_length_sq(p, f) == doctest::Approx(kZ.norm_sq()).epsilon(1e-13));
  CHECK(differential_length_sq(p, f) == doctest::Approx(2 * kZ.norm_sq()).epsilon(1e-13));
  CHECK(gradient_length_function(p)(kZ) == doctest::Approx(kZ.norm_sq()).epsilon(1e-13));
  // the same function measured with a metric scaled by 2 halves
  CHECK(gradient_length_function(p, p.scaled(2.0))(kZ) == doctest::Approx(kZ.norm_sq() / 2).epsilon(1e-13));
}

TEST_CASE("Laplacian of |z|^2 under the ball metric") {
  const auto p = ball_potential(2);
  const auto f = metric_from_potential(p, kZ, false);
  const ScalarFunction r = [](const ComplexPoint& z) { return z.norm_sq(); };
  // g^{a bbar} delta_{ab} = tr(g^{-1}) = (1 - |z|^2)(n - |z|^2)
  const double s = 1 - kZ.norm_sq();
  CHECK(laplacian(r, f) == doctest::Approx(s * (2 - kZ.norm_sq())).epsilon(1e-8));
  CHECK(laplacian_of_gradient_length(p, kZ) == doctest::Approx(s * (2 - kZ.norm_sq())).epsilon(1e-12));
}

TEST_CASE("covariant Hessian and the key equation") {
  // phi_{a;b} phi^a + phi_b = d_b |d phi|^2 = zbar_b for phi_rho
  const auto p = ball_potential(2);
  const auto f = metric_from_potential(p, kZ, true);
  const auto res = key_equation_residual(p, f);
  for (int b = 0; b < 2; ++b) CHECK(std::abs(res(b) - std::conj(kZ[b])) < 1e-12);
  const auto H = covariant_hessian(p, f);
  CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-13);
  // at the origin the Hessian is the Euclidean one: |nabla'^2 phi|^2 = 0 since phi_ab = 0
  const auto f0 = metric_from_potential(p, ComplexPoint::zero(2), true);
  CHECK(hessian_norm_sq(p, f0) < 1e-28);
  // rescaled potential: constant length, residual vanishes
  const auto q = rescaled_ball_potential(2, 3.0);
  CHECK(key_equation_residual(q, metric_from_potential(q, kZ, true)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Einstein defect and the Delta identity") {
  const auto p = ball_potential(3);
  const ComplexPoint z{{0.2, 0.1}, {-0.3, 0.2}, {0.1, -0.4}};
  CHECK(einstein_defect(p, z, true) < 1e-12);
  CHECK(einstein_defect(p, z, false) < 1e-5);
  CHECK((ricci(p, z) - ricci_analytic(p, z)).cwiseAbs().maxCoeff() < 1e-5);
  const auto t = delta_identity(p, z, true);
  CHECK(t.gradient_length_sq == doctest::Approx(z.norm_sq()));
  CHECK(std::abs(t.residual) < 1e-12);
  CHECK(std::abs(delta_identity(p, z, false).residual) < 1e-5);
  // Ricci-flat with its declared K = 0
  CHECK(einstein_defect(flat_potential(2), ComplexPoint{{0.1, 0}, {0, 0}}, true) == doctest::Approx(0.0));
  CHECK(einstein_defect(ke_potential(DomainModel::ball(2), 2.0).scaled(2.0), kZ, true) ==
        doctest::Approx(einstein_defect(ball_potential(2), kZ, true)).epsilon(1e-6));
}

TEST_CASE("degenerate metrics are rejected") {
  const auto neg = expression_potential(DomainModel::flat(2), 0.0, "-|z|^2", [](auto z, auto zb) {
    return -(z[0] * zb[0] + z[1] * zb[1]);
  });
  CHECK_THROWS_AS(metric_from_potential(neg, ComplexPoint{{0.1, 0}, {0, 0}}), DegenerateMetricError);
  const auto half = expression_potential(DomainModel::flat(2), 0.0, "|z1|^2", [](auto z, auto zb) {
    return z[0] * zb[0] + cplx{0.0} * z[1];
  });
  CHECK_THROWS_AS(metric_from_potential(half, ComplexPoint{{0.1, 0}, {0, 0}}), DegenerateMetricError);
  CHECK_THROWS_AS(analytic_jet(ball_potential(2).fd_only(), kZ, 2), UnsupportedOrderError);
}
