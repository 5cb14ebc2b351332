#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kelab/domains.hpp"
#include "kelab/errors.hpp"
#include "kelab/hermgeo.hpp"
#include "kelab/potentials.hpp"
#include "kelab/sampling.hpp"
#include "kelab/vfield.hpp"

using namespace kelab;

namespace {

constexpr cplx I{0.0, 1.0};

// In zeta1 = (1 - z1)/(1 + z1), zeta' = z'/(1 + z1) the rescaled potential is
// -A log(Re zeta1 - |zeta'|^2), V = (-2i, 0, ...) and W = rho V.
ComplexPoint exact_flow(const ComplexPoint& z0, double t, bool w_field) {
  const cplx z1 = z0[0];
  cplx zeta1 = (1.0 - z1) / (1.0 + z1);
  std::vector<cplx> zp;
  double rho = zeta1.real();
  for (int a = 1; a < z0.dim(); ++a) {
    zp.push_back(z0[a] / (1.0 + z1));
    rho -= std::norm(zp.back());
  }
  zeta1 -= 2.0 * I * t * (w_field ? rho : 1.0);
  std::vector<cplx> out{(1.0 - zeta1) / (1.0 + zeta1)};
  for (const auto& w : zp) out.push_back(2.0 * w / (1.0 + zeta1));
  return ComplexPoint(out);
}

double dist(const ComplexPoint& a, const ComplexPoint& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("vector field of the rescaled ball potential") {
  const auto p = rescaled_ball_potential(2, 3.0);
  const auto cert = certify_constant_length(p, 20, 1, 1e-8);
  const auto v0 = vector_field(cert, ComplexPoint::zero(2));
  CHECK(std::abs(v0.components(0) - I) < 1e-14);
  CHECK(std::abs(v0.components(1)) < 1e-14);
  CHECK(v0.norm == doctest::Approx(1.0));
  for (const auto& z : sample_points(DomainModel::ball(2), 10, 2)) {
    const auto v = vector_field(cert, z);
    // V^zeta = -2i maps back to V^z1 = 4i/(1 + zeta1)^2 = i (1 + z1)^2
    CHECK(std::abs(v.components(0) - I * (1.0 + z[0]) * (1.0 + z[0])) < 1e-12);
    CHECK(std::abs(v.components(1) - I * z[1] * (1.0 + z[0])) < 1e-12);
    CHECK(v.norm == doctest::Approx(std::exp(p(z) * 3.0 / 3.0)).epsilon(1e-12));
  }
  const auto bad = certify_constant_length(ball_potential(2), 20, 1, 1e-8);
  CHECK_THROWS_AS(vector_field(bad, ComplexPoint::zero(2)), PreconditionError);
  CHECK_NOTHROW(vector_field_unchecked(ball_potential(2), ComplexPoint::zero(2)));
}

TEST_CASE("dbar defect vanishes for constant length") {
  for (auto [n, K] : std::vector<std::pair<int, double>>{{1, 2}, {2, 3}, {2, 1}, {3, 4}}) {
    const auto p = rescaled_ball_potential(n, K);
    for (const auto& z : sample_points(DomainModel::ball(n), 10, 9)) {
      CHECK(dbar_defect(p, z) < 1e-20);
      CHECK(dbar_defect_expansion(p, z) < 1e-20);
      CHECK(dbar_defect_law(p, z) < 1e-20);
      CHECK(dbar_defect(p.fd_only(), z) < 1e-8);
      CHECK(level_set_tangency(p, z) < 1e-12);
    }
  }
}

TEST_CASE("dbar defect paths agree when the defect is not zero") {
  const auto p = ke_potential(DomainModel::polydisc(2), 1.0);
  for (const auto& z : sample_points(DomainModel::polydisc(2), 5, 3)) {
    const double direct = dbar_defect(p, z);
    CHECK(direct > 1e-3);
    CHECK(dbar_defect_expansion(p, z) == doctest::Approx(direct).epsilon(1e-10));
    CHECK(dbar_defect(p.fd_only(), z) == doctest::Approx(direct).epsilon(1e-5));
  }
}

TEST_CASE("phi_rho: V = i z is holomorphic while the closed-form law gives 1") {
  const auto p = ball_potential(2);
  for (const auto& z : sample_points(DomainModel::ball(2), 5, 4)) {
    const auto v = vector_field_unchecked(p, z);
    CHECK(std::abs(v.components(0) - I * z[0]) < 1e-12);
    CHECK(dbar_defect(p, z) < 1e-20);
    CHECK(dbar_defect_expansion(p, z) < 1e-20);
    CHECK(dbar_defect_law(p, z) == doctest::Approx(1.0));
  }
}

TEST_CASE("flow against the Siegel translation") {
  for (int n : {1, 2}) {
    const auto p = rescaled_ball_potential(n, n + 1.0);
    for (const auto& z0 : sample_points(DomainModel::ball(n), 3, 6)) {
      for (double t : {0.3, -0.7, 1.5}) {
        CHECK(dist(integrate_flow(p, z0, t, 1e-3, FlowField::V), exact_flow(z0, t, false)) < 1e-9);
        CHECK(dist(integrate_flow(p, z0, t, 1e-3, FlowField::W), exact_flow(z0, t, true)) < 1e-9);
      }
    }
  }
  const auto p = rescaled_ball_potential(2, 3.0);
  const ComplexPoint z0{{0.1, 0.2}, {-0.3, 0.1}};
  CHECK(integrate_flow(p, z0, 0.0) == z0);
  CHECK_THROWS_AS(integrate_flow(p, z0, 11.0), InvalidArgument);
  CHECK_THROWS_AS(integrate_flow(p, z0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("a field that leaves the domain") {
  // |z|^2 + Re z on the disk, K = 0: V = i (z + 1/2), a rotation about -1/2
  const auto p = expression_potential(DomainModel::ball(1), 0.0, "shifted", [](auto z, auto zb) {
    return z[0] * zb[0] + (z[0] + zb[0]) * cplx{0.5};
  });
  try {
    integrate_flow(p, ComplexPoint{{0.4, 0.0}}, 3.0);
    FAIL("expected BlowUpError");
  } catch (const BlowUpError& e) {
    // |-1/2 + 0.9 e^{i s}| = 1 at cos s = 0.06 / 0.9
    CHECK(e.exit_time() == doctest::Approx(std::acos(0.06 / 0.9)).epsilon(1e-2));
  }
}

TEST_CASE("trajectories stay on level sets") {
  const auto p = rescaled_ball_potential(2, 3.0);
  const ComplexPoint z0{{0.2, -0.1}, {0.3, 0.2}};
  const auto traj = trajectory(p, z0, 2.0, 1e-3, FlowField::W, 100);
  CHECK(traj.front().t == 0.0);
  CHECK(traj.back().t == doctest::Approx(2.0));
  CHECK(traj.size() == 21);
  CHECK(energy_drift(traj) < 1e-10);
  CHECK(dist(traj.back().z, exact_flow(z0, 2.0, true)) < 1e-9);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  CHECK(os.str().rfind("t,re_z1,im_z1,re_z2,im_z2,phi\n", 0) == 0);
  CHECK(reparametrization_defect(p, z0, 0.5) < 1e-9);
  const auto pull = pullback_metric_check(p, z0, 0.5);
  CHECK(pull.metric_defect < 1e-8);
  CHECK(pull.antiholomorphic_part < 1e-8);
  CHECK(dist(pull.image, exact_flow(z0, 0.5, false)) < 1e-9);
}
