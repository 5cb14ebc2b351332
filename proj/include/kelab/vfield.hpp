#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "kelab/field.hpp"
#include "kelab/point.hpp"
#include "kelab/potentials.hpp"

namespace kelab {

/// V = i e^{K phi/(n+1)} grad(phi) at a point; components are V^a = i e^{..} g^{a bbar} phi_bbar.
struct VectorFieldAt {
  ComplexPoint point;
  Eigen::VectorXcd components;
  /// |V|_omega
  double norm = 0.0;
};

/// Requires a valid certificate (throws PreconditionError otherwise).
VectorFieldAt vector_field(const ConstantLengthCertificate& cert, const ComplexPoint& z);
/// No certificate check; used for flows and for non-constant potentials in the defect law tests.
VectorFieldAt vector_field_unchecked(const PotentialField& p, const ComplexPoint& z);

/// |nabla'' V|^2 from V^a_{;bbar} = dbar_b V^a: closed-form differentiation of V when
/// p has analytic order >= 3, finite differences of V otherwise.
double dbar_defect(const PotentialField& p, const ComplexPoint& z);
/// e^{2K phi/(n+1)} |(K/(n+1)) phi_bbar phi^a + phi^a_{;bbar}|^2 with phi^a_{;bbar} = g^{a cbar} conj(phi_{c;b}).
/// Exact for any potential; an independent route through the covariant Hessian.
double dbar_defect_expansion(const PotentialField& p, const ComplexPoint& z);
/// e^{2K phi/(n+1)} ((K/(n+1)) |d phi|^2 - 1)^2. Agrees with the defect only when the key
/// equation and |nabla'^2 phi|^2 = 1 hold, i.e. for constant-length potentials.
double dbar_defect_law(const PotentialField& p, const ComplexPoint& z);

/// |(Re W) phi| with W = i grad(phi): |i phi^a phi_a - i phi^abar phi_abar|.
double level_set_tangency(const PotentialField& p, const ComplexPoint& z);

enum class FlowField { W, V };

/// RK4 integration of the real field Re X (dz^a/dt = X^a) for time t (negative runs backwards).
/// Throws BlowUpError with the exit time when the trajectory leaves the domain.
ComplexPoint integrate_flow(const PotentialField& p, const ComplexPoint& z0, double t, double dt = 1e-3,
                            FlowField field = FlowField::V);

struct TrajectorySample {
  double t;
  ComplexPoint z;
  double phi;
};
/// Same integration recording every `stride`-th step (and the endpoint).
std::vector<TrajectorySample> trajectory(const PotentialField& p, const ComplexPoint& z0, double t,
                                         double dt = 1e-3, FlowField field = FlowField::W, int stride = 1);
/// CSV columns t, Re z1, Im z1, ..., phi.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& traj);

/// max_s |phi(gamma_W(s)) - phi(z0)| along the Re W trajectory.
double energy_drift(const std::vector<TrajectorySample>& traj);

/// max |gamma_V(t) - gamma_W(e^{K c/(n+1)} t)| with c = phi(z0), over `checks` equally spaced times in (0, t].
double reparametrization_defect(const PotentialField& p, const ComplexPoint& z0, double t, double dt = 1e-3,
                                int checks = 5);

/// max entrywise |(F_t^* g)(z0) - g(z0)| for the time-t map of Re V; the holomorphic
/// Jacobian uses a 6-point central stencil. Also reports the antiholomorphic part of dF.
struct PullbackCheck {
  double metric_defect = 0.0;
  double antiholomorphic_part = 0.0;
  ComplexPoint image;
};
PullbackCheck pullback_metric_check(const PotentialField& p, const ComplexPoint& z0, double t, double dt = 1e-3,
                                    double h = 1e-3);

}  // namespace kelab
