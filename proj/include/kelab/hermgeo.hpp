#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "kelab/field.hpp"
#include "kelab/jets.hpp"
#include "kelab/point.hpp"

namespace kelab {

/// Kähler metric data at one point, derived from a potential.
///
/// Index conventions: g(a, b) = g_{a bbar}; g_inv is the matrix inverse of g,
/// so the contravariant metric is g^{a bbar} = g_inv(b, a) (see inv()).
/// christoffel[l](a, b) = Gamma^l_{ab}, empty when not requested.
struct MetricFrame {
  ComplexPoint point;
  Eigen::MatrixXcd g;
  Eigen::MatrixXcd g_inv;
  std::vector<Eigen::MatrixXcd> christoffel;
  double log_det_g = 0.0;

  int dim() const { return static_cast<int>(g.rows()); }
  cplx inv(int a, int b) const { return g_inv(b, a); }
  bool has_christoffel() const { return !christoffel.empty(); }

  /// Largest violation of the frame invariants, such as g g^{-1} = 1 and Hermitian symmetry.
  double invariant_defect() const;
};

/// g = d dbar p, Gamma^l_{ab} = g^{l mbar} d_a g_{b mbar}.
/// Throws DegenerateMetricError when g is not positive definite.
MetricFrame metric_from_potential(const PotentialField& p, const ComplexPoint& z, bool with_christoffel = true);
/// Same, from a precomputed jet of order >= 2 (>= 3 with Christoffels).
MetricFrame metric_from_jet(const Jet& jet, const ComplexPoint& z, bool with_christoffel = true);

/// |d phi|^2 = phi_a g^{a bbar} phi_bbar.
double gradient_length_sq(const PotentialField& p, const MetricFrame& frame);
double gradient_length_sq(const Jet& jet, const MetricFrame& frame);
/// |d phi|^2 measured on the full 1-form, twice gradient_length_sq.
double differential_length_sq(const PotentialField& p, const MetricFrame& frame);

/// z -> |d phi|^2(z) using the metric of `metric_potential` (defaults to p).
ScalarFunction gradient_length_function(const PotentialField& p);
ScalarFunction gradient_length_function(const PotentialField& p, const PotentialField& metric_potential);

/// phi_{a;b} = d_b d_a phi - Gamma^l_{ba} phi_l (symmetric).
Eigen::MatrixXcd covariant_hessian(const PotentialField& p, const MetricFrame& frame);
/// phi_{a;b} conj(phi_{l;m}) g^{a lbar} g^{b mbar}.
double hessian_norm_sq(const PotentialField& p, const MetricFrame& frame);
/// Components phi_{a;b} phi^a + phi_b (vanish when |d phi|^2 is locally constant).
Eigen::VectorXcd key_equation_residual(const PotentialField& p, const MetricFrame& frame);

/// g^{a bbar} d_a d_bbar f by finite differences at frame.point.
double laplacian(const ScalarFunction& f, const MetricFrame& frame, std::optional<double> step = std::nullopt);
/// Laplacian of |d phi|^2 from the closed-form expansion of phi (needs analytic order 4).
double laplacian_of_gradient_length(const PotentialField& p, const ComplexPoint& z);

/// Delta |d phi|^2 - |nabla'^2 phi|^2 - n + K |d phi|^2 at z; analytic when p allows order 4.
struct DeltaIdentityTerms {
  double laplacian;
  double hessian_norm_sq;
  double gradient_length_sq;
  double residual;
};
DeltaIdentityTerms delta_identity(const PotentialField& p, const ComplexPoint& z, bool analytic);

/// Ric_{a bbar} = -d_a d_bbar log det g by a finite-difference stencil over log det g.
Eigen::MatrixXcd ricci(const PotentialField& p, const ComplexPoint& z);
/// Same quantity from closed-form derivatives (needs analytic order 4).
Eigen::MatrixXcd ricci_analytic(const PotentialField& p, const ComplexPoint& z);
/// max |Ric + K g| entrywise at z.
double einstein_defect(const PotentialField& p, const ComplexPoint& z, bool analytic);

}  // namespace kelab
