#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "kelab/field.hpp"

namespace kelab {

/// A radial profile phi(t), t = |z|^2, with its first two derivatives.
struct RadialState {
  double phi;
  double dphi;
  double ddphi;
};

/// Radial Kähler-Einstein potential phi(|z|^2) on the unit ball, stored on a grid
/// in t. Solves (n-1) log phi' + log(phi' + t phi'') = K phi.
class RadialPotential {
 public:
  /// Closed-form ball solution -A log(1-t) + (n/K) log A, A = (n+1)/K, on the default grid.
  static RadialPotential from_closed_form(int n, double K);
  /// Tabulated data; between nodes values come from cubic Hermite interpolation.
  static RadialPotential from_samples(int n, double K, std::vector<double> grid, std::vector<RadialState> states);

  int n() const noexcept { return n_; }
  double K() const noexcept { return K_; }
  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<RadialState>& states() const noexcept { return states_; }
  /// phi(0) of the solution.
  double phi0() const { return states_.front().phi; }
  /// Exact at grid nodes; in between by re-integration (ODE solutions), the closed form,
  /// or interpolation. Throws ResolutionError outside [0, grid().back()].
  RadialState at(double t) const;

  /// phi(|z|^2) on Ball(n) with closed-form derivatives up to order 3 from the profile.
  PotentialField as_potential() const;

  /// Blow-up locations t*(phi0) seen by the bisection (solver output only).
  const std::vector<std::pair<double, double>>& shooting_history() const noexcept { return history_; }

  /// Default grid: 0, then 1e-3..0.9 step 1e-3, then 1 - t from 1e-1 to 1e-3 at 100 points per decade.
  static std::vector<double> default_grid();

 private:
  friend RadialPotential shoot(int n, double K, std::pair<double, double> bracket, double tol);
  RadialPotential(int n, double K) : n_(n), K_(K) {}

  int n_;
  double K_;
  std::vector<double> grid_;
  std::vector<RadialState> states_;
  std::function<RadialState(double)> exact_;
  std::vector<double> series_;  // psi Taylor coefficients at t = 0 (ODE solutions)
  bool ode_ = false;
  std::vector<std::pair<double, double>> history_;
};

/// (n-1) log phi' + log(phi' + t phi'') - K phi at t; DegenerateMetricError when a log argument is <= 0.
double radial_ode_residual(const RadialPotential& rp, double t);

/// Bisection on phi(0) with phi'(0) = e^{K phi(0)/n} until the blow-up point of phi'
/// is t = 1. tol bounds the final bracket width in phi(0). Throws BracketingError
/// when the bracket does not straddle the solution and InvalidArgument for tol <= 0.
RadialPotential shoot(int n, double K, std::pair<double, double> bracket = {-4.0, 4.0}, double tol = 1e-12);

/// t phi'^2 / (phi' + t phi'').
double radial_gradient_length(const RadialPotential& rp, double t);

/// (linear extrapolation of the gradient length to t = 1 over the last grid decade,
///  its deviation from (n+1)/K). Throws ResolutionError when the grid stops before 1 - 1e-3.
std::pair<double, double> boundary_limit_estimate(const RadialPotential& rp);

/// CSV columns t, phi, dphi, gradient_length.
void write_radial_csv(std::ostream& os, const RadialPotential& rp);

}  // namespace kelab
