#pragma once

#include "kelab/domain.hpp"
#include "kelab/field.hpp"
#include "kelab/point.hpp"

namespace kelab {

/// N(z): 1 - |z|^2 (ball), prod (1 - |z_i|^2) (polydisc), det(I - ZZ*)^s
/// (types I-III, s = 1/2 for type II), 1 - 2ZZ* + |ZZ^t|^2 (type IV),
/// and the product of factor norms for products. N(0) = 1, N -> 0 at the boundary.
double generic_norm(const DomainModel& d, const ComplexPoint& z);

/// log K_Omega up to an additive constant (= -c log N); Ricci constant 1.
PotentialField bergman_potential(const DomainModel& d);

/// Bergman potential divided by K: its metric has Ricci constant K.
PotentialField ke_potential(const DomainModel& d, double K);

/// Cayley transform onto the Siegel model, for Ball and Polydisc.
/// Polydisc: w^a = (z^a - 1)/(z^a + 1). Ball: w^1 = (z^1 - 1)/(z^1 + 1),
/// w' = z'/(z^1 + 1), landing in {Re w^1 + |w'|^2 < 0}.
ComplexPoint cayley(const DomainModel& d, const ComplexPoint& z);
ComplexPoint cayley_inverse(const DomainModel& d, const ComplexPoint& w);

/// Bergman kernel of the left half-plane {Re w < 0}: 2 / (w + wbar)^2.
double halfplane_kernel(cplx w);

/// (c/2) sum_a log K_H(w^a) on the slice (w^1..w^r, 0..0); the constant C is dropped.
double siegel_log_kernel_on_polydisc_slice(const DomainModel& d, const ComplexPoint& w);

/// log K_S on the whole Siegel model of a Ball or Polydisc (constant dropped).
double siegel_log_kernel(const DomainModel& d, const ComplexPoint& w);

/// sigma^* log K_S as a potential of the Bergman metric (Ricci constant 1).
PotentialField siegel_potential(const DomainModel& d);

}  // namespace kelab
