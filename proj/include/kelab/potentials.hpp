#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kelab/domain.hpp"
#include "kelab/field.hpp"
#include "kelab/point.hpp"

namespace kelab {

/// phi_rho = -log(1 - |z|^2) on Ball(n); dd^c phi_rho is the ball metric with K = n + 1.
PotentialField ball_potential(int n);

/// |z|^2 on C^n (flat metric, Ricci 0). A fixture for negative tests.
PotentialField flat_potential(int n);

/// (1/K) log det g of the metric of p, checked to be Einstein with constant p.ricci_constant().
/// Throws NotEinsteinError when Ric + K g does not vanish at the reference point.
PotentialField canonical_potential(const PotentialField& p);
/// Canonical potential of the Kähler-Einstein metric of d with constant K.
PotentialField canonical_potential(const DomainModel& d, double K);

/// ((n+1)/K) (phi_rho + log|1 + <z, u>|^2) with |u| = 1 (default u = e_1).
/// Its gradient length is identically (n+1)/K. Throws SingularityError at 1 + <z, u> = 0.
PotentialField rescaled_ball_potential(int n, double K, std::optional<ComplexPoint> boundary = std::nullopt);

/// pi_1^* p1 + pi_2^* p2 on d1 x d2. Throws NormalizationError when the Ricci
/// constants differ; a zero-dimensional factor contributes nothing.
PotentialField product_potential(const PotentialField& p1, const PotentialField& p2);

/// The first point used for normalization checks (origin, or (-1, ..., -1) on half-planes).
ComplexPoint reference_point(const DomainModel& d);

struct ConstantLengthCertificate {
  PotentialField potential;
  double constant = 0.0;
  double max_deviation = 0.0;
  int sample_count = 0;
  double tolerance = 0.0;
  /// (n+1)/K for the potential's dimension and Ricci constant.
  double lower_bound = 0.0;
  bool analytic = false;

  bool constant_ok() const { return max_deviation <= tolerance; }
  bool bound_ok() const { return constant >= lower_bound - tolerance; }
  bool valid() const { return sample_count > 0 && constant_ok() && bound_ok(); }
};

/// Gradient length sampled at `points` (analytic path when available).
/// constant is the mean, max_deviation the largest distance from it.
ConstantLengthCertificate certify_constant_length(const PotentialField& p, const std::vector<ComplexPoint>& points,
                                                  double tolerance);
/// Same over `count` seeded interior samples.
ConstantLengthCertificate certify_constant_length(const PotentialField& p, int count, std::uint64_t seed,
                                                  double tolerance);

struct KaiOhsawaResult {
  std::string domain;
  /// |d (sigma^* log K_S)|^2 at 0 with the Bergman metric (K = 1).
  double L = 0.0;
  /// r c_Omega
  double lower_bound = 0.0;
  /// max |length(z) - L| over the spot-check points.
  double spot_max_deviation = 0.0;
  int spot_count = 0;
  /// d/dz^a log(K_S o sigma) at 0 for a = 1..r.
  std::vector<double> slice_derivatives;
  double c = 0.0;
};

/// L_Omega for Ball and Polydisc; throws UnsupportedDomainError otherwise.
KaiOhsawaResult kai_ohsawa_constant(const DomainModel& d, int spot_checks = 20, std::uint64_t seed = 7);

struct MinimalityRow {
  std::string kind;
  int n = 0;
  int rank = 0;
  double c = 0.0;
  double rc_over_K = 0.0;
  double ball_value = 0.0;  // (n+1)/K
  bool strict = false;
};

/// rc/K against (n+1)/K for each domain (products use the sum of factor rc).
std::vector<MinimalityRow> ball_minimality_report(const std::vector<DomainModel>& kinds, double K);
/// Same for table rows given as data (exceptional domains).
std::vector<MinimalityRow> ball_minimality_report(const std::vector<InvariantsRecord>& rows, double K);

}  // namespace kelab
