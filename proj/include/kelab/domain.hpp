#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kelab/point.hpp"

namespace kelab {

enum class DomainKind {
  Ball,
  Polydisc,
  TypeI,
  TypeII,
  TypeIII,
  TypeIV,
  HalfPlaneProduct,
  Product,
  /// All of C^n with the flat metric; a test fixture, not a bounded domain.
  Flat,
};

/// Table entry for a bounded symmetric domain: Bergman exponent c, dimension n, rank r.
struct InvariantsRecord {
  std::string name;
  double c = 0.0;
  int n = 0;
  int rank = 0;
  double rc = 0.0;
};

/// Descriptor of a model domain. Matrix domains are flattened row-major into
/// C^n; TypeII uses the strictly upper entries of a skew matrix, TypeIII the
/// upper entries of a symmetric matrix with off-diagonal entries scaled by
/// 1/sqrt(2) so that tr(ZZ*) = |z|^2.
class DomainModel {
 public:
  static DomainModel ball(int n);
  static DomainModel polydisc(int n);
  static DomainModel type_one(int p, int q);
  /// Requires m >= 3 (TypeII(2) is a disk).
  static DomainModel type_two(int m);
  static DomainModel type_three(int m);
  /// Requires m >= 3 (TypeIV(1), TypeIV(2) are not irreducible of this form).
  static DomainModel type_four(int m);
  static DomainModel half_plane_product(int r);
  static DomainModel product(std::vector<DomainModel> factors);
  /// n = 0 is allowed here only, as the trivial product factor.
  static DomainModel flat(int n);

  DomainKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return n_; }
  int rank() const noexcept { return rank_; }
  /// c with K_Omega = c' N^{-c}; present for the symmetric kinds with a single exponent.
  std::optional<double> bergman_exponent() const noexcept { return c_; }
  /// N = det(I - ZZ*)^s for the matrix kinds.
  double norm_power() const noexcept;
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  int m() const noexcept { return p_; }
  const std::vector<DomainModel>& factors() const noexcept { return factors_; }

  bool contains(const ComplexPoint& z) const;
  /// Throws MembershipError when z is not an interior point.
  void require_contains(const ComplexPoint& z) const;

  bool is_irreducible() const noexcept;
  /// Biholomorphic to a ball: Ball, TypeI(1,q), TypeII(3), TypeIII(1), Polydisc(1).
  bool is_ball_equivalent() const noexcept;
  /// Bounded symmetric (Bergman potential available).
  bool has_bergman_potential() const noexcept;

  /// rc is the Siegel-slice bound sum r_i c_i for products.
  InvariantsRecord invariants() const;
  std::string name() const;

  friend bool operator==(const DomainModel& a, const DomainModel& b);

 private:
  DomainModel(DomainKind kind, int n, int rank, std::optional<double> c, int p, int q)
      : kind_(kind), n_(n), rank_(rank), c_(c), p_(p), q_(q) {}

  DomainKind kind_;
  int n_;
  int rank_;
  std::optional<double> c_;
  int p_;
  int q_;
  std::vector<DomainModel> factors_;
};

/// Matrix rows/cols of the Z realizing a point of a matrix-type domain.
std::pair<int, int> matrix_shape(const DomainModel& d);

/// Data-only invariants of the two exceptional domains (16- and 27-dimensional).
std::vector<InvariantsRecord> exceptional_invariants();

/// Table rows for the classical kinds up to the given size parameter.
std::vector<InvariantsRecord> classical_invariants(int max_param);

std::string to_string(DomainKind kind);

}  // namespace kelab
