#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kelab/point.hpp"
#include "kelab/series.hpp"

namespace kelab {

class PotentialField;

using ScalarFunction = std::function<double(const ComplexPoint&)>;

/// Mixed holomorphic/antiholomorphic partial derivatives d^a dbar^b f of a
/// real function at a point, for |a| + |b| <= order.
///
/// Entries are indexed by the monomial layout of the point's dimension: the
/// entry for exponents (a, b) holds the derivative itself, not the Taylor
/// coefficient. Multi-indices are canonical (sorted) by construction.
class Jet {
 public:
  explicit Jet(LayoutPtr layout);

  /// Derivatives from a Taylor polynomial (coefficients times exponent factorials).
  static Jet from_series(const Series& s);

  int order() const noexcept { return layout_->order(); }
  int dim() const noexcept { return layout_->dim(); }
  const LayoutPtr& layout() const noexcept { return layout_; }
  std::span<const cplx> entries() const noexcept { return derivs_; }
  cplx& entry(int idx) { return derivs_[static_cast<std::size_t>(idx)]; }
  cplx entry(int idx) const { return derivs_[static_cast<std::size_t>(idx)]; }

  cplx value() const { return derivs_.front(); }
  /// d/dz^holo[0] ... d/dzbar^antiholo[0] ... f; indices are 0-based coordinates.
  cplx deriv(std::span<const int> holo, std::span<const int> antiholo) const;
  cplx deriv(std::initializer_list<int> holo, std::initializer_list<int> antiholo) const {
    return deriv(std::span<const int>(holo.begin(), holo.size()),
                 std::span<const int>(antiholo.begin(), antiholo.size()));
  }

  /// Replaces each pair (a,b), (b,a) by its conjugate-symmetric average.
  void symmetrize();

  Jet& operator+=(const Jet& o);
  Jet& operator*=(double c);

 private:
  LayoutPtr layout_;
  std::vector<cplx> derivs_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator*(double c, Jet a);

/// Default central-difference step: 1e-4 for orders 1-2, 1e-2 for orders 3-4.
double default_fd_step(int order);

/// Central-difference jet with one Richardson level (steps h and h/2).
/// Complex partials are assembled from real partials in Re z and Im z with
/// d/dz = (d_x - i d_y)/2 and d/dzbar = (d_x + i d_y)/2.
Jet fd_jet(const ScalarFunction& f, const ComplexPoint& z, int order,
           std::optional<double> step = std::nullopt);

/// Closed-form jet from the potential's Taylor expansion.
Jet analytic_jet(const PotentialField& p, const ComplexPoint& z, int order);

/// analytic_jet when the potential supports the order, fd_jet otherwise.
Jet best_jet(const PotentialField& p, const ComplexPoint& z, int order);

}  // namespace kelab
