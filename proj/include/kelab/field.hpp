#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kelab/domain.hpp"
#include "kelab/jets.hpp"
#include "kelab/point.hpp"
#include "kelab/series.hpp"

namespace kelab {

/// Highest Taylor order requested from expression-backed potentials.
inline constexpr int kExpressionOrder = 8;

/// A real potential on a domain with value access and, up to analytic_order(),
/// closed-form Taylor expansions. ricci_constant() is the K its metric targets
/// (Ric = -K g); the flat fixture uses 0.
class PotentialField {
 public:
  using ValueFn = std::function<double(const ComplexPoint&)>;
  using SeriesFn = std::function<Series(const ComplexPoint&, int)>;
  /// Throws for points on a singular set; checked before membership.
  using GuardFn = std::function<void(const ComplexPoint&)>;

  PotentialField(DomainModel domain, double ricci_constant, int analytic_order, ValueFn value,
                 SeriesFn series, std::string label);

  const DomainModel& domain() const noexcept { return domain_; }
  int dim() const noexcept { return domain_.dim(); }
  double ricci_constant() const noexcept { return ricci_constant_; }
  int analytic_order() const noexcept { return analytic_order_; }
  const std::string& label() const noexcept { return label_; }

  /// Value at an interior point; throws MembershipError outside the domain.
  double operator()(const ComplexPoint& z) const;
  /// Taylor expansion about z in the Wirtinger variables.
  Series series(const ComplexPoint& z, int order) const;
  ScalarFunction as_function() const;

  /// factor * phi, whose metric has Ricci constant K / factor.
  PotentialField scaled(double factor) const;
  PotentialField with_label(std::string label) const;
  /// Drops the closed-form path (FD-only derivatives).
  PotentialField fd_only() const;
  PotentialField with_guard(GuardFn guard) const;

 private:
  DomainModel domain_;
  double ricci_constant_;
  int analytic_order_;
  ValueFn value_;
  SeriesFn series_;
  std::string label_;
  GuardFn guard_;
};

/// Builds a potential from one generic formula f(z, zbar) usable with cplx and Series spans.
template <class F>
PotentialField expression_potential(DomainModel domain, double ricci_constant, std::string label, F formula) {
  auto value = [formula](const ComplexPoint& z) {
    const auto zb = z.conjugate();
    const cplx v = formula(z.coords(), std::span<const cplx>(zb));
    return v.real();
  };
  auto series = [formula](const ComplexPoint& z, int order) {
    const auto vars = Series::variables(z, order);
    const std::span<const Series> all(vars);
    const auto n = static_cast<std::size_t>(z.dim());
    return formula(all.subspan(0, n), all.subspan(n, n));
  };
  return PotentialField(std::move(domain), ricci_constant, kExpressionOrder, value, series, std::move(label));
}

}  // namespace kelab
