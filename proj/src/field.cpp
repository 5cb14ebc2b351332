#include "kelab/field.hpp"

#include <cmath>

#include "kelab/errors.hpp"

namespace kelab {

PotentialField::PotentialField(DomainModel domain, double ricci_constant, int analytic_order, ValueFn value,
                               SeriesFn series, std::string label)
    : domain_(std::move(domain)),
      ricci_constant_(ricci_constant),
      analytic_order_(analytic_order),
      value_(std::move(value)),
      series_(std::move(series)),
      label_(std::move(label)) {
  if (!(ricci_constant_ >= 0.0) || !std::isfinite(ricci_constant_))
    throw InvalidArgument("Ricci constant must be finite and nonnegative");
  if (analytic_order_ > 0 && !series_) throw InvalidArgument("closed-form order declared without a series");
}

double PotentialField::operator()(const ComplexPoint& z) const {
  if (guard_) guard_(z);
  domain_.require_contains(z);
  return value_(z);
}

Series PotentialField::series(const ComplexPoint& z, int order) const {
  if (order > analytic_order_)
    throw UnsupportedOrderError("potential '" + label_ + "' has no closed form of order " + std::to_string(order));
  if (guard_) guard_(z);
  domain_.require_contains(z);
  return series_(z, order);
}

ScalarFunction PotentialField::as_function() const {
  return [self = *this](const ComplexPoint& z) { return self(z); };
}

PotentialField PotentialField::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("potential scale factor must be positive");
  auto v = value_;
  auto s = series_;
  SeriesFn scaled_series;
  if (s) scaled_series = [s, factor](const ComplexPoint& z, int order) { return s(z, order) * cplx(factor); };
  PotentialField out(
      domain_, ricci_constant_ / factor, analytic_order_,
      [v, factor](const ComplexPoint& z) { return factor * v(z); }, scaled_series, label_);
  out.guard_ = guard_;
  return out;
}

PotentialField PotentialField::with_label(std::string label) const {
  PotentialField p = *this;
  p.label_ = std::move(label);
  return p;
}

PotentialField PotentialField::fd_only() const {
  PotentialField out(domain_, ricci_constant_, 0, value_, nullptr, label_ + " [fd]");
  out.guard_ = guard_;
  return out;
}

PotentialField PotentialField::with_guard(GuardFn guard) const {
  PotentialField p = *this;
  p.guard_ = std::move(guard);
  return p;
}

}  // namespace kelab
