#include "kelab/domains.hpp"

#include <cmath>

#include "kelab/errors.hpp"
#include "norm_forms.hpp"

namespace kelab {

double generic_norm(const DomainModel& d, const ComplexPoint& z) {
  d.require_contains(z);
  const auto zb = z.conjugate();
  return std::exp(detail::log_generic_norm(d, z.coords(), std::span<const cplx>(zb)).real());
}

PotentialField bergman_potential(const DomainModel& d) {
  if (!d.has_bergman_potential()) throw UnsupportedDomainError("no Bergman potential for " + d.name());
  return expression_potential(d, 1.0, "bergman " + d.name(), [d](auto z, auto zb) {
    return detail::bergman_log_kernel(d, z, zb);
  });
}

PotentialField ke_potential(const DomainModel& d, double K) {
  if (!(K > 0.0)) throw InvalidArgument("Ricci constant K must be positive");
  return bergman_potential(d).scaled(1.0 / K).with_label("ke " + d.name() + " K=" + std::to_string(K));
}

namespace {

void require_cayley_domain(const DomainModel& d) {
  if (d.kind() != DomainKind::Ball && d.kind() != DomainKind::Polydisc)
    throw UnsupportedDomainError("Cayley transform implemented for Ball and Polydisc only, not " + d.name());
}

cplx cayley_1d(cplx z) {
  if (z == cplx(-1.0, 0.0)) throw SingularityError("Cayley transform is singular at z = -1");
  return (z - 1.0) / (z + 1.0);
}

template <class T>
T siegel_log_kernel_pullback(const DomainModel& d, std::span<const T> z, std::span<const T> zb) {
  using std::log;
  const cplx log2(std::log(2.0));
  if (d.kind() == DomainKind::Ball) {
    if (std::abs(base_value(z[0]) + 1.0) == 0.0)
      throw SingularityError("sigma^* log K_S is singular at z^1 = -1");
    const T u = z[0] + cplx{1.0};
    const T ub = zb[0] + cplx{1.0};
    T s = (z[0] - cplx{1.0}) / u + (zb[0] - cplx{1.0}) / ub;
    if (z.size() > 1) {
      T tail = constant_like(z[0], cplx{});
      for (std::size_t a = 1; a < z.size(); ++a) tail += z[a] * zb[a];
      s += cplx{2.0} * tail / (u * ub);
    }
    const double half_c = 0.5 * (static_cast<double>(z.size()) + 1.0);
    return (log(-s) * cplx{-2.0} + log2) * cplx(half_c);
  }
  T acc = constant_like(z[0], cplx{});
  for (std::size_t a = 0; a < z.size(); ++a) {
    if (std::abs(base_value(z[a]) + 1.0) == 0.0)
      throw SingularityError("sigma^* log K_S is singular at z^a = -1");
    const T w = (z[a] - cplx{1.0}) / (z[a] + cplx{1.0});
    const T wb = (zb[a] - cplx{1.0}) / (zb[a] + cplx{1.0});
    acc += log(-(w + wb)) * cplx{-2.0} + log2;
  }
  return acc;
}

}  // namespace

ComplexPoint cayley(const DomainModel& d, const ComplexPoint& z) {
  require_cayley_domain(d);
  for (int a = 0; a < z.dim(); ++a)
    if (d.kind() == DomainKind::Polydisc || a == 0)
      if (z[a] == cplx(-1.0, 0.0)) throw SingularityError("Cayley transform is singular at z = -1");
  d.require_contains(z);
  std::vector<cplx> w(static_cast<std::size_t>(z.dim()));
  if (d.kind() == DomainKind::Polydisc) {
    for (int a = 0; a < z.dim(); ++a) w[static_cast<std::size_t>(a)] = cayley_1d(z[a]);
  } else {
    w[0] = cayley_1d(z[0]);
    for (int a = 1; a < z.dim(); ++a) w[static_cast<std::size_t>(a)] = z[a] / (z[0] + 1.0);
  }
  return ComplexPoint(std::move(w));
}

ComplexPoint cayley_inverse(const DomainModel& d, const ComplexPoint& w) {
  require_cayley_domain(d);
  std::vector<cplx> z(static_cast<std::size_t>(w.dim()));
  auto inv1 = [](cplx v) {
    if (v == cplx(1.0, 0.0)) throw SingularityError("inverse Cayley transform is singular at w = 1");
    return (1.0 + v) / (1.0 - v);
  };
  if (d.kind() == DomainKind::Polydisc) {
    for (int a = 0; a < w.dim(); ++a) z[static_cast<std::size_t>(a)] = inv1(w[a]);
  } else {
    z[0] = inv1(w[0]);
    for (int a = 1; a < w.dim(); ++a) z[static_cast<std::size_t>(a)] = w[a] * (z[0] + 1.0);
  }
  return ComplexPoint(std::move(z));
}

double halfplane_kernel(cplx w) {
  if (!(w.real() < 0.0)) throw MembershipError("half-plane kernel needs Re w < 0");
  const double s = 2.0 * w.real();
  return 2.0 / (s * s);
}

double siegel_log_kernel_on_polydisc_slice(const DomainModel& d, const ComplexPoint& w) {
  const auto c = d.bergman_exponent();
  if (!c) throw UnsupportedDomainError("no single Bergman exponent for " + d.name());
  if (w.dim() != d.dim()) throw UnsupportedPointError("point dimension does not match " + d.name());
  const int r = d.rank();
  for (int a = r; a < w.dim(); ++a)
    if (w[a] != cplx{}) throw UnsupportedPointError("point is off the rank-" + std::to_string(r) + " slice");
  double acc = 0.0;
  for (int a = 0; a < r; ++a) acc += std::log(halfplane_kernel(w[a]));
  return 0.5 * *c * acc;
}

double siegel_log_kernel(const DomainModel& d, const ComplexPoint& w) {
  require_cayley_domain(d);
  if (w.dim() != d.dim()) throw UnsupportedPointError("point dimension does not match " + d.name());
  if (d.kind() == DomainKind::Polydisc) return siegel_log_kernel_on_polydisc_slice(d, w);
  double tail = 0.0;
  for (int a = 1; a < w.dim(); ++a) tail += std::norm(w[a]);
  const double s = 2.0 * w[0].real() + 2.0 * tail;
  if (!(s < 0.0)) throw MembershipError("point is not in the Siegel model of " + d.name());
  return 0.5 * (d.dim() + 1.0) * std::log(2.0 / (s * s));
}

PotentialField siegel_potential(const DomainModel& d) {
  require_cayley_domain(d);
  return expression_potential(d, 1.0, "siegel " + d.name(), [d](auto z, auto zb) {
    return siegel_log_kernel_pullback(d, z, zb);
  });
}

}  // namespace kelab
