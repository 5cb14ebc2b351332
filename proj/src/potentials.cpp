#include "kelab/potentials.hpp"

#include <cmath>
#include <limits>

#include "kelab/domains.hpp"
#include "kelab/errors.hpp"
#include "kelab/hermgeo.hpp"
#include "kelab/jets.hpp"
#include "kelab/sampling.hpp"
#include "kelab/series.hpp"
#include "norm_forms.hpp"

namespace kelab {

PotentialField ball_potential(int n) {
  return ke_potential(DomainModel::ball(n), n + 1.0).with_label("phi_rho Ball(" + std::to_string(n) + ")");
}

namespace {

PotentialField flat_with_constant(int n, double K) {
  if (n == 0) {
    return PotentialField(
        DomainModel::flat(0), K, kExpressionOrder, [](const ComplexPoint&) { return 0.0; },
        [](const ComplexPoint&, int order) { return Series(MonomialLayout::get(0, order), cplx{}); }, "flat(0)");
  }
  return expression_potential(DomainModel::flat(n), K, "flat(" + std::to_string(n) + ")",
                              [](auto z, auto zb) { return detail::sum_sq(z, zb); });
}

}  // namespace

PotentialField flat_potential(int n) { return flat_with_constant(n, 0.0); }

ComplexPoint reference_point(const DomainModel& d) {
  std::vector<cplx> z;
  auto fill = [&z](const DomainModel& f, auto&& self) -> void {
    if (f.kind() == DomainKind::Product) {
      for (const auto& g : f.factors()) self(g, self);
    } else {
      const cplx v = f.kind() == DomainKind::HalfPlaneProduct ? cplx(-1.0) : cplx{};
      z.insert(z.end(), static_cast<std::size_t>(f.dim()), v);
    }
  };
  fill(d, fill);
  return ComplexPoint(std::move(z));
}

PotentialField canonical_potential(const PotentialField& p) {
  const double K = p.ricci_constant();
  if (!(K > 0.0)) throw NotEinsteinError("canonical potential needs a Ricci constant K > 0 (" + p.label() + ")");
  const ComplexPoint ref = reference_point(p.domain());
  const bool analytic = p.analytic_order() >= 4;
  const double defect = einstein_defect(p, ref, analytic);
  const double tol = (analytic ? 1e-8 : 1e-3) * std::max(1.0, K);
  if (!(defect <= tol))
    throw NotEinsteinError("metric of '" + p.label() + "' is not Einstein with K = " + std::to_string(K) +
                           " (|Ric + K g| = " + std::to_string(defect) + " at " + ref.to_string() + ")");

  const int n = p.dim();
  auto value = [p, K](const ComplexPoint& z) { return metric_from_potential(p, z, false).log_det_g / K; };
  PotentialField::SeriesFn series;
  const int order = std::max(0, p.analytic_order() - 2);
  if (p.analytic_order() >= 2) {
    series = [p, K, n](const ComplexPoint& z, int k) {
      const Series s = p.series(z, k + 2);
      std::vector<Series> g;
      g.reserve(static_cast<std::size_t>(n * n));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.push_back(s.diff(a).diff(n + b));
      return log(determinant(g, n)) / cplx(K);
    };
  }
  return PotentialField(p.domain(), K, order, value, series, "canonical[" + p.label() + "]");
}

PotentialField canonical_potential(const DomainModel& d, double K) {
  if (!(K > 0.0)) throw InvalidArgument("Ricci constant K must be positive");
  if (d.kind() == DomainKind::Flat) return canonical_potential(flat_with_constant(d.dim(), K));
  return canonical_potential(ke_potential(d, K));
}

PotentialField rescaled_ball_potential(int n, double K, std::optional<ComplexPoint> boundary) {
  if (n < 1) throw InvalidArgument("rescaled ball potential needs n >= 1");
  if (!(K > 0.0)) throw InvalidArgument("Ricci constant K must be positive");
  std::vector<cplx> u(static_cast<std::size_t>(n), cplx{});
  u[0] = 1.0;
  if (boundary) {
    if (boundary->dim() != n) throw InvalidArgument("boundary point has the wrong dimension");
    if (std::abs(boundary->norm_sq() - 1.0) > 1e-12) throw InvalidArgument("boundary point must have |u| = 1");
    u.assign(boundary->coords().begin(), boundary->coords().end());
  }
  const double A = (n + 1.0) / K;
  auto pairing = [u](const ComplexPoint& z) {
    cplx s = 1.0;
    for (int a = 0; a < z.dim(); ++a) s += z[a] * std::conj(u[static_cast<std::size_t>(a)]);
    return s;
  };
  auto guard = [pairing, n](const ComplexPoint& z) {
    if (z.dim() == n && pairing(z) == cplx{})
      throw SingularityError("rescaled ball potential is singular where 1 + <z, u> = 0, at " + z.to_string());
  };
  auto formula = [u, A](auto z, auto zb) {
    using std::log;
    auto w = constant_like(z[0], cplx{1.0});
    auto wb = constant_like(z[0], cplx{1.0});
    auto r = constant_like(z[0], cplx{1.0});
    for (std::size_t a = 0; a < z.size(); ++a) {
      w += z[a] * std::conj(u[a]);
      wb += zb[a] * u[a];
      r -= z[a] * zb[a];
    }
    return (log(w) + log(wb) - log(r)) * cplx(A);
  };
  std::string label = "rescaled ball n=" + std::to_string(n) + " K=" + std::to_string(K);
  if (boundary) label += " u=" + boundary->to_string();
  return expression_potential(DomainModel::ball(n), K, label, formula).with_guard(guard);
}

PotentialField product_potential(const PotentialField& p1, const PotentialField& p2) {
  const int n1 = p1.dim();
  const int n2 = p2.dim();
  double K = p1.ricci_constant();
  if (n1 == 0) {
    K = p2.ricci_constant();
  } else if (n2 > 0) {
    const double K2 = p2.ricci_constant();
    if (std::abs(K - K2) > 1e-12 * std::max(std::abs(K), std::abs(K2)))
      throw NormalizationError("product factors must share the Ricci constant (" + std::to_string(K) + " vs " +
                               std::to_string(K2) + ")");
  }
  const int n = n1 + n2;
  const DomainModel d = DomainModel::product({p1.domain(), p2.domain()});

  auto split = [n1, n2](const ComplexPoint& z) {
    const auto c = z.coords();
    std::pair<std::optional<ComplexPoint>, std::optional<ComplexPoint>> parts;
    if (n1 > 0) parts.first.emplace(std::vector<cplx>(c.begin(), c.begin() + n1));
    if (n2 > 0) parts.second.emplace(std::vector<cplx>(c.begin() + n1, c.begin() + n1 + n2));
    return parts;
  };
  auto value = [p1, p2, split](const ComplexPoint& z) {
    const auto [z1, z2] = split(z);
    double v = 0.0;
    if (z1) v += p1(*z1);
    if (z2) v += p2(*z2);
    return v;
  };
  const int order = std::min(n1 > 0 ? p1.analytic_order() : kExpressionOrder,
                             n2 > 0 ? p2.analytic_order() : kExpressionOrder);
  PotentialField::SeriesFn series;
  if (order > 0) {
    series = [p1, p2, split, n1, n2, n](const ComplexPoint& z, int k) {
      const auto layout = MonomialLayout::get(n, k);
      Series acc(layout, cplx{});
      const auto [z1, z2] = split(z);
      auto add = [&](const PotentialField& p, const ComplexPoint& w, int off, int m) {
        std::vector<int> map(static_cast<std::size_t>(2 * m));
        for (int i = 0; i < m; ++i) {
          map[static_cast<std::size_t>(i)] = off + i;
          map[static_cast<std::size_t>(m + i)] = n + off + i;
        }
        acc += p.series(w, k).embedded(layout, map);
      };
      if (z1) add(p1, *z1, 0, n1);
      if (z2) add(p2, *z2, n1, n2);
      return acc;
    };
  }
  return PotentialField(d, K, order, value, series, p1.label() + " (+) " + p2.label());
}

ConstantLengthCertificate certify_constant_length(const PotentialField& p, const std::vector<ComplexPoint>& points,
                                                  double tolerance) {
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  ConstantLengthCertificate cert{p, 0.0, 0.0, 0, tolerance, 0.0, p.analytic_order() >= 2};
  const double K = p.ricci_constant();
  cert.lower_bound = K > 0.0 ? (p.dim() + 1.0) / K : std::numeric_limits<double>::infinity();
  std::vector<double> lengths;
  lengths.reserve(points.size());
  for (const auto& z : points) lengths.push_back(gradient_length_sq(p, metric_from_potential(p, z, false)));
  if (lengths.empty()) return cert;
  double sum = 0.0;
  for (double v : lengths) sum += v;
  cert.constant = sum / static_cast<double>(lengths.size());
  for (double v : lengths) cert.max_deviation = std::max(cert.max_deviation, std::abs(v - cert.constant));
  cert.sample_count = static_cast<int>(lengths.size());
  return cert;
}

ConstantLengthCertificate certify_constant_length(const PotentialField& p, int count, std::uint64_t seed,
                                                  double tolerance) {
  return certify_constant_length(p, sample_points(p.domain(), count, seed), tolerance);
}

KaiOhsawaResult kai_ohsawa_constant(const DomainModel& d, int spot_checks, std::uint64_t seed) {
  if (d.kind() != DomainKind::Ball && d.kind() != DomainKind::Polydisc)
    throw UnsupportedDomainError("L_Omega is computed for Ball and Polydisc only; " + d.name() +
                                 " has the lower bound r c = " + std::to_string(d.invariants().rc));
  const PotentialField siegel = siegel_potential(d);
  const PotentialField bergman = bergman_potential(d);
  auto length_at = [&](const ComplexPoint& z) {
    return gradient_length_sq(siegel, metric_from_potential(bergman, z, false));
  };
  KaiOhsawaResult res;
  res.domain = d.name();
  res.c = *d.bergman_exponent();
  res.lower_bound = d.invariants().rc;
  const ComplexPoint origin = ComplexPoint::zero(d.dim());
  res.L = length_at(origin);
  for (const auto& z : sample_points(d, spot_checks, seed))
    res.spot_max_deviation = std::max(res.spot_max_deviation, std::abs(length_at(z) - res.L));
  res.spot_count = spot_checks;
  const Jet jet = analytic_jet(siegel, origin, 1);
  for (int a = 0; a < d.rank(); ++a) res.slice_derivatives.push_back(jet.deriv({a}, {}).real());
  return res;
}

namespace {

MinimalityRow minimality_row(const InvariantsRecord& rec, double K) {
  MinimalityRow row;
  row.kind = rec.name;
  row.n = rec.n;
  row.rank = rec.rank;
  row.c = rec.c;
  row.rc_over_K = rec.rc / K;
  row.ball_value = (rec.n + 1.0) / K;
  row.strict = rec.rc > rec.n + 1.0 + 1e-12;
  return row;
}

}  // namespace

std::vector<MinimalityRow> ball_minimality_report(const std::vector<DomainModel>& kinds, double K) {
  if (!(K > 0.0)) throw InvalidArgument("Ricci constant K must be positive");
  std::vector<MinimalityRow> rows;
  for (const auto& d : kinds) {
    if (!d.has_bergman_potential()) throw UnsupportedDomainError("no table entry for " + d.name());
    rows.push_back(minimality_row(d.invariants(), K));
  }
  return rows;
}

std::vector<MinimalityRow> ball_minimality_report(const std::vector<InvariantsRecord>& recs, double K) {
  if (!(K > 0.0)) throw InvalidArgument("Ricci constant K must be positive");
  std::vector<MinimalityRow> rows;
  for (const auto& r : recs) rows.push_back(minimality_row(r, K));
  return rows;
}

}  // namespace kelab
