#include "kelab/hermgeo.hpp"

#include <cmath>

#include "kelab/errors.hpp"

namespace kelab {

double MetricFrame::invariant_defect() const {
  const int n = dim();
  double worst = (g * g_inv - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  worst = std::max(worst, (g - g.adjoint()).cwiseAbs().maxCoeff());
  for (const auto& G : christoffel) worst = std::max(worst, (G - G.transpose()).cwiseAbs().maxCoeff());
  return worst;
}

MetricFrame metric_from_jet(const Jet& jet, const ComplexPoint& z, bool with_christoffel) {
  const int n = jet.dim();
  if (jet.order() < (with_christoffel ? 3 : 2))
    throw UnsupportedOrderError("metric frame needs a jet of order 3 (2 without Christoffels)");
  MetricFrame f{z, Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(), {}, 0.0};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f.g(a, b) = jet.deriv({a}, {b});
  f.g = 0.5 * (f.g + f.g.adjoint()).eval();

  Eigen::LLT<Eigen::MatrixXcd> llt(f.g);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    const auto& L = llt.matrixLLT();
    for (int i = 0; i < n; ++i) ok = ok && L(i, i).real() > 0.0;
  }
  if (!ok)
    throw DegenerateMetricError("Levi form is not positive definite at " + z.to_string() +
                                " (point outside the strictly plurisubharmonic region)");
  const auto& L = llt.matrixLLT();
  for (int i = 0; i < n; ++i) f.log_det_g += 2.0 * std::log(L(i, i).real());
  f.g_inv = llt.solve(Eigen::MatrixXcd::Identity(n, n));

  if (with_christoffel) {
    f.christoffel.assign(static_cast<std::size_t>(n), Eigen::MatrixXcd::Zero(n, n));
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int m = 0; m < n; ++m) {
          const cplx dg = jet.deriv({a, b}, {m});
          for (int l = 0; l < n; ++l) {
            const cplx v = f.inv(l, m) * dg;
            f.christoffel[static_cast<std::size_t>(l)](a, b) += v;
            if (a != b) f.christoffel[static_cast<std::size_t>(l)](b, a) += v;
          }
        }
  }
  return f;
}

MetricFrame metric_from_potential(const PotentialField& p, const ComplexPoint& z, bool with_christoffel) {
  return metric_from_jet(best_jet(p, z, with_christoffel ? 3 : 2), z, with_christoffel);
}

namespace {

void require_same_point(const PotentialField& p, const MetricFrame& frame) {
  if (p.dim() != frame.dim()) throw InvalidArgument("potential and frame dimensions differ");
}

Eigen::VectorXcd holo_gradient(const Jet& jet) {
  const int n = jet.dim();
  Eigen::VectorXcd d(n);
  for (int a = 0; a < n; ++a) d(a) = jet.deriv({a}, {});
  return d;
}

Eigen::VectorXcd antiholo_gradient(const Jet& jet) {
  const int n = jet.dim();
  Eigen::VectorXcd d(n);
  for (int a = 0; a < n; ++a) d(a) = jet.deriv({}, {a});
  return d;
}

// phi^a = g^{a bbar} phi_bbar
Eigen::VectorXcd raised_gradient(const Jet& jet, const MetricFrame& frame) {
  return frame.g_inv.transpose() * antiholo_gradient(jet);
}

Eigen::MatrixXcd covariant_hessian_from_jet(const Jet& jet, const MetricFrame& frame) {
  if (!frame.has_christoffel()) throw InvalidArgument("covariant Hessian needs a frame with Christoffels");
  const int n = jet.dim();
  const Eigen::VectorXcd d = holo_gradient(jet);
  Eigen::MatrixXcd H(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx v = jet.deriv({a, b}, {});
      for (int l = 0; l < n; ++l) v -= frame.christoffel[static_cast<std::size_t>(l)](b, a) * d(l);
      H(a, b) = v;
    }
  return H;
}

}  // namespace

double gradient_length_sq(const Jet& jet, const MetricFrame& frame) {
  const Eigen::VectorXcd d = holo_gradient(jet);
  return d.dot(raised_gradient(jet, frame).conjugate()).real();
}

double gradient_length_sq(const PotentialField& p, const MetricFrame& frame) {
  require_same_point(p, frame);
  return gradient_length_sq(best_jet(p, frame.point, 1), frame);
}

double differential_length_sq(const PotentialField& p, const MetricFrame& frame) {
  return 2.0 * gradient_length_sq(p, frame);
}

ScalarFunction gradient_length_function(const PotentialField& p) { return gradient_length_function(p, p); }

ScalarFunction gradient_length_function(const PotentialField& p, const PotentialField& metric_potential) {
  return [p, metric_potential](const ComplexPoint& z) {
    return gradient_length_sq(p, metric_from_potential(metric_potential, z, false));
  };
}

Eigen::MatrixXcd covariant_hessian(const PotentialField& p, const MetricFrame& frame) {
  require_same_point(p, frame);
  return covariant_hessian_from_jet(best_jet(p, frame.point, 2), frame);
}

double hessian_norm_sq(const PotentialField& p, const MetricFrame& frame) {
  const Eigen::MatrixXcd H = covariant_hessian(p, frame);
  // P(a, l) = g^{a lbar}
  const Eigen::MatrixXcd P = frame.g_inv.transpose();
  const Eigen::MatrixXcd X = P.transpose() * H * P;  // X(l, m) = sum g^{a lbar} g^{b mbar} H(a, b)
  return X.cwiseProduct(H.conjugate()).sum().real();
}

Eigen::VectorXcd key_equation_residual(const PotentialField& p, const MetricFrame& frame) {
  require_same_point(p, frame);
  const Jet jet = best_jet(p, frame.point, 2);
  const Eigen::MatrixXcd H = covariant_hessian_from_jet(jet, frame);
  return H.transpose() * raised_gradient(jet, frame) + holo_gradient(jet);
}

double laplacian(const ScalarFunction& f, const MetricFrame& frame, std::optional<double> step) {
  const Jet jet = fd_jet(f, frame.point, 2, step);
  const int n = frame.dim();
  cplx acc{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) acc += frame.inv(a, b) * jet.deriv({a}, {b});
  return acc.real();
}

double laplacian_of_gradient_length(const PotentialField& p, const ComplexPoint& z) {
  const int n = p.dim();
  const Series s = p.series(z, 4);
  std::vector<Series> d, db, g;
  for (int a = 0; a < n; ++a) {
    d.push_back(s.diff(a).truncated(2));
    db.push_back(s.diff(n + a).truncated(2));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.push_back(s.diff(a).diff(n + b));
  const std::vector<Series> ginv = inverse(g, n);
  Series len(g[0].layout(), cplx{});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) len += d[static_cast<std::size_t>(a)] * ginv[static_cast<std::size_t>(b * n + a)] *
                                       db[static_cast<std::size_t>(b)];
  const Jet jet = Jet::from_series(len);
  cplx acc{};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) acc += ginv[static_cast<std::size_t>(b * n + a)].constant() * jet.deriv({a}, {b});
  return acc.real();
}

DeltaIdentityTerms delta_identity(const PotentialField& p, const ComplexPoint& z, bool analytic) {
  const MetricFrame frame = metric_from_potential(p, z, true);
  DeltaIdentityTerms t{};
  t.gradient_length_sq = gradient_length_sq(p, frame);
  t.hessian_norm_sq = hessian_norm_sq(p, frame);
  t.laplacian = analytic ? laplacian_of_gradient_length(p, z) : laplacian(gradient_length_function(p), frame);
  t.residual = t.laplacian - t.hessian_norm_sq - p.dim() + p.ricci_constant() * t.gradient_length_sq;
  return t;
}

Eigen::MatrixXcd ricci(const PotentialField& p, const ComplexPoint& z) {
  const ScalarFunction log_det = [&p](const ComplexPoint& w) {
    return metric_from_potential(p, w, false).log_det_g;
  };
  const Jet jet = fd_jet(log_det, z, 2);
  const int n = p.dim();
  Eigen::MatrixXcd R(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) R(a, b) = -jet.deriv({a}, {b});
  return R;
}

Eigen::MatrixXcd ricci_analytic(const PotentialField& p, const ComplexPoint& z) {
  const int n = p.dim();
  const Series s = p.series(z, 4);
  std::vector<Series> g;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.push_back(s.diff(a).diff(n + b));
  const Jet jet = Jet::from_series(log(determinant(g, n)));
  Eigen::MatrixXcd R(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) R(a, b) = -jet.deriv({a}, {b});
  return R;
}

double einstein_defect(const PotentialField& p, const ComplexPoint& z, bool analytic) {
  const MetricFrame frame = metric_from_potential(p, z, false);
  const Eigen::MatrixXcd R = analytic ? ricci_analytic(p, z) : ricci(p, z);
  return (R + p.ricci_constant() * frame.g).cwiseAbs().maxCoeff();
}

}  // namespace kelab
