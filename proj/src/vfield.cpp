#include "kelab/vfield.hpp"

#include <cmath>
#include <ostream>

#include "kelab/errors.hpp"
#include "kelab/hermgeo.hpp"
#include "kelab/jets.hpp"
#include "kelab/series.hpp"

namespace kelab {

namespace {

constexpr cplx I{0.0, 1.0};

double exponent_rate(const PotentialField& p) { return p.ricci_constant() / (p.dim() + 1.0); }

struct FieldData {
  Jet jet;
  MetricFrame frame;
  double phi;
  Eigen::VectorXcd raised;  // phi^a
};

FieldData field_data(const PotentialField& p, const ComplexPoint& z, bool with_christoffel = false) {
  Jet jet = best_jet(p, z, with_christoffel ? 3 : 2);
  MetricFrame frame = metric_from_jet(jet, z, with_christoffel);
  const int n = p.dim();
  Eigen::VectorXcd dbar(n);
  for (int b = 0; b < n; ++b) dbar(b) = jet.deriv({}, {b});
  Eigen::VectorXcd raised = frame.g_inv.transpose() * dbar;
  const double phi = jet.value().real();
  return {std::move(jet), std::move(frame), phi, std::move(raised)};
}

// |T|^2 = g_{a cbar} g^{d bbar} T^a_bbar conj(T^c_dbar) for M(a, b) = T^a_bbar.
double mixed_tensor_norm_sq(const Eigen::MatrixXcd& M, const MetricFrame& frame) {
  const Eigen::MatrixXcd X = frame.g.transpose() * M * frame.g_inv;
  return X.cwiseProduct(M.conjugate()).sum().real();
}

Eigen::VectorXcd flow_velocity(const PotentialField& p, const ComplexPoint& z, FlowField field) {
  const FieldData f = field_data(p, z);
  const double scale = field == FlowField::V ? std::exp(exponent_rate(p) * f.phi) : 1.0;
  return I * scale * f.raised;
}

ComplexPoint advance(const ComplexPoint& z, const Eigen::VectorXcd& v, double h) {
  std::vector<cplx> w(z.coords().begin(), z.coords().end());
  for (std::size_t a = 0; a < w.size(); ++a) w[a] += h * v(static_cast<Eigen::Index>(a));
  return ComplexPoint(std::move(w));
}

template <class Visit>
ComplexPoint integrate(const PotentialField& p, const ComplexPoint& z0, double t, double dt, FlowField field,
                       Visit visit) {
  if (!(dt > 0.0)) throw InvalidArgument("flow step dt must be positive");
  if (!std::isfinite(t) || std::abs(t) > 10.0) throw InvalidArgument("flow horizon must satisfy |t| <= 10");
  p.domain().require_contains(z0);
  visit(0, 0.0, z0);
  if (t == 0.0) return z0;
  const long steps = static_cast<long>(std::ceil(std::abs(t) / dt - 1e-9));
  const double h = t / static_cast<double>(steps);
  ComplexPoint z = z0;
  for (long s = 0; s < steps; ++s) {
    const double now = static_cast<double>(s) * h;
    try {
      const auto k1 = flow_velocity(p, z, field);
      const auto k2 = flow_velocity(p, advance(z, k1, 0.5 * h), field);
      const auto k3 = flow_velocity(p, advance(z, k2, 0.5 * h), field);
      const auto k4 = flow_velocity(p, advance(z, k3, h), field);
      const Eigen::VectorXcd dz = (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
      z = advance(z, dz, h);
      if (!p.domain().contains(z)) throw MembershipError("trajectory left " + p.domain().name());
    } catch (const BlowUpError&) {
      throw;
    } catch (const Error& e) {
      throw BlowUpError("trajectory from " + z0.to_string() + " left the domain near t = " + std::to_string(now) +
                            ": " + e.what(),
                        now);
    }
    visit(s + 1, static_cast<double>(s + 1) * h, z);
  }
  return z;
}

}  // namespace

VectorFieldAt vector_field_unchecked(const PotentialField& p, const ComplexPoint& z) {
  const FieldData f = field_data(p, z);
  VectorFieldAt v{z, I * std::exp(exponent_rate(p) * f.phi) * f.raised, 0.0};
  const cplx nsq = (v.components.transpose() * f.frame.g * v.components.conjugate())(0, 0);
  v.norm = std::sqrt(std::max(0.0, nsq.real()));
  return v;
}

VectorFieldAt vector_field(const ConstantLengthCertificate& cert, const ComplexPoint& z) {
  if (!cert.valid())
    throw PreconditionError("vector field needs a valid constant-length certificate for '" +
                            cert.potential.label() + "' (max deviation " + std::to_string(cert.max_deviation) +
                            ", tolerance " + std::to_string(cert.tolerance) + ")");
  return vector_field_unchecked(cert.potential, z);
}

double dbar_defect(const PotentialField& p, const ComplexPoint& z) {
  const int n = p.dim();
  const double rate = exponent_rate(p);
  const MetricFrame frame = metric_from_potential(p, z, false);
  Eigen::MatrixXcd M(n, n);
  if (p.analytic_order() >= 3) {
    const Series s = p.series(z, 3);
    std::vector<Series> g;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g.push_back(s.diff(a).diff(n + b));
    const std::vector<Series> ginv = inverse(g, n);
    const Series e = exp(s.truncated(1) * cplx(rate));
    for (int a = 0; a < n; ++a) {
      Series va(ginv[0].layout(), cplx{});
      for (int b = 0; b < n; ++b)
        va += ginv[static_cast<std::size_t>(b * n + a)] * s.diff(n + b).truncated(1);
      va = va * e * I;
      const Jet jv = Jet::from_series(va);
      for (int b = 0; b < n; ++b) M(a, b) = jv.deriv({}, {b});
    }
  } else {
    // dbar_b = (d_x + i d_y)/2, fourth-order central differences
    const double h = 1e-3;
    auto V = [&p](const ComplexPoint& w) -> Eigen::VectorXcd { return vector_field_unchecked(p, w).components; };
    for (int b = 0; b < n; ++b) {
      auto d = [&](cplx dir) -> Eigen::VectorXcd {
        return (-V(z.shifted(b, 2.0 * h * dir)) + 8.0 * V(z.shifted(b, h * dir)) - 8.0 * V(z.shifted(b, -h * dir)) +
                V(z.shifted(b, -2.0 * h * dir))) /
               (12.0 * h);
      };
      const Eigen::VectorXcd col = 0.5 * (d(1.0) + I * d(I));
      M.col(b) = col;
    }
  }
  return mixed_tensor_norm_sq(M, frame);
}

double dbar_defect_expansion(const PotentialField& p, const ComplexPoint& z) {
  const int n = p.dim();
  const double rate = exponent_rate(p);
  const FieldData f = field_data(p, z, true);
  const Eigen::MatrixXcd H = covariant_hessian(p, f.frame);
  Eigen::VectorXcd dbar(n);
  for (int b = 0; b < n; ++b) dbar(b) = f.jet.deriv({}, {b});
  const Eigen::MatrixXcd M =
      std::exp(rate * f.phi) * (rate * f.raised * dbar.transpose() + f.frame.g_inv.transpose() * H.conjugate());
  return mixed_tensor_norm_sq(M, f.frame);
}

double dbar_defect_law(const PotentialField& p, const ComplexPoint& z) {
  const double rate = exponent_rate(p);
  const FieldData f = field_data(p, z);
  const double len = gradient_length_sq(f.jet, f.frame);
  const double q = rate * len - 1.0;
  return std::exp(2.0 * rate * f.phi) * q * q;
}

double level_set_tangency(const PotentialField& p, const ComplexPoint& z) {
  const FieldData f = field_data(p, z);
  const int n = p.dim();
  cplx a{};  // phi^a phi_a
  cplx b{};  // phi^abar phi_abar
  for (int k = 0; k < n; ++k) {
    a += f.raised(k) * f.jet.deriv({k}, {});
    b += std::conj(f.raised(k)) * f.jet.deriv({}, {k});
  }
  return std::abs(I * a - I * b);
}

ComplexPoint integrate_flow(const PotentialField& p, const ComplexPoint& z0, double t, double dt, FlowField field) {
  return integrate(p, z0, t, dt, field, [](long, double, const ComplexPoint&) {});
}

std::vector<TrajectorySample> trajectory(const PotentialField& p, const ComplexPoint& z0, double t, double dt,
                                         FlowField field, int stride) {
  if (stride < 1) throw InvalidArgument("trajectory stride must be >= 1");
  std::vector<TrajectorySample> out;
  long last = -1;
  double last_t = 0.0;
  ComplexPoint last_z = z0;
  integrate(p, z0, t, dt, field, [&](long step, double now, const ComplexPoint& z) {
    last = step;
    last_t = now;
    last_z = z;
    if (step % stride == 0) out.push_back({now, z, p(z)});
  });
  if (last % stride != 0) out.push_back({last_t, last_z, p(last_z)});
  return out;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& traj) {
  const int n = traj.empty() ? 0 : traj.front().z.dim();
  os << "t";
  for (int a = 1; a <= n; ++a) os << ",re_z" << a << ",im_z" << a;
  os << ",phi\n";
  const auto old = os.precision(17);
  for (const auto& s : traj) {
    os << s.t;
    for (int a = 0; a < n; ++a) os << ',' << s.z[a].real() << ',' << s.z[a].imag();
    os << ',' << s.phi << '\n';
  }
  os.precision(old);
}

double energy_drift(const std::vector<TrajectorySample>& traj) {
  double worst = 0.0;
  for (const auto& s : traj) worst = std::max(worst, std::abs(s.phi - traj.front().phi));
  return worst;
}

double reparametrization_defect(const PotentialField& p, const ComplexPoint& z0, double t, double dt, int checks) {
  if (checks < 1) throw InvalidArgument("need at least one reparametrization check");
  const double scale = std::exp(exponent_rate(p) * p(z0));
  double worst = 0.0;
  for (int k = 1; k <= checks; ++k) {
    const double s = t * k / checks;
    const ComplexPoint a = integrate_flow(p, z0, s, dt, FlowField::V);
    const ComplexPoint b = integrate_flow(p, z0, scale * s, dt, FlowField::W);
    for (int i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

PullbackCheck pullback_metric_check(const PotentialField& p, const ComplexPoint& z0, double t, double dt, double h) {
  const int n = p.dim();
  auto F = [&](const ComplexPoint& z) {
    const ComplexPoint w = integrate_flow(p, z, t, dt, FlowField::V);
    Eigen::VectorXcd v(n);
    for (int a = 0; a < n; ++a) v(a) = w[a];
    return v;
  };
  static constexpr double w6[] = {-1.0, 9.0, -45.0, 45.0, -9.0, 1.0};
  static constexpr int off6[] = {-3, -2, -1, 1, 2, 3};
  auto partial = [&](int b, cplx dir) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k < 6; ++k) acc += w6[k] * F(z0.shifted(b, static_cast<double>(off6[k]) * h * dir));
    return Eigen::VectorXcd(acc / (60.0 * h));
  };
  Eigen::MatrixXcd J(n, n);     // dF^a / dz^b
  Eigen::MatrixXcd Jbar(n, n);  // dF^a / dzbar^b
  for (int b = 0; b < n; ++b) {
    const Eigen::VectorXcd dx = partial(b, 1.0);
    const Eigen::VectorXcd dy = partial(b, I);
    J.col(b) = 0.5 * (dx - I * dy);
    Jbar.col(b) = 0.5 * (dx + I * dy);
  }
  PullbackCheck out;
  out.image = integrate_flow(p, z0, t, dt, FlowField::V);
  const MetricFrame at_image = metric_from_potential(p, out.image, false);
  const MetricFrame at_start = metric_from_potential(p, z0, false);
  // (F^* g)_{a bbar} = J(c, a) g_{c dbar}(F z0) conj(J(d, b))
  const Eigen::MatrixXcd pulled = J.transpose() * at_image.g * J.conjugate();
  out.metric_defect = (pulled - at_start.g).cwiseAbs().maxCoeff();
  out.antiholomorphic_part = Jbar.cwiseAbs().maxCoeff();
  return out;
}

}  // namespace kelab
