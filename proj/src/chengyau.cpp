#include "kelab/chengyau.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "kelab/errors.hpp"
#include "kelab/series.hpp"

namespace kelab {

namespace {

constexpr double kStart = 1e-3;        // series hand-off point
constexpr double kBlowUp = 1e8;        // phi' threshold that counts as blow-up
constexpr double kHorizon = 2.0;       // no blow-up before this means t* > 1
constexpr int kSeriesTerms = 16;

using State = std::array<double, 3>;  // phi, psi = phi', chi = phi''

State rhs(int n, double K, double t, const State& y) {
  const double psi = y[1];
  const double chi = y[2];
  const double dchi = ((K * psi - (n - 1) * chi / psi) * (psi + t * chi) - 2.0 * chi) / t;
  return {psi, chi, dchi};
}

State rk4(int n, double K, double t, const State& y, double h) {
  auto add = [](const State& a, const State& b, double s) {
    return State{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  const State k1 = rhs(n, K, t, y);
  const State k2 = rhs(n, K, t + 0.5 * h, add(y, k1, 0.5 * h));
  const State k3 = rhs(n, K, t + 0.5 * h, add(y, k2, 0.5 * h));
  const State k4 = rhs(n, K, t + h, add(y, k3, h));
  State out;
  for (int i = 0; i < 3; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

double step_size(double t, const State& y) {
  double h = std::min(1e-3, 0.1 * t);
  if (y[2] > 0.0) h = std::min(h, 0.01 * y[1] / y[2]);
  return h;
}

// Integrates from (t, y) to t_end exactly.
State integrate_to(int n, double K, double t, State y, double t_end) {
  while (t < t_end) {
    const double h = std::min(step_size(t, y), t_end - t);
    y = rk4(n, K, t, y, h);
    t = (t_end - t <= h) ? t_end : t + h;
  }
  return y;
}

// Taylor coefficients a_k of psi at t = 0 from psi^{n-1} (t psi)' = e^{K phi}, psi(0) = e^{K phi0 / n}.
std::vector<double> psi_series(int n, double K, double phi0) {
  const int N = kSeriesTerms;
  std::vector<double> a(N + 1, 0.0);
  a[0] = std::exp(K * phi0 / n);
  auto mul = [N](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(N + 1, 0.0);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j <= N; ++j) z[i + j] += x[i] * y[j];
    return z;
  };
  const double lead = std::pow(a[0], n - 1);
  for (int k = 1; k <= N; ++k) {
    a[k] = 0.0;
    std::vector<double> P(N + 1, 0.0);
    P[0] = 1.0;
    for (int i = 0; i < n - 1; ++i) P = mul(P, a);
    std::vector<double> Q(N + 1, 0.0);
    for (int j = 0; j <= N; ++j) Q[j] = (j + 1) * a[j];
    const double L = mul(P, Q)[k];
    std::vector<double> f(N + 1, 0.0);
    f[0] = phi0;
    for (int j = 1; j <= N; ++j) f[j] = a[j - 1] / j;
    std::vector<double> e(N + 1, 0.0);
    e[0] = std::exp(K * phi0);
    for (int m = 1; m <= k; ++m) {
      double s = 0.0;
      for (int j = 1; j <= m; ++j) s += j * f[j] * e[m - j];
      e[m] = K * s / m;
    }
    a[k] = (e[k] - L) / (lead * (k + n));
  }
  return a;
}

RadialState eval_series(const std::vector<double>& a, double phi0, double t) {
  double phi = phi0, psi = 0.0, chi = 0.0, tk = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    psi += a[k] * tk;
    if (k + 1 < a.size()) chi += (k + 1) * a[k + 1] * tk;
    phi += a[k] * tk * t / (k + 1);
    tk *= t;
  }
  return {phi, psi, chi};
}

// Blow-up location of phi' for the trial phi(0); +inf when none before kHorizon.
double blow_up_point(int n, double K, double phi0) {
  const auto a = psi_series(n, K, phi0);
  const RadialState s = eval_series(a, phi0, kStart);
  State y{s.phi, s.dphi, s.ddphi};
  double t = kStart;
  if (!(std::isfinite(y[1]) && std::isfinite(y[2])) || y[1] <= 0.0 || y[1] > kBlowUp) return t;
  while (t < kHorizon) {
    const double h = step_size(t, y);
    y = rk4(n, K, t, y, h);
    t += h;
    if (!(std::isfinite(y[1]) && std::isfinite(y[2])) || y[1] <= 0.0) return t;
    if (y[1] > kBlowUp) return t + y[1] / y[2];
  }
  return std::numeric_limits<double>::infinity();
}

void validate(int n, double K) {
  if (n < 1) throw InvalidArgument("radial solver needs n >= 1");
  if (!(K > 0.0) || !std::isfinite(K)) throw InvalidArgument("Ricci constant K must be positive");
}

double hermite(double t0, double t1, double y0, double d0, double y1, double d1, double t, int deriv) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  if (deriv == 0) {
    const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
  }
  if (deriv == 1) {
    const double h00 = 6 * s * s - 6 * s, h10 = 3 * s * s - 4 * s + 1;
    const double h01 = -6 * s * s + 6 * s, h11 = 3 * s * s - 2 * s;
    return (h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1) / h;
  }
  const double h00 = 12 * s - 6, h10 = 6 * s - 4, h01 = -12 * s + 6, h11 = 6 * s - 2;
  return (h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1) / (h * h);
}

}  // namespace

std::vector<double> RadialPotential::default_grid() {
  std::vector<double> g{0.0};
  for (int k = 1; k <= 900; ++k) g.push_back(k * 1e-3);
  for (int j = 1; j <= 200; ++j) g.push_back(1.0 - std::pow(10.0, -1.0 - j / 100.0));
  return g;
}

RadialPotential RadialPotential::from_closed_form(int n, double K) {
  validate(n, K);
  RadialPotential rp(n, K);
  const double A = (n + 1.0) / K;
  const double c = n / K * std::log(A);
  rp.exact_ = [A, c](double t) {
    const double s = 1.0 - t;
    return RadialState{-A * std::log(s) + c, A / s, A / (s * s)};
  };
  rp.grid_ = default_grid();
  for (double t : rp.grid_) rp.states_.push_back(rp.exact_(t));
  return rp;
}

RadialPotential RadialPotential::from_samples(int n, double K, std::vector<double> grid,
                                              std::vector<RadialState> states) {
  validate(n, K);
  if (grid.size() < 2 || grid.size() != states.size()) throw InvalidArgument("grid and states must match, size >= 2");
  if (grid.front() < 0.0 || grid.back() >= 1.0) throw InvalidArgument("radial grid must lie in [0, 1)");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidArgument("radial grid must be strictly increasing");
  RadialPotential rp(n, K);
  rp.grid_ = std::move(grid);
  rp.states_ = std::move(states);
  return rp;
}

RadialState RadialPotential::at(double t) const {
  if (!(t >= grid_.front() && t <= grid_.back()))
    throw ResolutionError("t = " + std::to_string(t) + " is outside the solved range [" +
                          std::to_string(grid_.front()) + ", " + std::to_string(grid_.back()) + "]");
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  if (grid_[i] == t) return states_[i];
  if (exact_) return exact_(t);
  if (ode_) {
    if (t <= kStart) return eval_series(series_, states_.front().phi, t);
    const RadialState& s = states_[i];
    const State y = integrate_to(n_, K_, grid_[i], {s.phi, s.dphi, s.ddphi}, t);
    return {y[0], y[1], y[2]};
  }
  const RadialState& a = states_[i];
  const RadialState& b = states_[i + 1];
  const double t0 = grid_[i], t1 = grid_[i + 1];
  return {hermite(t0, t1, a.phi, a.dphi, b.phi, b.dphi, t, 0), hermite(t0, t1, a.dphi, a.ddphi, b.dphi, b.ddphi, t, 0),
          hermite(t0, t1, a.dphi, a.ddphi, b.dphi, b.ddphi, t, 1)};
}

double radial_ode_residual(const RadialPotential& rp, double t) {
  const RadialState s = rp.at(t);
  const double m = s.dphi + t * s.ddphi;
  if (!(s.dphi > 0.0) || !(m > 0.0))
    throw DegenerateMetricError("radial metric is degenerate at t = " + std::to_string(t) +
                                " (phi' = " + std::to_string(s.dphi) + ", phi' + t phi'' = " + std::to_string(m) + ")");
  return (rp.n() - 1) * std::log(s.dphi) + std::log(m) - rp.K() * s.phi;
}

double radial_gradient_length(const RadialPotential& rp, double t) {
  const RadialState s = rp.at(t);
  const double m = s.dphi + t * s.ddphi;
  if (!(s.dphi > 0.0) || !(m > 0.0))
    throw DegenerateMetricError("radial metric is degenerate at t = " + std::to_string(t));
  return t * s.dphi * s.dphi / m;
}

RadialPotential shoot(int n, double K, std::pair<double, double> bracket, double tol) {
  validate(n, K);
  if (!(tol > 0.0)) throw InvalidArgument("shooting tolerance must be positive");
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw InvalidArgument("bracket must satisfy lo < hi");
  RadialPotential rp(n, K);
  auto probe = [&](double phi0) {
    const double ts = blow_up_point(n, K, phi0);
    rp.history_.emplace_back(phi0, ts);
    return ts;
  };
  const double t_lo = probe(lo);
  const double t_hi = probe(hi);
  if (!(t_lo > 1.0 && t_hi < 1.0))
    throw BracketingError("bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] does not straddle the complete solution: blow-up at t = " + std::to_string(t_lo) +
                          " and " + std::to_string(t_hi));
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }

  // t* is decreasing in phi(0); checked on probes far enough apart to rise above integration noise.
  auto h = rp.history_;
  std::sort(h.begin(), h.end());
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      if (h[j].first - h[i].first < 1e-6) continue;
      if (std::isinf(h[i].second) && std::isinf(h[j].second)) continue;
      if (!(h[j].second < h[i].second))
        throw Error("blow-up point is not monotone in phi(0) near " + std::to_string(h[i].first));
    }

  const double phi0 = 0.5 * (lo + hi);
  rp.series_ = psi_series(n, K, phi0);
  rp.ode_ = true;
  rp.grid_ = RadialPotential::default_grid();
  rp.states_.reserve(rp.grid_.size());
  rp.states_.push_back(eval_series(rp.series_, phi0, 0.0));
  RadialState s = eval_series(rp.series_, phi0, kStart);
  State y{s.phi, s.dphi, s.ddphi};
  double t = kStart;
  for (std::size_t i = 1; i < rp.grid_.size(); ++i) {
    const double target = rp.grid_[i];
    if (target <= kStart) {
      rp.states_.push_back(eval_series(rp.series_, phi0, target));
      continue;
    }
    y = integrate_to(n, K, t, y, target);
    t = target;
    rp.states_.push_back({y[0], y[1], y[2]});
  }
  return rp;
}

PotentialField RadialPotential::as_potential() const {
  const RadialPotential self = *this;
  const double t_max = grid_.back();
  auto third = [self](double t) {
    if (self.exact_) {
      const double s = 1.0 - t;
      return 2.0 * (self.n_ + 1.0) / self.K_ / (s * s * s);
    }
    if (self.ode_ && t <= kStart) {
      double v = 0.0, tk = 1.0;
      for (std::size_t k = 2; k < self.series_.size(); ++k) {
        v += k * (k - 1.0) * self.series_[k] * tk;
        tk *= t;
      }
      return v;
    }
    const RadialState s = self.at(t);
    if (t > 0.0) return rhs(self.n_, self.K_, t, {s.phi, s.dphi, s.ddphi})[2];
    const auto& g = self.grid_;
    const auto& st = self.states_;
    return hermite(g[0], g[1], st[0].dphi, st[0].ddphi, st[1].dphi, st[1].ddphi, t, 2);
  };
  auto guard = [t_max](const ComplexPoint& z) {
    if (z.norm_sq() > t_max) throw MembershipError("point " + z.to_string() + " lies beyond the solved radius");
  };
  auto value = [self](const ComplexPoint& z) { return self.at(z.norm_sq()).phi; };
  auto series = [self, third](const ComplexPoint& z, int order) {
    const auto vars = Series::variables(z, order);
    const int n = z.dim();
    Series u(vars[0].layout(), cplx{});
    for (int a = 0; a < n; ++a) u += vars[static_cast<std::size_t>(a)] * vars[static_cast<std::size_t>(n + a)];
    const double t = z.norm_sq();
    const RadialState s = self.at(t);
    std::vector<cplx> d{s.phi, s.dphi, s.ddphi, third(t)};
    d.resize(static_cast<std::size_t>(order + 1));
    return u.compose(d);
  };
  return PotentialField(DomainModel::ball(n_), K_, 3, value, series,
                        "radial n=" + std::to_string(n_) + " K=" + std::to_string(K_))
      .with_guard(guard);
}

std::pair<double, double> boundary_limit_estimate(const RadialPotential& rp) {
  const auto& g = rp.grid();
  if (g.back() < 1.0 - 1e-3 - 1e-12)
    throw ResolutionError("grid ends at t = " + std::to_string(g.back()) + ", needs t >= 1 - 1e-3");
  const double s_last = 1.0 - g.back();
  std::size_t j = g.size() - 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double d = std::abs(std::log((1.0 - g[i]) / (10.0 * s_last)));
    if (d < best) {
      best = d;
      j = i;
    }
  }
  const double s_j = 1.0 - g[j];
  if (j + 1 >= g.size() || s_j / s_last < 5.0 || s_j / s_last > 20.0 || g.size() - j < 3)
    throw ResolutionError("grid too coarse near t = 1 for the boundary extrapolation");
  const double G_last = radial_gradient_length(rp, g.back());
  const double G_j = radial_gradient_length(rp, g[j]);
  const double limit = (s_j * G_last - s_last * G_j) / (s_j - s_last);
  return {limit, limit - (rp.n() + 1.0) / rp.K()};
}

void write_radial_csv(std::ostream& os, const RadialPotential& rp) {
  os << "t,phi,dphi,gradient_length\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < rp.grid().size(); ++i) {
    const double t = rp.grid()[i];
    const auto& s = rp.states()[i];
    os << t << ',' << s.phi << ',' << s.dphi << ',' << radial_gradient_length(rp, t) << '\n';
  }
  os.precision(old);
}

}  // namespace kelab
