#include "kelab/jets.hpp"

#include <cmath>
#include <map>
#include <string>

#include "kelab/errors.hpp"
#include "kelab/field.hpp"

namespace kelab {

Jet::Jet(LayoutPtr layout) : layout_(std::move(layout)) {
  derivs_.assign(static_cast<std::size_t>(layout_->size()), cplx{});
}

Jet Jet::from_series(const Series& s) {
  Jet j(s.layout());
  for (int i = 0; i < s.layout()->size(); ++i)
    j.derivs_[static_cast<std::size_t>(i)] = s.coeff(i) * s.layout()->factorial_weight(i);
  return j;
}

cplx Jet::deriv(std::span<const int> holo, std::span<const int> antiholo) const {
  const int n = dim();
  std::vector<std::uint8_t> e(static_cast<std::size_t>(2 * n), 0);
  for (int a : holo) {
    if (a < 0 || a >= n) throw InvalidArgument("jet index out of range");
    ++e[static_cast<std::size_t>(a)];
  }
  for (int b : antiholo) {
    if (b < 0 || b >= n) throw InvalidArgument("jet index out of range");
    ++e[static_cast<std::size_t>(n + b)];
  }
  const int idx = layout_->find(e);
  if (idx < 0) throw UnsupportedOrderError("derivative order exceeds the jet order");
  return derivs_[static_cast<std::size_t>(idx)];
}

void Jet::symmetrize() {
  const int n = dim();
  std::vector<std::uint8_t> swapped(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < layout_->size(); ++i) {
    auto e = layout_->exponents(i);
    for (int a = 0; a < n; ++a) {
      swapped[static_cast<std::size_t>(a)] = e[static_cast<std::size_t>(n + a)];
      swapped[static_cast<std::size_t>(n + a)] = e[static_cast<std::size_t>(a)];
    }
    const int j = layout_->find(swapped);
    if (j < i) continue;
    auto& x = derivs_[static_cast<std::size_t>(i)];
    auto& y = derivs_[static_cast<std::size_t>(j)];
    if (j == i) {
      x = cplx(x.real(), 0.0);
    } else {
      const cplx avg = (x + std::conj(y)) * 0.5;
      x = avg;
      y = std::conj(avg);
    }
  }
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.layout_ != layout_) throw InvalidArgument("jets with different layouts combined");
  for (std::size_t i = 0; i < derivs_.size(); ++i) derivs_[i] += o.derivs_[i];
  return *this;
}

Jet& Jet::operator*=(double c) {
  for (auto& d : derivs_) d *= c;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator*(double c, Jet a) { return a *= c; }

double default_fd_step(int order) { return order <= 2 ? 1e-4 : 1e-2; }

namespace {

using RealIndex = std::vector<std::uint8_t>;  // multiplicities over x_0..x_{n-1}, y_0..y_{n-1}

struct Stencil1D {
  std::vector<int> offsets;
  std::vector<double> weights;
};

// Second-order accurate central stencils for d^m/dx^m (unit step).
const Stencil1D& central_stencil(int m) {
  static const Stencil1D stencils[5] = {
      {{0}, {1.0}},
      {{-1, 1}, {-0.5, 0.5}},
      {{-1, 0, 1}, {1.0, -2.0, 1.0}},
      {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
      {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}},
  };
  return stencils[m];
}

class RealPartials {
 public:
  RealPartials(const ScalarFunction& f, const ComplexPoint& z) : f_(f), z_(z) {}

  double partial(const RealIndex& idx, double h) {
    auto key = std::make_pair(idx, h);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double v = compute(idx, h);
    cache_.emplace(std::move(key), v);
    return v;
  }

 private:
  double eval(const std::vector<cplx>& coords) {
    auto it = values_.find(coords);
    if (it != values_.end()) return it->second;
    const ComplexPoint pt{std::vector<cplx>(coords)};
    const double v = f_(pt);
    if (!std::isfinite(v))
      throw EvaluationError("non-finite function value at stencil point " + pt.to_string());
    values_.emplace(coords, v);
    return v;
  }

  double compute(const RealIndex& idx, double h) {
    const int n = z_.dim();
    std::vector<int> dirs;
    int total = 0;
    for (int d = 0; d < 2 * n; ++d) {
      if (idx[static_cast<std::size_t>(d)] > 0) dirs.push_back(d);
      total += idx[static_cast<std::size_t>(d)];
    }
    std::vector<std::size_t> pos(dirs.size(), 0);
    double acc = 0.0;
    const std::vector<cplx> base(z_.coords().begin(), z_.coords().end());
    while (true) {
      std::vector<cplx> coords = base;
      double w = 1.0;
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        const auto& st = central_stencil(idx[static_cast<std::size_t>(dirs[k])]);
        const int d = dirs[k];
        const double off = st.offsets[pos[k]] * h;
        w *= st.weights[pos[k]];
        if (d < n)
          coords[static_cast<std::size_t>(d)] += cplx(off, 0.0);
        else
          coords[static_cast<std::size_t>(d - n)] += cplx(0.0, off);
      }
      acc += w * eval(coords);
      std::size_t k = 0;
      for (; k < dirs.size(); ++k) {
        const auto& st = central_stencil(idx[static_cast<std::size_t>(dirs[k])]);
        if (++pos[k] < st.offsets.size()) break;
        pos[k] = 0;
      }
      if (k == dirs.size()) break;
    }
    return acc / std::pow(h, total);
  }

  struct ComplexVecLess {
    bool operator()(const std::vector<cplx>& a, const std::vector<cplx>& b) const {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
      }
      return false;
    }
  };

  const ScalarFunction& f_;
  const ComplexPoint& z_;
  std::map<std::pair<RealIndex, double>, double> cache_;
  std::map<std::vector<cplx>, double, ComplexVecLess> values_;
};

// Expands prod (d_x -+ i d_y)/2 for a Wirtinger monomial into real partials.
std::map<RealIndex, cplx> expand_wirtinger(std::span<const std::uint8_t> exps, int n) {
  std::map<RealIndex, cplx> terms{{RealIndex(static_cast<std::size_t>(2 * n), 0), cplx{1.0}}};
  for (int v = 0; v < 2 * n; ++v) {
    const bool holo = v < n;
    const int coord = holo ? v : v - n;
    const cplx y_weight = holo ? cplx(0.0, -0.5) : cplx(0.0, 0.5);
    for (int rep = 0; rep < exps[static_cast<std::size_t>(v)]; ++rep) {
      std::map<RealIndex, cplx> next;
      for (const auto& [idx, c] : terms) {
        RealIndex ix = idx;
        ++ix[static_cast<std::size_t>(coord)];
        next[ix] += c * 0.5;
        RealIndex iy = idx;
        ++iy[static_cast<std::size_t>(n + coord)];
        next[iy] += c * y_weight;
      }
      terms = std::move(next);
    }
  }
  return terms;
}

}  // namespace

Jet fd_jet(const ScalarFunction& f, const ComplexPoint& z, int order, std::optional<double> step) {
  if (order < 1 || order > 4) throw InvalidArgument("fd_jet order must lie in [1, 4]");
  const double h = step.value_or(default_fd_step(order));
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("fd_jet step must be positive");

  const int n = z.dim();
  Jet jet(MonomialLayout::get(n, order));
  RealPartials partials(f, z);
  const auto& layout = *jet.layout();

  {
    const double v = f(z);
    if (!std::isfinite(v)) throw EvaluationError("non-finite function value at " + z.to_string());
    jet.entry(0) = v;
  }
  for (int i = 1; i < layout.size(); ++i) {
    cplx acc{};
    for (const auto& [idx, c] : expand_wirtinger(layout.exponents(i), n)) {
      const double coarse = partials.partial(idx, h);
      const double fine = partials.partial(idx, 0.5 * h);
      acc += c * ((4.0 * fine - coarse) / 3.0);
    }
    jet.entry(i) = acc;
  }
  return jet;
}

Jet analytic_jet(const PotentialField& p, const ComplexPoint& z, int order) {
  if (order < 0 || order > 4) throw InvalidArgument("analytic_jet order must lie in [0, 4]");
  if (order > p.analytic_order())
    throw UnsupportedOrderError("potential '" + p.label() + "' implements closed-form derivatives up to order " +
                                std::to_string(p.analytic_order()) + ", requested " + std::to_string(order));
  Jet jet = Jet::from_series(p.series(z, order));
  jet.symmetrize();
  return jet;
}

Jet best_jet(const PotentialField& p, const ComplexPoint& z, int order) {
  if (order <= p.analytic_order()) return analytic_jet(p, z, order);
  return fd_jet(p.as_function(), z, order);
}

}  // namespace kelab
