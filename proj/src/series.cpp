#include "kelab/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "kelab/errors.hpp"

namespace kelab {

namespace {

std::string key_of(std::span<const std::uint8_t> exps) {
  return std::string(reinterpret_cast<const char*>(exps.data()), exps.size());
}

// Appends every exponent vector of total degree `remaining` over vars [var, nvars).
void enumerate_degree(int nvars, int var, int remaining, std::vector<std::uint8_t>& current,
                      std::vector<std::uint8_t>& out) {
  if (var == nvars - 1) {
    current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(remaining);
    out.insert(out.end(), current.begin(), current.end());
    current[static_cast<std::size_t>(var)] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
    enumerate_degree(nvars, var + 1, remaining - e, current, out);
  }
  current[static_cast<std::size_t>(var)] = 0;
}

struct LayoutCache {
  std::mutex mutex;
  std::map<std::pair<int, int>, std::shared_ptr<const MonomialLayout>> entries;
};

LayoutCache& layout_cache() {
  static LayoutCache cache;
  return cache;
}

std::unordered_map<std::string, int> build_index(const MonomialLayout& layout) {
  std::unordered_map<std::string, int> index;
  index.reserve(static_cast<std::size_t>(layout.size()));
  for (int i = 0; i < layout.size(); ++i) index.emplace(key_of(layout.exponents(i)), i);
  return index;
}

}  // namespace

std::shared_ptr<const MonomialLayout> MonomialLayout::get(int n, int order) {
  if (n < 1) throw InvalidArgument("monomial layout needs dimension >= 1");
  if (order < 0 || order > 12) throw UnsupportedOrderError("series order must lie in [0, 12]");
  auto& cache = layout_cache();
  std::lock_guard lock(cache.mutex);
  auto& slot = cache.entries[{n, order}];
  if (!slot) slot = std::shared_ptr<const MonomialLayout>(new MonomialLayout(n, order));
  return slot;
}

MonomialLayout::MonomialLayout(int n, int order) : n_(n), order_(order) {
  const int nv = 2 * n;
  std::vector<std::uint8_t> current(static_cast<std::size_t>(nv), 0);
  for (int d = 0; d <= order; ++d) {
    enumerate_degree(nv, 0, d, current, exps_);
    upto_.push_back(static_cast<int>(exps_.size() / static_cast<std::size_t>(nv)));
  }
  const int count = upto_.back();
  degree_.resize(static_cast<std::size_t>(count));
  fact_.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    int d = 0;
    double f = 1.0;
    for (auto e : exponents(i)) {
      d += e;
      for (int k = 2; k <= e; ++k) f *= k;
    }
    degree_[static_cast<std::size_t>(i)] = d;
    fact_[static_cast<std::size_t>(i)] = f;
  }

  index_ = build_index(*this);
  auto lookup = [&](std::span<const std::uint8_t> e) {
    auto it = index_.find(key_of(e));
    return it == index_.end() ? -1 : it->second;
  };

  lower_.assign(static_cast<std::size_t>(count) * nv, -1);
  std::vector<std::uint8_t> scratch(static_cast<std::size_t>(nv));
  for (int i = 0; i < count; ++i) {
    auto e = exponents(i);
    for (int v = 0; v < nv; ++v) {
      if (e[static_cast<std::size_t>(v)] == 0) continue;
      std::copy(e.begin(), e.end(), scratch.begin());
      --scratch[static_cast<std::size_t>(v)];
      lower_[static_cast<std::size_t>(i) * nv + v] = lookup(scratch);
    }
  }

  for (int i = 0; i < count; ++i) {
    const int room = order - degree_[static_cast<std::size_t>(i)];
    const auto ei = exponents(i);
    for (int j = 0; j < upto_[static_cast<std::size_t>(room)]; ++j) {
      const auto ej = exponents(j);
      for (int v = 0; v < nv; ++v)
        scratch[static_cast<std::size_t>(v)] =
            static_cast<std::uint8_t>(ei[static_cast<std::size_t>(v)] + ej[static_cast<std::size_t>(v)]);
      products_.push_back({i, j, lookup(scratch)});
    }
  }
}

int MonomialLayout::find(std::span<const std::uint8_t> exps) const {
  int d = 0;
  for (auto e : exps) d += e;
  if (d > order_ || static_cast<int>(exps.size()) != num_vars()) return -1;
  auto it = index_.find(key_of(exps));
  return it == index_.end() ? -1 : it->second;
}

Series::Series(LayoutPtr layout, cplx constant) : layout_(std::move(layout)) {
  coeffs_.assign(static_cast<std::size_t>(layout_->size()), cplx{});
  coeffs_[0] = constant;
}

Series Series::variable(LayoutPtr layout, int var, cplx base) {
  Series s(layout, base);
  if (layout->order() >= 1) s.coeffs_[static_cast<std::size_t>(1 + var)] = 1.0;
  return s;
}

std::vector<Series> Series::variables(const ComplexPoint& z, int order) {
  const int n = z.dim();
  auto layout = MonomialLayout::get(n, order);
  std::vector<Series> vars;
  vars.reserve(static_cast<std::size_t>(2 * n));
  for (int a = 0; a < n; ++a) vars.push_back(variable(layout, a, z[a]));
  for (int a = 0; a < n; ++a) vars.push_back(variable(layout, n + a, std::conj(z[a])));
  return vars;
}

namespace {
void require_same_layout(const Series& a, const Series& b) {
  if (a.layout() != b.layout()) throw InvalidArgument("series with different layouts combined");
}
}  // namespace

Series& Series::operator+=(const Series& o) {
  require_same_layout(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same_layout(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Series& Series::operator*=(const Series& o) {
  *this = *this * o;
  return *this;
}

Series& Series::operator/=(const Series& o) {
  *this = *this * reciprocal(o);
  return *this;
}

Series& Series::operator+=(cplx c) {
  coeffs_[0] += c;
  return *this;
}

Series& Series::operator-=(cplx c) {
  coeffs_[0] -= c;
  return *this;
}

Series& Series::operator*=(cplx c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Series& Series::operator/=(cplx c) {
  for (auto& x : coeffs_) x /= c;
  return *this;
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

Series Series::diff(int var) const {
  if (order() == 0) throw UnsupportedOrderError("cannot differentiate an order-0 series");
  const auto& L = *layout_;
  Series r(MonomialLayout::get(L.dim(), L.order() - 1), cplx{});
  for (int i = 1; i < L.size(); ++i) {
    const int lo = L.lower(i, var);
    if (lo < 0) continue;
    r.coeffs_[static_cast<std::size_t>(lo)] +=
        coeffs_[static_cast<std::size_t>(i)] * static_cast<double>(L.exponents(i)[static_cast<std::size_t>(var)]);
  }
  return r;
}

Series Series::truncated(int new_order) const {
  if (new_order > order()) throw UnsupportedOrderError("cannot raise the order of a series");
  Series r(MonomialLayout::get(layout_->dim(), new_order), cplx{});
  std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
  return r;
}

Series Series::embedded(LayoutPtr target, std::span<const int> var_map) const {
  const auto& L = *layout_;
  if (static_cast<int>(var_map.size()) != L.num_vars())
    throw InvalidArgument("variable map size mismatch in Series::embedded");
  if (target->order() != L.order()) throw InvalidArgument("embedding must preserve the order");
  Series r(target, cplx{});
  std::vector<std::uint8_t> e(static_cast<std::size_t>(target->num_vars()));
  for (int i = 0; i < L.size(); ++i) {
    if (coeffs_[static_cast<std::size_t>(i)] == cplx{}) continue;
    std::fill(e.begin(), e.end(), 0);
    auto src = L.exponents(i);
    for (int v = 0; v < L.num_vars(); ++v)
      e[static_cast<std::size_t>(var_map[static_cast<std::size_t>(v)])] += src[static_cast<std::size_t>(v)];
    r.coeffs_[static_cast<std::size_t>(target->find(e))] += coeffs_[static_cast<std::size_t>(i)];
  }
  return r;
}

Series Series::compose(std::span<const cplx> derivs) const {
  const int N = order();
  if (static_cast<int>(derivs.size()) < N + 1)
    throw InvalidArgument("compose needs derivatives up to the series order");
  Series delta = *this;
  delta.coeffs_[0] = 0.0;
  std::vector<double> inv_fact(static_cast<std::size_t>(N + 1), 1.0);
  for (int k = 1; k <= N; ++k) inv_fact[static_cast<std::size_t>(k)] = inv_fact[static_cast<std::size_t>(k - 1)] / k;
  Series r(layout_, derivs[static_cast<std::size_t>(N)] * inv_fact[static_cast<std::size_t>(N)]);
  for (int k = N - 1; k >= 0; --k) {
    r = r * delta;
    r.coeffs_[0] += derivs[static_cast<std::size_t>(k)] * inv_fact[static_cast<std::size_t>(k)];
  }
  return r;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }

Series operator*(const Series& a, const Series& b) {
  require_same_layout(a, b);
  Series r(a.layout(), cplx{});
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (const auto& p : a.layout()->products()) {
    const cplx x = ac[static_cast<std::size_t>(p.lhs)];
    if (x == cplx{}) continue;
    r.coeff(p.out) += x * bc[static_cast<std::size_t>(p.rhs)];
  }
  return r;
}

Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }
Series operator+(Series a, cplx c) { return a += c; }
Series operator+(cplx c, Series a) { return a += c; }
Series operator-(Series a, cplx c) { return a -= c; }
Series operator-(cplx c, const Series& a) { return (-a) += c; }
Series operator*(Series a, cplx c) { return a *= c; }
Series operator*(cplx c, Series a) { return a *= c; }
Series operator/(Series a, cplx c) { return a /= c; }
Series operator/(cplx c, const Series& a) { return reciprocal(a) *= c; }

Series log(const Series& s) {
  const cplx u0 = s.constant();
  if (u0 == cplx{}) throw EvaluationError("log of a series with zero constant term");
  std::vector<cplx> d(static_cast<std::size_t>(s.order() + 1));
  d[0] = std::log(u0);
  cplx p = 1.0 / u0;  // (k-1)! (-1)^(k-1) / u0^k
  for (int k = 1; k <= s.order(); ++k) {
    d[static_cast<std::size_t>(k)] = p;
    p *= -static_cast<double>(k) / u0;
  }
  return s.compose(d);
}

Series exp(const Series& s) {
  std::vector<cplx> d(static_cast<std::size_t>(s.order() + 1), std::exp(s.constant()));
  return s.compose(d);
}

Series pow(const Series& s, double p) {
  const cplx u0 = s.constant();
  if (u0 == cplx{}) throw EvaluationError("power of a series with zero constant term");
  std::vector<cplx> d(static_cast<std::size_t>(s.order() + 1));
  cplx coef = 1.0;
  for (int k = 0; k <= s.order(); ++k) {
    d[static_cast<std::size_t>(k)] = coef * std::pow(u0, p - k);
    coef *= (p - k);
  }
  return s.compose(d);
}

Series sqrt(const Series& s) { return pow(s, 0.5); }

Series reciprocal(const Series& s) {
  const cplx u0 = s.constant();
  if (u0 == cplx{}) throw EvaluationError("reciprocal of a series with zero constant term");
  std::vector<cplx> d(static_cast<std::size_t>(s.order() + 1));
  cplx p = 1.0 / u0;
  for (int k = 0; k <= s.order(); ++k) {
    d[static_cast<std::size_t>(k)] = p;
    p *= -static_cast<double>(k + 1) / u0;
  }
  return s.compose(d);
}

std::vector<Series> inverse(std::vector<Series> a, int n) {
  if (n == 0) return {};
  auto at = [n](std::vector<Series>& m, int r, int c) -> Series& {
    return m[static_cast<std::size_t>(r * n + c)];
  };
  std::vector<Series> inv;
  inv.reserve(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.emplace_back(a[0].layout(), r == c ? cplx{1.0} : cplx{});

  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(at(a, col, col).constant());
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(at(a, r, col).constant());
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw DegenerateMetricError("singular matrix in series inverse");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(at(a, col, c), at(a, piv, c));
        std::swap(at(inv, col, c), at(inv, piv, c));
      }
    }
    const Series pinv = reciprocal(at(a, col, col));
    for (int c = 0; c < n; ++c) {
      at(a, col, c) = at(a, col, c) * pinv;
      at(inv, col, c) = at(inv, col, c) * pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Series f = at(a, r, col);
      for (int c = 0; c < n; ++c) {
        at(a, r, c) -= f * at(a, col, c);
        at(inv, r, c) -= f * at(inv, col, c);
      }
    }
  }
  return inv;
}

}  // namespace kelab
