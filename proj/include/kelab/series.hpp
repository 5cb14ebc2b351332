#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kelab/point.hpp"

namespace kelab {

/// Graded enumeration of monomials in 2n Wirtinger variables
/// (z^1..z^n followed by zbar^1..zbar^n) up to a total degree.
///
/// Monomials are sorted by degree first, so the layout of a lower order is a
/// prefix of every higher-order layout with the same dimension. Layouts are
/// immutable and shared through a process-wide cache.
class MonomialLayout {
 public:
  struct Product {
    int lhs;
    int rhs;
    int out;
  };

  static std::shared_ptr<const MonomialLayout> get(int n, int order);

  int dim() const noexcept { return n_; }
  int num_vars() const noexcept { return 2 * n_; }
  int order() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(degree_.size()); }
  /// Number of monomials of degree <= d.
  int size_upto(int d) const { return upto_[static_cast<std::size_t>(d)]; }

  std::span<const std::uint8_t> exponents(int idx) const {
    return {exps_.data() + static_cast<std::size_t>(idx) * num_vars(),
            static_cast<std::size_t>(num_vars())};
  }
  int degree(int idx) const { return degree_[static_cast<std::size_t>(idx)]; }

  /// Index of the monomial with the given exponents, or -1 if its degree exceeds order().
  int find(std::span<const std::uint8_t> exps) const;
  /// Index of (monomial idx) / x_var, or -1 if x_var does not divide it.
  int lower(int idx, int var) const {
    return lower_[static_cast<std::size_t>(idx) * num_vars() + var];
  }
  /// Product of a*b is c for every listed triple; pairs whose degree overflows are absent.
  const std::vector<Product>& products() const noexcept { return products_; }
  /// Product of the exponent factorials of a monomial.
  double factorial_weight(int idx) const { return fact_[static_cast<std::size_t>(idx)]; }

 private:
  MonomialLayout(int n, int order);

  int n_;
  int order_;
  std::vector<std::uint8_t> exps_;
  std::vector<int> degree_;
  std::vector<int> upto_;
  std::vector<int> lower_;
  std::vector<double> fact_;
  std::vector<Product> products_;
  std::unordered_map<std::string, int> index_;
};

using LayoutPtr = std::shared_ptr<const MonomialLayout>;

/// Truncated multivariate Taylor polynomial in independent Wirtinger variables
/// dz^alpha = z^alpha - z0^alpha and dzbar^alpha = zbar^alpha - conj(z0^alpha).
///
/// Arithmetic is exact up to the truncation order, so derivative coefficients
/// of any expression built from these operations are closed-form values.
class Series {
 public:
  Series() = default;
  Series(LayoutPtr layout, cplx constant);

  /// base + d(var); var < n selects z^var, var >= n selects zbar^(var-n).
  static Series variable(LayoutPtr layout, int var, cplx base);
  /// The 2n variables of a point: z^1..z^n, then zbar^1..zbar^n.
  static std::vector<Series> variables(const ComplexPoint& z, int order);

  const LayoutPtr& layout() const noexcept { return layout_; }
  int order() const noexcept { return layout_->order(); }
  cplx constant() const { return coeffs_.front(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx coeff(int idx) const { return coeffs_[static_cast<std::size_t>(idx)]; }
  cplx& coeff(int idx) { return coeffs_[static_cast<std::size_t>(idx)]; }

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator/=(const Series& o);
  Series& operator+=(cplx c);
  Series& operator-=(cplx c);
  Series& operator*=(cplx c);
  Series& operator/=(cplx c);
  Series operator-() const;

  /// Partial derivative in one variable; the result has order() - 1.
  Series diff(int var) const;
  Series truncated(int order) const;
  /// Re-express in a larger variable set: small var i becomes target var map[i].
  Series embedded(LayoutPtr target, std::span<const int> var_map) const;

  /// f(u) from the derivatives f^(k)(u0), k = 0..order, of a univariate f at u0 = constant().
  Series compose(std::span<const cplx> derivs) const;

 private:
  LayoutPtr layout_;
  std::vector<cplx> coeffs_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator/(const Series& a, const Series& b);
Series operator+(Series a, cplx c);
Series operator+(cplx c, Series a);
Series operator-(Series a, cplx c);
Series operator-(cplx c, const Series& a);
Series operator*(Series a, cplx c);
Series operator*(cplx c, Series a);
Series operator/(Series a, cplx c);
Series operator/(cplx c, const Series& a);

Series log(const Series& s);
Series exp(const Series& s);
Series sqrt(const Series& s);
Series pow(const Series& s, double p);
Series reciprocal(const Series& s);

// Helpers that let formulas be written once for cplx and for Series.

inline cplx constant_like(const cplx&, cplx c) { return c; }
inline Series constant_like(const Series& ref, cplx c) { return Series(ref.layout(), c); }
inline cplx base_value(const cplx& x) { return x; }
inline cplx base_value(const Series& x) { return x.constant(); }

/// Determinant by Gaussian elimination, pivoting on the base value.
template <class T>
T determinant(std::vector<T> a, int n) {
  T det = constant_like(a[0], cplx{1.0});
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(base_value(a[static_cast<std::size_t>(col * n + col)]));
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(base_value(a[static_cast<std::size_t>(r * n + col)]));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return constant_like(a[0], cplx{});
    if (piv != col) {
      for (int c = 0; c < n; ++c)
        std::swap(a[static_cast<std::size_t>(col * n + c)], a[static_cast<std::size_t>(piv * n + c)]);
      det = -det;
    }
    const T pivot = a[static_cast<std::size_t>(col * n + col)];
    det *= pivot;
    for (int r = col + 1; r < n; ++r) {
      const T factor = a[static_cast<std::size_t>(r * n + col)] / pivot;
      for (int c = col + 1; c < n; ++c)
        a[static_cast<std::size_t>(r * n + c)] -= factor * a[static_cast<std::size_t>(col * n + c)];
    }
  }
  return det;
}

/// Inverse of a row-major n x n matrix of series by Gauss-Jordan elimination.
std::vector<Series> inverse(std::vector<Series> a, int n);

}  // namespace kelab
