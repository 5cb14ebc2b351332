#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kelab {

using cplx = std::complex<double>;

/// A point z = (z^1, ..., z^n) of C^n with finite coordinates.
class ComplexPoint {
 public:
  ComplexPoint() = default;
  explicit ComplexPoint(std::vector<cplx> coords);
  ComplexPoint(std::initializer_list<cplx> coords);

  static ComplexPoint zero(int n);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  std::span<const cplx> coords() const noexcept { return coords_; }
  const cplx& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  double norm_sq() const noexcept;
  std::vector<cplx> conjugate() const;

  ComplexPoint shifted(int index, cplx delta) const;

  std::string to_string() const;

  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;

 private:
  std::vector<cplx> coords_;
};

}  // namespace kelab
