#include "kelab/point.hpp"

#include <cmath>
#include <sstream>

#include "kelab/errors.hpp"

namespace kelab {

ComplexPoint::ComplexPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("ComplexPoint needs at least one coordinate");
  for (const auto& c : coords_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidArgument("ComplexPoint coordinates must be finite: " + to_string());
  }
}

ComplexPoint::ComplexPoint(std::initializer_list<cplx> coords)
    : ComplexPoint(std::vector<cplx>(coords)) {}

ComplexPoint ComplexPoint::zero(int n) {
  return ComplexPoint(std::vector<cplx>(static_cast<std::size_t>(n), cplx{}));
}

double ComplexPoint::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& c : coords_) s += std::norm(c);
  return s;
}

std::vector<cplx> ComplexPoint::conjugate() const {
  std::vector<cplx> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = std::conj(coords_[i]);
  return out;
}

ComplexPoint ComplexPoint::shifted(int index, cplx delta) const {
  auto c = coords_;
  c[static_cast<std::size_t>(index)] += delta;
  return ComplexPoint(std::move(c));
}

std::string ComplexPoint::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i].real() << (coords_[i].imag() < 0 ? "-" : "+")
       << std::abs(coords_[i].imag()) << 'i';
  }
  os << ')';
  return os.str();
}

}  // namespace kelab
