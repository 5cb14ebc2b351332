#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kelab/errors.hpp"
#include "kelab/jets.hpp"
#include "kelab/series.hpp"

using namespace kelab;

namespace {

// f = |z1|^2 |z2|^2 + Re(z1^3), written for cplx and Series alike.
template <class T>
T sample_f(const T& z1, const T& z2, const T& w1, const T& w2) {
  return z1 * w1 * z2 * w2 + (z1 * z1 * z1 + w1 * w1 * w1) * cplx{0.5};
}

double sample_value(const ComplexPoint& z) {
  const cplx a = z[0], b = z[1];
  return sample_f(a, b, std::conj(a), std::conj(b)).real();
}

}  // namespace

TEST_CASE("layout is graded and lower orders are prefixes") {
  auto l2 = MonomialLayout::get(2, 2);
  auto l4 = MonomialLayout::get(2, 4);
  CHECK(l2->size() == 15);  // C(4+2, 2)
  CHECK(l4->size() == 70);
  CHECK(l4->size_upto(2) == l2->size());
  for (int i = 0; i < l2->size(); ++i) {
    CHECK(l2->degree(i) == l4->degree(i));
    auto a = l2->exponents(i);
    auto b = l4->exponents(i);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
  CHECK(MonomialLayout::get(2, 4) == l4);
}

TEST_CASE("series arithmetic reproduces hand derivatives") {
  const ComplexPoint z{{0.3, -0.2}, {-0.1, 0.25}};
  const auto v = Series::variables(z, 4);
  const Jet j = Jet::from_series(sample_f(v[0], v[1], v[2], v[3]));
  const cplx a = z[0], b = z[1];
  CHECK(std::abs(j.value() - sample_value(z)) < 1e-15);
  CHECK(std::abs(j.deriv({0}, {}) - (std::conj(a) * b * std::conj(b) + 1.5 * a * a)) < 1e-15);
  CHECK(std::abs(j.deriv({0}, {0}) - b * std::conj(b)) < 1e-15);
  CHECK(std::abs(j.deriv({0, 0}, {}) - 3.0 * a) < 1e-15);
  CHECK(std::abs(j.deriv({0}, {1}) - std::conj(a) * b) < 1e-15);
  CHECK(std::abs(j.deriv({0, 0, 0}, {}) - 3.0) < 1e-14);
  CHECK(std::abs(j.deriv({0, 1}, {0, 1}) - 1.0) < 1e-14);
  CHECK(std::abs(j.deriv({1, 0}, {1, 0}) - 1.0) < 1e-14);
  CHECK(std::abs(j.deriv({0, 0}, {0})) < 1e-15);
}

TEST_CASE("transcendental series satisfy their identities") {
  const ComplexPoint z{{0.2, 0.1}, {-0.3, 0.05}};
  const auto v = Series::variables(z, 5);
  const Series s = 1.0 + v[0] * v[2] + cplx{0.5} * v[1] * v[3] + v[0] * v[0] * cplx{0.1};
  const auto diff = [](const Series& a, const Series& b) {
    double m = 0.0;
    for (int i = 0; i < a.layout()->size(); ++i) m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
    return m;
  };
  CHECK(diff(log(exp(s)), s) < 1e-13);
  CHECK(diff(exp(log(s)), s) < 1e-13);
  CHECK(diff(sqrt(s) * sqrt(s), s) < 1e-13);
  CHECK(diff(pow(s, 3.0), s * s * s) < 1e-13);
  CHECK(diff(reciprocal(s) * s, Series(s.layout(), 1.0)) < 1e-13);
  CHECK(diff(s / s, Series(s.layout(), 1.0)) < 1e-13);
  // compose with the derivatives of exp at the base value is exp
  std::vector<cplx> d(6, std::exp(s.constant()));
  CHECK(diff(s.compose(d), exp(s)) < 1e-13);
}

TEST_CASE("series inverse and determinant agree on a 2x2 block") {
  const ComplexPoint z{{0.1, 0.2}};
  const auto v = Series::variables(z, 3);
  std::vector<Series> m{2.0 + v[0] * v[1], v[0], v[1], 3.0 + v[0] * v[0]};
  const Series det = determinant(m, 2);
  const Series expect = m[0] * m[3] - m[1] * m[2];
  for (int i = 0; i < det.layout()->size(); ++i) CHECK(std::abs(det.coeff(i) - expect.coeff(i)) < 1e-14);
  const auto inv = inverse(m, 2);
  const Series e00 = m[0] * inv[0] + m[1] * inv[2];
  const Series e01 = m[0] * inv[1] + m[1] * inv[3];
  CHECK(std::abs(e00.coeff(0) - 1.0) < 1e-14);
  for (int i = 1; i < e00.layout()->size(); ++i) CHECK(std::abs(e00.coeff(i)) < 1e-13);
  for (int i = 0; i < e01.layout()->size(); ++i) CHECK(std::abs(e01.coeff(i)) < 1e-13);
}

TEST_CASE("finite-difference jet matches the closed form") {
  const ComplexPoint z{{0.3, -0.2}, {-0.1, 0.25}};
  const auto v = Series::variables(z, 4);
  const Jet exact = Jet::from_series(sample_f(v[0], v[1], v[2], v[3]));
  const Jet fd2 = fd_jet(sample_value, z, 2);
  const Jet fd4 = fd_jet(sample_value, z, 4);
  for (int i = 0; i < fd2.layout()->size(); ++i) CHECK(std::abs(fd2.entry(i) - exact.entry(i)) < 1e-7);
  for (int i = 0; i < fd4.layout()->size(); ++i) CHECK(std::abs(fd4.entry(i) - exact.entry(i)) < 1e-4);
}

TEST_CASE("real functions give conjugate-symmetric jets") {
  const ComplexPoint z{{0.1, 0.3}, {0.2, -0.4}};
  Jet j = fd_jet(sample_value, z, 2);
  j.symmetrize();
  CHECK(std::abs(j.deriv({0}, {1}) - std::conj(j.deriv({1}, {0}))) < 1e-15);
  CHECK(std::abs(j.deriv({0}, {0}).imag()) < 1e-15);
}

TEST_CASE("non-finite values are reported") {
  const ScalarFunction bad = [](const ComplexPoint& z) { return std::log(z[0].real()); };
  CHECK_THROWS_AS(fd_jet(bad, ComplexPoint{{0.0, 0.0}}, 2), EvaluationError);
}

TEST_CASE("jet requests outside the supported range") {
  const ComplexPoint z{{0.1, 0.0}, {0.0, 0.2}};
  const Jet j = fd_jet(sample_value, z, 2);
  CHECK_THROWS_AS(j.deriv({0, 0, 0}, {}), UnsupportedOrderError);
  CHECK_THROWS_AS(j.deriv({2}, {}), InvalidArgument);
  CHECK_THROWS_AS(fd_jet(sample_value, z, 5), InvalidArgument);
  CHECK_THROWS_AS(fd_jet(sample_value, z, 2, -1e-3), InvalidArgument);
}
