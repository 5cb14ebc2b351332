#pragma once

// Generic-norm formulas written once for cplx and Series arguments.

#include <cmath>
#include <span>
#include <vector>

#include "kelab/domain.hpp"
#include "kelab/errors.hpp"
#include "kelab/series.hpp"

namespace kelab::detail {

/// Z for a matrix-type domain from coordinates (or their conjugates).
template <class T>
std::vector<T> matrix_entries(const DomainModel& d, std::span<const T> z) {
  const auto [rows, cols] = matrix_shape(d);
  const T zero = constant_like(z[0], cplx{});
  std::vector<T> Z(static_cast<std::size_t>(rows * cols), zero);
  auto at = [&](int i, int j) -> T& { return Z[static_cast<std::size_t>(i * cols + j)]; };
  switch (d.kind()) {
    case DomainKind::TypeI:
      for (int i = 0; i < rows * cols; ++i) Z[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)];
      break;
    case DomainKind::TypeII: {
      std::size_t k = 0;
      for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < cols; ++j, ++k) {
          at(i, j) = z[k];
          at(j, i) = -z[k];
        }
      break;
    }
    case DomainKind::TypeIII: {
      const double s = 1.0 / std::sqrt(2.0);
      std::size_t k = 0;
      for (int i = 0; i < rows; ++i)
        for (int j = i; j < cols; ++j, ++k) {
          if (i == j) {
            at(i, i) = z[k];
          } else {
            at(i, j) = z[k] * cplx(s);
            at(j, i) = z[k] * cplx(s);
          }
        }
      break;
    }
    default:
      throw UnsupportedDomainError("not a matrix-type domain: " + d.name());
  }
  return Z;
}

/// Entries of I - Z Z* (row-major, rows x rows).
template <class T>
std::vector<T> identity_minus_zzstar(const DomainModel& d, std::span<const T> z, std::span<const T> zbar) {
  const auto [rows, cols] = matrix_shape(d);
  const auto Z = matrix_entries(d, z);
  const auto Zc = matrix_entries(d, zbar);  // conj(Z): entries are real-linear in z
  std::vector<T> A;
  A.reserve(static_cast<std::size_t>(rows * rows));
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < rows; ++k) {
      T acc = constant_like(z[0], i == k ? cplx{1.0} : cplx{});
      for (int j = 0; j < cols; ++j)
        acc -= Z[static_cast<std::size_t>(i * cols + j)] * Zc[static_cast<std::size_t>(k * cols + j)];
      A.push_back(acc);
    }
  return A;
}

template <class T>
T sum_sq(std::span<const T> z, std::span<const T> zbar) {
  T acc = constant_like(z[0], cplx{});
  for (std::size_t i = 0; i < z.size(); ++i) acc += z[i] * zbar[i];
  return acc;
}

/// log N(z, zbar) for every kind with a generic norm.
template <class T>
T log_generic_norm(const DomainModel& d, std::span<const T> z, std::span<const T> zbar) {
  using std::log;
  switch (d.kind()) {
    case DomainKind::Ball:
      return log(cplx{1.0} - sum_sq(z, zbar));
    case DomainKind::Polydisc: {
      T acc = constant_like(z[0], cplx{});
      for (std::size_t i = 0; i < z.size(); ++i) acc += log(cplx{1.0} - z[i] * zbar[i]);
      return acc;
    }
    case DomainKind::TypeI:
    case DomainKind::TypeII:
    case DomainKind::TypeIII: {
      const int rows = matrix_shape(d).first;
      return log(determinant(identity_minus_zzstar(d, z, zbar), rows)) * cplx(d.norm_power());
    }
    case DomainKind::TypeIV: {
      T zz = constant_like(z[0], cplx{});
      T zbzb = constant_like(z[0], cplx{});
      for (std::size_t i = 0; i < z.size(); ++i) {
        zz += z[i] * z[i];
        zbzb += zbar[i] * zbar[i];
      }
      return log(cplx{1.0} - cplx{2.0} * sum_sq(z, zbar) + zz * zbzb);
    }
    case DomainKind::Product: {
      T acc = constant_like(z[0], cplx{});
      std::size_t off = 0;
      for (const auto& f : d.factors()) {
        const auto len = static_cast<std::size_t>(f.dim());
        if (len == 0) continue;
        acc += log_generic_norm(f, z.subspan(off, len), zbar.subspan(off, len));
        off += len;
      }
      return acc;
    }
    default:
      throw UnsupportedDomainError("no generic norm for " + d.name());
  }
}

/// Bergman potential log K_Omega with additive constants dropped: -c log N,
/// or sum log K_H(w) on half-plane products.
template <class T>
T bergman_log_kernel(const DomainModel& d, std::span<const T> z, std::span<const T> zbar) {
  using std::log;
  switch (d.kind()) {
    case DomainKind::HalfPlaneProduct: {
      T acc = constant_like(z[0], cplx{});
      for (std::size_t i = 0; i < z.size(); ++i)
        acc += cplx(std::log(2.0)) - cplx{2.0} * log(-(z[i] + zbar[i]));
      return acc;
    }
    case DomainKind::Product: {
      T acc = constant_like(z[0], cplx{});
      std::size_t off = 0;
      for (const auto& f : d.factors()) {
        const auto len = static_cast<std::size_t>(f.dim());
        if (len == 0) continue;
        acc += bergman_log_kernel(f, z.subspan(off, len), zbar.subspan(off, len));
        off += len;
      }
      return acc;
    }
    default: {
      const auto c = d.bergman_exponent();
      if (!c) throw UnsupportedDomainError("no Bergman kernel for " + d.name());
      return log_generic_norm(d, z, zbar) * cplx(-*c);
    }
  }
}

}  // namespace kelab::detail
