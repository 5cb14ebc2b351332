#include "kelab/domain.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <algorithm>
#include <limits>
#include <numeric>

#include "kelab/errors.hpp"
#include "norm_forms.hpp"

namespace kelab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

}  // namespace

DomainModel DomainModel::ball(int n) {
  require(n >= 1, "Ball needs n >= 1");
  return DomainModel(DomainKind::Ball, n, 1, n + 1.0, 1, n);
}

DomainModel DomainModel::polydisc(int n) {
  require(n >= 1, "Polydisc needs n >= 1");
  return DomainModel(DomainKind::Polydisc, n, n, 2.0, n, 0);
}

DomainModel DomainModel::type_one(int p, int q) {
  require(p >= 1 && q >= 1, "TypeI needs p, q >= 1");
  return DomainModel(DomainKind::TypeI, p * q, std::min(p, q), static_cast<double>(p + q), p, q);
}

DomainModel DomainModel::type_two(int m) {
  require(m >= 3, "TypeII is restricted to m >= 3");
  return DomainModel(DomainKind::TypeII, m * (m - 1) / 2, m / 2, 2.0 * (m - 1), m, m);
}

DomainModel DomainModel::type_three(int m) {
  require(m >= 1, "TypeIII needs m >= 1");
  return DomainModel(DomainKind::TypeIII, m * (m + 1) / 2, m, m + 1.0, m, m);
}

DomainModel DomainModel::type_four(int m) {
  require(m >= 3, "TypeIV is restricted to m >= 3");
  return DomainModel(DomainKind::TypeIV, m, 2, static_cast<double>(m), m, 0);
}

DomainModel DomainModel::half_plane_product(int r) {
  require(r >= 1, "HalfPlaneProduct needs r >= 1");
  return DomainModel(DomainKind::HalfPlaneProduct, r, r, 2.0, r, 0);
}

DomainModel DomainModel::product(std::vector<DomainModel> factors) {
  require(!factors.empty(), "Product needs at least one factor");
  int n = 0;
  int r = 0;
  for (const auto& f : factors) {
    n += f.dim();
    r += f.rank();
  }
  require(n >= 1, "Product must have positive dimension");
  DomainModel d(DomainKind::Product, n, r, std::nullopt, static_cast<int>(factors.size()), 0);
  d.factors_ = std::move(factors);
  return d;
}

DomainModel DomainModel::flat(int n) {
  require(n >= 0, "Flat needs n >= 0");
  return DomainModel(DomainKind::Flat, n, 0, std::nullopt, n, 0);
}

double DomainModel::norm_power() const noexcept {
  return kind_ == DomainKind::TypeII ? 0.5 : 1.0;
}

std::pair<int, int> matrix_shape(const DomainModel& d) {
  switch (d.kind()) {
    case DomainKind::TypeI:
      return {d.p(), d.q()};
    case DomainKind::TypeII:
    case DomainKind::TypeIII:
      return {d.m(), d.m()};
    default:
      throw UnsupportedDomainError("not a matrix-type domain: " + d.name());
  }
}

bool DomainModel::contains(const ComplexPoint& z) const {
  if (z.dim() != n_) return false;
  const auto c = z.coords();
  switch (kind_) {
    case DomainKind::Ball:
      return z.norm_sq() < 1.0;
    case DomainKind::Polydisc:
      return std::all_of(c.begin(), c.end(), [](cplx x) { return std::norm(x) < 1.0; });
    case DomainKind::HalfPlaneProduct:
      return std::all_of(c.begin(), c.end(), [](cplx x) { return x.real() < 0.0; });
    case DomainKind::Flat:
      return true;
    case DomainKind::TypeI:
    case DomainKind::TypeII:
    case DomainKind::TypeIII: {
      const auto [rows, cols] = matrix_shape(*this);
      const auto entries = detail::matrix_entries(*this, c);
      Eigen::MatrixXcd Z(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) Z(i, j) = entries[static_cast<std::size_t>(i * cols + j)];
      const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(rows, rows) - Z * Z.adjoint();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() > 0.0;
    }
    case DomainKind::TypeIV: {
      const double zz = z.norm_sq();
      cplx zzt{};
      for (auto x : c) zzt += x * x;
      return zz < 1.0 && 1.0 - 2.0 * zz + std::norm(zzt) > 0.0;
    }
    case DomainKind::Product: {
      std::size_t off = 0;
      for (const auto& f : factors_) {
        const auto len = static_cast<std::size_t>(f.dim());
        if (len > 0) {
          ComplexPoint sub(std::vector<cplx>(c.begin() + static_cast<long>(off),
                                             c.begin() + static_cast<long>(off + len)));
          if (!f.contains(sub)) return false;
        }
        off += len;
      }
      return true;
    }
  }
  return false;
}

void DomainModel::require_contains(const ComplexPoint& z) const {
  if (z.dim() != n_)
    throw MembershipError(name() + " has dimension " + std::to_string(n_) + ", point has " +
                          std::to_string(z.dim()));
  if (!contains(z)) throw MembershipError("point " + z.to_string() + " is not in " + name());
}

bool DomainModel::is_irreducible() const noexcept {
  switch (kind_) {
    case DomainKind::Ball:
    case DomainKind::TypeI:
    case DomainKind::TypeII:
    case DomainKind::TypeIII:
    case DomainKind::TypeIV:
      return true;
    case DomainKind::Polydisc:
    case DomainKind::HalfPlaneProduct:
      return n_ == 1;
    default:
      return false;
  }
}

bool DomainModel::is_ball_equivalent() const noexcept {
  switch (kind_) {
    case DomainKind::Ball:
      return true;
    case DomainKind::TypeI:
      return p_ == 1 || q_ == 1;
    case DomainKind::TypeII:
      return p_ == 3;
    case DomainKind::TypeIII:
      return p_ == 1;
    case DomainKind::Polydisc:
    case DomainKind::HalfPlaneProduct:
      return n_ == 1;
    case DomainKind::Product: {
      int nontrivial = 0;
      bool ball = true;
      for (const auto& f : factors_) {
        if (f.dim() == 0) continue;
        ++nontrivial;
        ball = ball && f.is_ball_equivalent();
      }
      return nontrivial == 1 && ball;
    }
    default:
      return false;
  }
}

bool DomainModel::has_bergman_potential() const noexcept {
  if (kind_ == DomainKind::Flat) return false;
  if (kind_ == DomainKind::Product)
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const DomainModel& f) { return f.dim() == 0 || f.has_bergman_potential(); });
  return true;
}

InvariantsRecord DomainModel::invariants() const {
  InvariantsRecord rec;
  rec.name = name();
  rec.n = n_;
  rec.rank = rank_;
  if (kind_ == DomainKind::Product) {
    double rc = 0.0;
    for (const auto& f : factors_) {
      if (f.dim() == 0) continue;
      rc += f.invariants().rc;
    }
    rec.c = std::numeric_limits<double>::quiet_NaN();
    rec.rc = rc;
  } else if (c_) {
    rec.c = *c_;
    rec.rc = rank_ * *c_;
  } else {
    rec.c = std::numeric_limits<double>::quiet_NaN();
    rec.rc = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Ball: return "Ball";
    case DomainKind::Polydisc: return "Polydisc";
    case DomainKind::TypeI: return "TypeI";
    case DomainKind::TypeII: return "TypeII";
    case DomainKind::TypeIII: return "TypeIII";
    case DomainKind::TypeIV: return "TypeIV";
    case DomainKind::HalfPlaneProduct: return "HalfPlaneProduct";
    case DomainKind::Product: return "Product";
    case DomainKind::Flat: return "Flat";
  }
  return "?";
}

std::string DomainModel::name() const {
  const std::string k = to_string(kind_);
  switch (kind_) {
    case DomainKind::TypeI:
      return k + "(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
    case DomainKind::TypeII:
    case DomainKind::TypeIII:
    case DomainKind::TypeIV:
      return k + "(" + std::to_string(p_) + ")";
    case DomainKind::Product: {
      std::string s = "Product(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += " x ";
        s += factors_[i].name();
      }
      return s + ")";
    }
    default:
      return k + "(" + std::to_string(n_) + ")";
  }
}

bool operator==(const DomainModel& a, const DomainModel& b) {
  return a.kind_ == b.kind_ && a.n_ == b.n_ && a.p_ == b.p_ && a.q_ == b.q_ && a.factors_ == b.factors_;
}

std::vector<InvariantsRecord> exceptional_invariants() {
  return {
      {"ExceptionalV(16)", 12.0, 16, 2, 24.0},
      {"ExceptionalVI(27)", 18.0, 27, 3, 54.0},
  };
}

std::vector<InvariantsRecord> classical_invariants(int max_param) {
  std::vector<InvariantsRecord> rows;
  for (int p = 1; p <= max_param; ++p)
    for (int q = p; q <= max_param; ++q) rows.push_back(DomainModel::type_one(p, q).invariants());
  for (int m = 3; m <= max_param; ++m) rows.push_back(DomainModel::type_two(m).invariants());
  for (int m = 1; m <= max_param; ++m) rows.push_back(DomainModel::type_three(m).invariants());
  for (int m = 3; m <= max_param; ++m) rows.push_back(DomainModel::type_four(m).invariants());
  return rows;
}

}  // namespace kelab
