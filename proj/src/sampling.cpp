#include "kelab/sampling.hpp"

#include <cmath>
#include <numbers>

#include "kelab/errors.hpp"

namespace kelab {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

// Envelope radius per coordinate; TypeIII off-diagonal coordinates carry a 1/sqrt(2).
double envelope_radius(const DomainModel& d) { return d.kind() == DomainKind::TypeIII ? std::sqrt(2.0) : 1.0; }

cplx draw_disk(std::mt19937_64& rng, double radius) {
  const double r = radius * std::sqrt(uniform01(rng));
  const double theta = 2.0 * std::numbers::pi * uniform01(rng);
  return std::polar(r, theta);
}

void draw_into(const DomainModel& d, std::mt19937_64& rng, std::vector<cplx>& out) {
  const int n = d.dim();
  if (n == 0) return;
  if (d.kind() == DomainKind::Product) {
    for (const auto& f : d.factors()) draw_into(f, rng, out);
    return;
  }
  if (d.kind() == DomainKind::HalfPlaneProduct) {
    for (int a = 0; a < n; ++a) {
      const double re = -2.0 + 1.9 * uniform01(rng);
      const double im = -2.0 + 4.0 * uniform01(rng);
      out.emplace_back(re, im);
    }
    return;
  }
  const double R = kSampleCap * envelope_radius(d);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (auto& x : z) x = draw_disk(rng, R);
    std::vector<cplx> scaled(z);
    for (auto& x : scaled) x /= kSampleCap;
    if (d.kind() == DomainKind::Flat || d.contains(ComplexPoint(scaled))) {
      out.insert(out.end(), z.begin(), z.end());
      return;
    }
  }
  throw Error("sampling rejected too many candidates for " + d.name());
}

}  // namespace

std::vector<ComplexPoint> sample_points(const DomainModel& d, int count, std::uint64_t seed) {
  if (count < 0) throw InvalidArgument("sample count must be nonnegative");
  if (d.dim() == 0) throw InvalidArgument("cannot sample a zero-dimensional domain");
  std::mt19937_64 rng(seed);
  std::vector<ComplexPoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<cplx> z;
    z.reserve(static_cast<std::size_t>(d.dim()));
    draw_into(d, rng, z);
    pts.emplace_back(std::move(z));
  }
  return pts;
}

}  // namespace kelab
