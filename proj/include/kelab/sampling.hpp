#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kelab/domain.hpp"
#include "kelab/point.hpp"

namespace kelab {

/// Fraction of the boundary distance kept free so FD stencils stay interior.
inline constexpr double kSampleCap = 0.95;

/// Uniform double in [0, 1) from the top 53 bits; stable across standard libraries.
double uniform01(std::mt19937_64& rng);

/// Interior points drawn uniformly in the polydisc envelope of d and kept when
/// z / kSampleCap is still in d. Half-plane factors draw Re w in (-2, -0.1),
/// Im w in (-2, 2). Same (d, count, seed) gives the same points bit for bit.
std::vector<ComplexPoint> sample_points(const DomainModel& d, int count, std::uint64_t seed);

}  // namespace kelab
