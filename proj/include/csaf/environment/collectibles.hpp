#pragma once

#include "csaf/environment/path.hpp"

#include <cstdint>
#include <vector>

namespace csaf::environment {

struct CollectibleSet {
    std::vector<Vec3> positions;
    std::vector<double> stations; ///< arc length of each collectible's station, m
    std::uint64_t seed = 0;
    double jitter = 0.0;
};

/// n collectibles at centered stations (i + 0.5) * L / n, each offset sideways by a seeded
/// uniform draw in [-jitter, jitter] along the horizontal normal of the path.
CollectibleSet place_collectibles(const PathTable& table, int n, std::uint64_t seed, double jitter);

/// Horizontal unit vector perpendicular to a tangent (+x when the tangent is vertical).
Vec3 lateral_direction(const Vec3& tangent);

} // namespace csaf::environment
