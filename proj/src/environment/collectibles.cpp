#include "csaf/environment/collectibles.hpp"

#include "csaf/core/error.hpp"
#include "csaf/core/random.hpp"

#include <cmath>

namespace csaf::environment {

Vec3 lateral_direction(const Vec3& tangent) {
    const Vec3 side = Vec3::UnitY().cross(tangent);
    const double n = side.norm();
    return n > 1e-12 ? Vec3(side / n) : Vec3::UnitX();
}

CollectibleSet place_collectibles(const PathTable& table, int n, std::uint64_t seed, double jitter) {
    require(n >= 0, ErrorCode::InvalidArgument, "collectible count must be >= 0");
    require(jitter >= 0.0 && std::isfinite(jitter), ErrorCode::InvalidArgument, "jitter must be >= 0");
    CollectibleSet set;
    set.seed = seed;
    set.jitter = jitter;
    Rng rng = make_rng(seed);
    const double length = table.total_length;
    for (int i = 0; i < n; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * length / static_cast<double>(n);
        const PathPoint p = pose_at(table, s);
        const double offset = uniform(rng, -jitter, jitter);
        set.stations.push_back(s);
        set.positions.push_back(p.position + offset * lateral_direction(p.tangent));
    }
    return set;
}

} // namespace csaf::environment
