#include "csaf/locomotion/step.hpp"

#include <cmath>
#include <limits>

namespace csaf::locomotion {

namespace {

double signed_gap(const environment::Heightmap& grid, const Vec3& p) {
    return p.y() - environment::terrain_height(grid, p.x(), p.z());
}

std::optional<double> terrain_hit(const environment::Heightmap& grid, const Vec3& origin, const Vec3& dir,
                                  double max_distance) {
    // March until the ray crosses the surface, then bisect the bracket.
    const double step = grid.cell_size / 4.0;
    double prev_t = -1.0;
    double prev_gap = 0.0;
    for (double t = 0.0; t <= max_distance; t += step) {
        const Vec3 p = origin + t * dir;
        if (!grid.contains(p.x(), p.z())) {
            prev_t = -1.0;
            continue;
        }
        const double gap = signed_gap(grid, p);
        if (gap == 0.0) return t;
        if (prev_t >= 0.0 && prev_gap > 0.0 && gap < 0.0) {
            double lo = prev_t;
            double hi = t;
            for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (signed_gap(grid, origin + mid * dir) > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev_t = t;
        prev_gap = gap;
    }
    return std::nullopt;
}

} // namespace

std::optional<Vec3> teleport_resolve(const Vec3& origin, const Vec3& direction, const TeleportSurfaces& surfaces) {
    if (!origin.allFinite() || !direction.allFinite() || direction.norm() == 0.0) return std::nullopt;
    const Vec3 dir = direction.normalized();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& plane : surfaces.planes) {
        const double denom = plane.normal().dot(dir);
        if (std::abs(denom) < 1e-12) continue; // parallel
        const double t = -plane.signedDistance(origin) / denom;
        if (t > 0.0 && t <= surfaces.max_distance && t < best) best = t;
    }
    if (surfaces.terrain) {
        if (auto t = terrain_hit(*surfaces.terrain, origin, dir, std::min(best, surfaces.max_distance)); t && *t < best)
            best = *t;
    }
    if (!std::isfinite(best)) return std::nullopt;
    return origin + best * dir;
}

} // namespace csaf::locomotion
