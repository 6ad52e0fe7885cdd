#pragma once

#include "csaf/core/geometry.hpp"

#include <vector>

namespace csaf::environment {

enum class PathInterpolation { CentripetalCatmullRom, Linear };

struct PathSpec {
    std::vector<Vec3> control_points;
    bool closed = false;
    int sample_count = 1024;
    PathInterpolation interpolation = PathInterpolation::CentripetalCatmullRom;
};

struct PathSample {
    double s = 0.0;  ///< arc length from the start, m
    double u = 0.0;  ///< curve parameter in [0, segment_count]
    Vec3 position = Vec3::Zero();
};

/// Arc-length table over a curve through the control points.
struct PathTable {
    PathSpec spec;
    double total_length = 0.0;
    std::vector<PathSample> samples;

    [[nodiscard]] std::size_t segment_count() const;
};

struct PathPoint {
    Vec3 position;
    Vec3 tangent; ///< unit length, direction of increasing s
};

/// Throws InvalidArgument for fewer than two points, consecutive duplicates, or non-finite input.
void validate(const PathSpec& spec);

/// Curve position and derivative d/du at global parameter u in [0, segment_count].
PathPoint curve_at(const PathSpec& spec, double u);

PathTable build_path(const PathSpec& spec);

/// Pose at arc length s. Closed paths wrap; open paths throw OutOfRange outside [0, total_length].
PathPoint pose_at(const PathTable& table, double s);

} // namespace csaf::environment
