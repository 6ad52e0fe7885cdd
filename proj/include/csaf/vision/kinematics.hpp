#pragma once

#include "csaf/core/geometry.hpp"

#include <span>
#include <vector>

namespace csaf::vision {

struct PoseSample {
    double t = 0.0;
    Posed pose;
};

/// World-frame motion derivatives at one trace sample. Angular quantities are in degrees.
struct KinematicsSample {
    double t = 0.0;
    Vec3 linear_velocity = Vec3::Zero();  ///< m/s
    Vec3 linear_accel = Vec3::Zero();     ///< m/s^2
    Vec3 angular_velocity = Vec3::Zero(); ///< deg/s about world x, y, z
    Vec3 angular_accel = Vec3::Zero();    ///< deg/s^2
};

/// Finite-difference kinematics: central differences inside, second-order one-sided stencils at
/// the ends. Needs >= 3 samples spaced dt apart (within 1e-6 s).
std::vector<KinematicsSample> kinematics_from_trace(std::span<const PoseSample> poses, double dt);

} // namespace csaf::vision
