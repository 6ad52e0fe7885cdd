#include "csaf/vision/kinematics.hpp"

#include "csaf/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace csaf::vision {

namespace {

/// First derivative of a uniformly sampled sequence.
template <typename Get> Vec3 derivative(std::size_t i, std::size_t n, double dt, Get&& f) {
    if (i == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * dt);
    if (i == n - 1) return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * dt);
    return (f(i + 1) - f(i - 1)) / (2.0 * dt);
}

/// Second derivative of a uniformly sampled sequence.
template <typename Get> Vec3 second_derivative(std::size_t i, std::size_t n, double dt, Get&& f) {
    const double h2 = dt * dt;
    if (n >= 4 && i == 0) return (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / h2;
    if (n >= 4 && i == n - 1) return (2.0 * f(n - 1) - 5.0 * f(n - 2) + 4.0 * f(n - 3) - f(n - 4)) / h2;
    const std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
    return (f(c + 1) - 2.0 * f(c) + f(c - 1)) / h2;
}

} // namespace

std::vector<KinematicsSample> kinematics_from_trace(std::span<const PoseSample> poses, double dt) {
    const std::size_t n = poses.size();
    require(n >= 3, ErrorCode::InvalidArgument, "kinematics need at least 3 pose samples");
    require(std::isfinite(dt) && dt > 0.0, ErrorCode::InvalidArgument, "dt must be > 0");
    for (std::size_t i = 1; i < n; ++i) {
        require(std::abs(poses[i].t - poses[i - 1].t - dt) <= 1e-6, ErrorCode::InvalidArgument,
                "pose trace is not uniformly sampled at index " + std::to_string(i));
    }
    for (const auto& p : poses)
        require(is_finite(p.pose.position) && is_finite(p.pose.orientation), ErrorCode::InvalidArgument,
                "non-finite pose in trace");

    auto position = [&](std::size_t k) -> Vec3 { return poses[k].pose.position; };

    // Angular rates from relative rotations: the rotation vector of q_j * q_i^-1 is the world-frame
    // rotation accumulated from sample i to j.
    auto relative = [&](std::size_t from, std::size_t to) -> Vec3 {
        return rotation_vector(poses[to].pose.orientation * poses[from].pose.orientation.conjugate());
    };
    std::vector<Vec3> omega(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 w;
        if (i == 0) {
            w = (4.0 * relative(0, 1) - relative(0, 2)) / (2.0 * dt);
        } else if (i == n - 1) {
            w = (4.0 * relative(n - 2, n - 1) - relative(n - 3, n - 1)) / (2.0 * dt);
        } else {
            w = relative(i - 1, i + 1) / (2.0 * dt);
        }
        omega[i] = w * (180.0 / std::numbers::pi);
    }
    auto angular = [&](std::size_t k) -> Vec3 { return omega[k]; };

    std::vector<KinematicsSample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].t = poses[i].t;
        out[i].linear_velocity = derivative(i, n, dt, position);
        out[i].linear_accel = second_derivative(i, n, dt, position);
        out[i].angular_velocity = omega[i];
        out[i].angular_accel = derivative(i, n, dt, angular);
    }
    return out;
}

} // namespace csaf::vision
