#include "csaf/core/geometry.hpp"

#include <cmath>

namespace csaf {

Quat look_rotation(const Vec3& forward) {
    const Vec3 f = forward.normalized();
    const double yaw = std::atan2(f.x(), f.z());
    const double horizontal = std::hypot(f.x(), f.z());
    const double pitch = -std::atan2(f.y(), horizontal);
    const Quat q = Quat(Eigen::AngleAxisd(yaw, Vec3::UnitY())) * Quat(Eigen::AngleAxisd(pitch, Vec3::UnitX()));
    return q.normalized();
}

Vec3 rotation_vector(const Quat& q) {
    Quat u = q.normalized();
    if (u.w() < 0.0) u.coeffs() = -u.coeffs();
    const double s = u.vec().norm();
    if (s < 1e-300) return Vec3::Zero();
    const double angle = 2.0 * std::atan2(s, u.w());
    return u.vec() * (angle / s);
}

double wrap_to_half_turn_90(double deg) {
    return deg - 180.0 * std::ceil((deg - 90.0) / 180.0);
}

double wrap_to_180(double deg) {
    return deg - 360.0 * std::ceil((deg - 180.0) / 360.0);
}

bool is_finite(const Vec3& v) { return v.allFinite(); }

bool is_finite(const Quat& q) { return q.coeffs().allFinite(); }

} // namespace csaf
