#pragma once

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>

namespace csaf {

// Frame convention: y up, +z forward (longitudinal), +x lateral. Positive yaw turns +z toward +x.

template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Quaternion = Eigen::Quaternion<Scalar>;

using Vec3 = Vector3<double>;
using Vec2 = Vector2<double>;
using Quat = Quaternion<double>;

template <typename Scalar> constexpr Scalar deg_to_rad(Scalar deg) {
    return deg * std::numbers::pi_v<Scalar> / Scalar(180);
}
template <typename Scalar> constexpr Scalar rad_to_deg(Scalar rad) {
    return rad * Scalar(180) / std::numbers::pi_v<Scalar>;
}

/// Rigid transform: orientation applied first, then translation.
template <typename Scalar> struct Pose {
    Vector3<Scalar> position = Vector3<Scalar>::Zero();
    Quaternion<Scalar> orientation = Quaternion<Scalar>::Identity();

    static Pose identity() { return {}; }

    [[nodiscard]] Vector3<Scalar> transform_point(const Vector3<Scalar>& local) const {
        return position + orientation * local;
    }
    [[nodiscard]] Vector3<Scalar> inverse_transform_point(const Vector3<Scalar>& world) const {
        return orientation.conjugate() * (world - position);
    }
    [[nodiscard]] Pose inverse() const {
        Pose out;
        out.orientation = orientation.conjugate();
        out.position = -(out.orientation * position);
        return out;
    }
};

using Posed = Pose<double>;

/// a ∘ b: express b (given in a's frame) in a's parent frame.
template <typename Scalar> Pose<Scalar> compose(const Pose<Scalar>& a, const Pose<Scalar>& b) {
    Pose<Scalar> out;
    out.position = a.position + a.orientation * b.position;
    out.orientation = (a.orientation * b.orientation).normalized();
    return out;
}

template <typename Scalar> Quaternion<Scalar> axis_rotation_deg(const Vector3<Scalar>& axis, Scalar deg) {
    return Quaternion<Scalar>(Eigen::AngleAxis<Scalar>(deg_to_rad(deg), axis.normalized()));
}

template <typename Scalar> Quaternion<Scalar> yaw_rotation_deg(Scalar deg) {
    return Quaternion<Scalar>(Eigen::AngleAxis<Scalar>(deg_to_rad(deg), Vector3<Scalar>::UnitY()));
}

/// Rotation angle between two orientations in degrees, in [0, 180]. q and -q are the same rotation.
template <typename Scalar> Scalar angular_distance_deg(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b) {
    using std::abs, std::atan2;
    const Quaternion<Scalar> d = a.conjugate() * b;
    const Scalar s = d.vec().norm();
    return rad_to_deg(Scalar(2) * atan2(s, abs(d.w())));
}

/// Heading yaw of an orientation in degrees, measured from +z toward +x.
template <typename Scalar> Scalar yaw_of_deg(const Quaternion<Scalar>& q) {
    const Vector3<Scalar> f = q * Vector3<Scalar>::UnitZ();
    return rad_to_deg(std::atan2(f.x(), f.z()));
}

/// Orientation whose +z axis points along `forward` with no roll.
Quat look_rotation(const Vec3& forward);

/// Rotation vector (axis * angle, radians) of a unit quaternion, shortest arc.
Vec3 rotation_vector(const Quat& q);

/// Wraps an angle in degrees into (-90, 90].
double wrap_to_half_turn_90(double deg);

/// Wraps an angle in degrees into (-180, 180].
double wrap_to_180(double deg);

bool is_finite(const Vec3& v);
bool is_finite(const Quat& q);

} // namespace csaf
