#include "csaf/locomotion/step.hpp"

#include "csaf/core/error.hpp"

#include <cmath>

namespace csaf::locomotion {

namespace {

struct Channels {
    bool stick_x = false;
    bool stick_y = false;
    bool grip = false;
};

void check_input(const ControllerInput& in) {
    require(in.joystick.allFinite() && is_finite(in.controller_pose.position) &&
                is_finite(in.controller_pose.orientation),
            ErrorCode::InvalidArgument, "non-finite controller input");
    require(std::abs(in.joystick.x()) <= 1.0 && std::abs(in.joystick.y()) <= 1.0, ErrorCode::InvalidArgument,
            "joystick components must lie in [-1, 1]");
}

Vec3 controller_forward(const RigState& rig, const ControllerInput& in) {
    return rig.heading * (in.controller_pose.orientation.normalized() * Vec3::UnitZ());
}

void continuous_move(RigState& rig, const ProviderParams& p, const ControllerInput& in, Vec2 stick, double dt) {
    const double magnitude = std::min(1.0, stick.norm());
    if (magnitude == 0.0) return;
    const Vec3 local(stick.x(), 0.0, stick.y());
    const Quat frame = p.heading_relative ? rig.heading : Quat(rig.heading * in.controller_pose.orientation.normalized());
    Vec3 world = frame * local;
    world.y() = 0.0;
    const double n = world.norm();
    if (n == 0.0) return;
    rig.position += world * (magnitude * p.speed * dt / n);
    rig.active_provider_modes.insert(ProviderKind::ContinuousMove);
}

void continuous_turn(RigState& rig, const ProviderParams& p, double stick_x, double dt) {
    if (stick_x == 0.0) return;
    rig.heading = (yaw_rotation_deg(stick_x * p.turn_rate * dt) * rig.heading).normalized();
    rig.active_provider_modes.insert(ProviderKind::ContinuousTurn);
}

void snap(RigState& rig, SideMemory& mem, const ProviderParams& p, double stick_x) {
    const bool beyond = std::abs(stick_x) >= p.snap_threshold;
    if (beyond && !mem.snap_latched) {
        rig = snap_turn(std::move(rig), stick_x > 0.0 ? p.snap_angle : -p.snap_angle);
        rig.active_provider_modes.insert(ProviderKind::SnapTurn);
    }
    mem.snap_latched = beyond;
}

void teleport(RigState& rig, SideMemory& mem, const ProviderParams& p, const TeleportSurfaces& surfaces,
              const ControllerInput& in, double stick_y) {
    if (stick_y >= p.teleport_threshold) {
        mem.teleport_aiming = true;
        const Vec3 origin = rig.position + rig.heading * in.controller_pose.position;
        mem.teleport_target = teleport_resolve(origin, controller_forward(rig, in), surfaces);
        return;
    }
    if (mem.teleport_aiming) {
        if (mem.teleport_target) {
            rig.position = *mem.teleport_target;
            rig.active_provider_modes.insert(ProviderKind::Teleport);
        }
        mem.teleport_aiming = false;
        mem.teleport_target.reset();
    }
}

void grab(RigState& rig, SideMemory& mem, const ProviderParams& p, const ControllerInput& in, bool grip) {
    if (!grip) {
        mem.grab_anchor.reset();
        return;
    }
    const Vec3 hand = in.controller_pose.position;
    if (mem.grab_anchor) {
        const Vec3 delta = rig.heading * (hand - *mem.grab_anchor);
        if (delta.squaredNorm() > 0.0) {
            rig.position -= p.grab_scale * delta;
            rig.active_provider_modes.insert(ProviderKind::GrabMove);
        }
    }
    mem.grab_anchor = hand;
}

void follow(RigState& rig, const ProviderParams& p, double dt) {
    const auto& table = *p.path;
    rig.path_s += p.follow_speed * dt;
    if (!table.spec.closed && rig.path_s > table.total_length) rig.path_s = table.total_length;
    const auto point = environment::pose_at(table, rig.path_s);
    rig.position = point.position;
    rig.heading = look_rotation(point.tangent);
    rig.active_provider_modes.insert(ProviderKind::PathFollow);
}

} // namespace

RigState snap_turn(RigState rig, double angle_deg) {
    rig.heading = (yaw_rotation_deg(angle_deg) * rig.heading).normalized();
    return rig;
}

RigState step(RigState rig, const ProviderSet& set, const InputPair& inputs, double dt) {
    require(std::isfinite(dt) && dt > 0.0, ErrorCode::InvalidArgument, "timestep must be > 0");
    check_input(inputs.left);
    check_input(inputs.right);
    rig.active_provider_modes.clear();

    for (Side side : {Side::Left, Side::Right}) {
        const ControllerInput& in = inputs[side];
        SideMemory& mem = rig.memory[static_cast<std::size_t>(side)];
        Channels used;
        for (const ProviderSpec& provider : set.side(side)) {
            // earlier providers in the list consume their channels first
            const double x = used.stick_x ? 0.0 : in.joystick.x();
            const double y = used.stick_y ? 0.0 : in.joystick.y();
            const bool grip = used.grip ? false : in.grip;
            const ProviderParams& p = provider.params;
            switch (provider.kind) {
            case ProviderKind::ContinuousMove:
                continuous_move(rig, p, in, Vec2(x, y), dt);
                used.stick_x = used.stick_y = true;
                break;
            case ProviderKind::ContinuousTurn:
                continuous_turn(rig, p, x, dt);
                used.stick_x = true;
                break;
            case ProviderKind::SnapTurn:
                snap(rig, mem, p, x);
                used.stick_x = true;
                break;
            case ProviderKind::Teleport:
                teleport(rig, mem, p, set.surfaces, in, y);
                used.stick_y = true;
                break;
            case ProviderKind::GrabMove:
                grab(rig, mem, p, in, grip);
                used.grip = true;
                break;
            case ProviderKind::PathFollow: follow(rig, p, dt); break;
            }
        }
    }
    require(rig.position.allFinite(), ErrorCode::InvalidArgument, "rig position became non-finite");
    return rig;
}

RigState rig_at_path_start(const environment::PathTable& table) {
    RigState rig;
    const auto start = environment::pose_at(table, 0.0);
    rig.position = start.position;
    rig.heading = look_rotation(start.tangent);
    return rig;
}

} // namespace csaf::locomotion
