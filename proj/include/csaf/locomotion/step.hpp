#pragma once

#include "csaf/locomotion/types.hpp"

namespace csaf::locomotion {

inline constexpr double kDefaultTimestep = 1.0 / 90.0;

/// Advances the rig by one fixed timestep. Pure: equal arguments give bit-identical results.
RigState step(RigState rig, const ProviderSet& set, const InputPair& inputs, double dt);

/// Yaws the heading about world y by `angle_deg`.
RigState snap_turn(RigState rig, double angle_deg);

/// First hit of the ray with a plane or the terrain within max_distance, or nullopt.
std::optional<Vec3> teleport_resolve(const Vec3& origin, const Vec3& direction, const TeleportSurfaces& surfaces);

/// Rig placed at the start of a path, facing along it.
RigState rig_at_path_start(const environment::PathTable& table);

} // namespace csaf::locomotion
