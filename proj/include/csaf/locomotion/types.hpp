#pragma once

#include "csaf/core/geometry.hpp"
#include "csaf/environment/path.hpp"
#include "csaf/environment/terrain.hpp"

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace csaf::locomotion {

enum class ProviderKind { ContinuousMove, Teleport, GrabMove, ContinuousTurn, SnapTurn, PathFollow };
enum class Side { Left = 0, Right = 1 };
/// Controller actions a provider can bind. Each provider kind supports exactly one.
enum class Action { Move, TeleportAim, Grab, Turn, SnapTurn, Follow };

const char* to_string(ProviderKind kind);
const char* to_string(Side side);
const char* to_string(Action action);
std::optional<ProviderKind> provider_kind_from_type(std::string_view type_identifier);
/// Registry type identifier of a provider kind (e.g. "SnapTurnProvider").
const char* type_identifier(ProviderKind kind);
Action action_of(ProviderKind kind);
std::optional<Action> action_from_string(std::string_view name);
std::optional<Side> side_from_string(std::string_view name);

struct ControllerInput {
    Vec2 joystick = Vec2::Zero(); ///< x lateral, y forward; each component in [-1, 1]
    bool grip = false;
    bool trigger = false;
    bool validate_button = false;
    Posed controller_pose; ///< in rig (tracking) space
};

struct InputPair {
    ControllerInput left;
    ControllerInput right;

    [[nodiscard]] const ControllerInput& operator[](Side side) const { return side == Side::Left ? left : right; }
};

struct ProviderParams {
    double speed = 2.0;             ///< m/s, ContinuousMove
    bool heading_relative = true;   ///< ContinuousMove: rig heading frame, else controller frame
    double turn_rate = 90.0;        ///< deg/s, ContinuousTurn
    double snap_angle = 30.0;       ///< deg, SnapTurn
    double snap_threshold = 0.7;    ///< |joystick x| edge for SnapTurn
    double teleport_threshold = 0.7;///< joystick y edge for Teleport aim
    double grab_scale = 1.0;        ///< GrabMove
    double follow_speed = 5.0;      ///< m/s, PathFollow
    std::string path_ref;           ///< PathFollow path name
    std::shared_ptr<const environment::PathTable> path;

    bool operator==(const ProviderParams&) const = default;
};

struct ProviderSpec {
    ProviderKind kind = ProviderKind::ContinuousMove;
    ProviderParams params;
    std::vector<Action> left_actions;
    std::vector<Action> right_actions;

    bool operator==(const ProviderSpec&) const = default;
};

/// What teleport rays can land on.
struct TeleportSurfaces {
    std::vector<Eigen::Hyperplane<double, 3>> planes;
    std::shared_ptr<const environment::Heightmap> terrain;
    double max_distance = 50.0;

    bool operator==(const TeleportSurfaces& other) const;
};

struct ProviderSet {
    std::vector<ProviderSpec> left;
    std::vector<ProviderSpec> right;
    TeleportSurfaces surfaces;

    [[nodiscard]] const std::vector<ProviderSpec>& side(Side s) const { return s == Side::Left ? left : right; }
    [[nodiscard]] bool empty() const { return left.empty() && right.empty(); }
    bool operator==(const ProviderSet&) const = default;
};

struct SideMemory {
    bool snap_latched = false;
    bool teleport_aiming = false;
    std::optional<Vec3> teleport_target;
    std::optional<Vec3> grab_anchor; ///< controller position (rig space) at the previous grab step

    bool operator==(const SideMemory& other) const;
};

struct RigState {
    Vec3 position = Vec3::Zero();
    Quat heading = Quat::Identity();
    std::set<ProviderKind> active_provider_modes; ///< providers that moved the rig during the last step
    std::array<SideMemory, 2> memory;
    double path_s = 0.0; ///< PathFollow arc length

    [[nodiscard]] Posed pose() const { return {position, heading}; }
};

bool bitwise_equal(const RigState& a, const RigState& b);

} // namespace csaf::locomotion
