#include "csaf/locomotion/handler.hpp"

#include "csaf/registry/builtin_types.hpp"

#include <algorithm>
#include <cmath>

namespace csaf::locomotion {

namespace rb = registry::builtin;

const char* to_string(ProviderKind kind) {
    switch (kind) {
    case ProviderKind::ContinuousMove: return "ContinuousMove";
    case ProviderKind::Teleport: return "Teleport";
    case ProviderKind::GrabMove: return "GrabMove";
    case ProviderKind::ContinuousTurn: return "ContinuousTurn";
    case ProviderKind::SnapTurn: return "SnapTurn";
    case ProviderKind::PathFollow: return "PathFollow";
    }
    return "?";
}

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

const char* to_string(Action action) {
    switch (action) {
    case Action::Move: return "move";
    case Action::TeleportAim: return "teleport";
    case Action::Grab: return "grab";
    case Action::Turn: return "turn";
    case Action::SnapTurn: return "snap_turn";
    case Action::Follow: return "follow";
    }
    return "?";
}

const char* type_identifier(ProviderKind kind) {
    switch (kind) {
    case ProviderKind::ContinuousMove: return rb::kContinuousMove;
    case ProviderKind::Teleport: return rb::kTeleportation;
    case ProviderKind::GrabMove: return rb::kGrabMove;
    case ProviderKind::ContinuousTurn: return rb::kContinuousTurn;
    case ProviderKind::SnapTurn: return rb::kSnapTurn;
    case ProviderKind::PathFollow: return rb::kPathFollow;
    }
    return "?";
}

std::optional<ProviderKind> provider_kind_from_type(std::string_view type) {
    for (auto k : {ProviderKind::ContinuousMove, ProviderKind::Teleport, ProviderKind::GrabMove,
                   ProviderKind::ContinuousTurn, ProviderKind::SnapTurn, ProviderKind::PathFollow})
        if (type == type_identifier(k)) return k;
    return std::nullopt;
}

Action action_of(ProviderKind kind) {
    switch (kind) {
    case ProviderKind::ContinuousMove: return Action::Move;
    case ProviderKind::Teleport: return Action::TeleportAim;
    case ProviderKind::GrabMove: return Action::Grab;
    case ProviderKind::ContinuousTurn: return Action::Turn;
    case ProviderKind::SnapTurn: return Action::SnapTurn;
    case ProviderKind::PathFollow: return Action::Follow;
    }
    return Action::Move;
}

std::optional<Action> action_from_string(std::string_view name) {
    for (auto a : {Action::Move, Action::TeleportAim, Action::Grab, Action::Turn, Action::SnapTurn, Action::Follow})
        if (name == to_string(a)) return a;
    return std::nullopt;
}

std::optional<Side> side_from_string(std::string_view name) {
    if (name == "left") return Side::Left;
    if (name == "right") return Side::Right;
    return std::nullopt;
}

bool TeleportSurfaces::operator==(const TeleportSurfaces& other) const {
    if (planes.size() != other.planes.size() || terrain != other.terrain || max_distance != other.max_distance)
        return false;
    for (std::size_t i = 0; i < planes.size(); ++i)
        if (planes[i].coeffs() != other.planes[i].coeffs()) return false;
    return true;
}

bool SideMemory::operator==(const SideMemory& other) const {
    return snap_latched == other.snap_latched && teleport_aiming == other.teleport_aiming &&
           teleport_target == other.teleport_target && grab_anchor == other.grab_anchor;
}

bool bitwise_equal(const RigState& a, const RigState& b) {
    return a.position == b.position && a.heading.coeffs() == b.heading.coeffs() &&
           a.active_provider_modes == b.active_provider_modes && a.memory == b.memory && a.path_s == b.path_s;
}

std::optional<std::string> conformance_error(const ProviderCandidate& c, Side side) {
    const auto kind = provider_kind_from_type(c.type);
    if (!kind) return "'" + c.type + "' does not implement the custom locomotion provider contract";
    const auto& actions = side == Side::Left ? c.left_actions : c.right_actions;
    if (actions.empty()) return "'" + c.type + "' declares no " + to_string(side) + " actions";
    for (Action a : actions)
        if (a != action_of(*kind))
            return "'" + c.type + "' declares unsupported action '" + to_string(a) + "'";
    const auto& p = c.params;
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    switch (*kind) {
    case ProviderKind::ContinuousMove:
        if (!positive(p.speed)) return "'" + c.type + "' needs speed > 0";
        break;
    case ProviderKind::Teleport:
        if (!positive(p.teleport_threshold) || p.teleport_threshold > 1.0)
            return "'" + c.type + "' needs a threshold in (0, 1]";
        break;
    case ProviderKind::GrabMove:
        if (!positive(p.grab_scale)) return "'" + c.type + "' needs scale > 0";
        break;
    case ProviderKind::ContinuousTurn:
        if (!positive(p.turn_rate)) return "'" + c.type + "' needs turn_rate > 0";
        break;
    case ProviderKind::SnapTurn:
        if (!positive(p.snap_angle)) return "'" + c.type + "' needs snap_angle > 0";
        if (!positive(p.snap_threshold) || p.snap_threshold > 1.0)
            return "'" + c.type + "' needs a threshold in (0, 1]";
        break;
    case ProviderKind::PathFollow:
        if (!positive(p.follow_speed)) return "'" + c.type + "' needs follow_speed > 0";
        if (!p.path) return "'" + c.type + "' has no path reference";
        break;
    }
    return std::nullopt;
}

HandlerConfig configure_handler(const std::vector<ProviderCandidate>& left, const std::vector<ProviderCandidate>& right,
                                TeleportSurfaces surfaces) {
    HandlerConfig out; // starts empty: nothing from a previous configuration survives
    out.set.surfaces = std::move(surfaces);
    auto admit = [&](const std::vector<ProviderCandidate>& list, Side side, std::vector<ProviderSpec>& dest) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& c = list[i];
            if (auto why = conformance_error(c, side)) {
                out.diagnostics.push_back(std::string(to_string(side)) + "[" + std::to_string(i) + "]: " + *why);
                continue;
            }
            ProviderSpec spec;
            spec.kind = *provider_kind_from_type(c.type);
            spec.params = c.params;
            // only the actions for this controller are enabled
            if (side == Side::Left) {
                spec.left_actions = c.left_actions;
            } else {
                spec.right_actions = c.right_actions;
            }
            dest.push_back(std::move(spec));
        }
    };
    admit(left, Side::Left, out.set.left);
    admit(right, Side::Right, out.set.right);
    return out;
}

} // namespace csaf::locomotion
