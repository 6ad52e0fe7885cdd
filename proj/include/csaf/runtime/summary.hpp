#pragma once

#include "csaf/runtime/session.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace csaf::runtime {

/// Per-sample classification thresholds for the motion breakdown.
struct BreakdownThresholds {
    double linear_accel = 0.1; ///< m/s^2 per body axis
    double angular_rate = 1.0; ///< deg/s per body axis
};

/// Seconds spent accelerating along / rotating about each head-frame axis.
struct MotionBreakdown {
    std::array<double, 3> linear_accel{}; ///< lateral, vertical, longitudinal
    std::array<double, 3> rotation{};     ///< pitch, yaw, roll

    bool operator==(const MotionBreakdown&) const = default;
};

/// "Rotation along Yaw axis - 10 min" style lines; empty when no motion was classified.
std::vector<std::string> breakdown_lines(const MotionBreakdown& b);

struct PhaseSummary {
    PhaseKind kind = PhaseKind::Exposure;
    double planned = 0.0; ///< s
    double actual = 0.0;  ///< s

    bool operator==(const PhaseSummary&) const = default;
};

struct RunSummary {
    std::string plan_name;
    std::string scene_name;
    std::string theme;
    ControlType control = ControlType::Active;
    std::string navigation; ///< "Teleportation", "Standard control", ...
    std::uint64_t seed = 0;
    std::vector<PhaseSummary> phases;
    double duration = 0.0; ///< s, clipped to the planned total
    bool stopped_early = false;
    double mean_linear_speed = 0.0;  ///< m/s
    double mean_angular_speed = 0.0; ///< deg/s
    double optic_flow_proxy = 0.0;   ///< mean(|w|/90 + |v|/1) / 2, dimensionless
    MotionBreakdown breakdown;
    int fms_prompts = 0;
    int fms_responses = 0;
    std::optional<double> mean_fms;
    std::optional<int> max_fms;
    int coins_total = 0;
    int coins_collected = 0;
    int targets_hit = 0;
    double hardware_fov = 110.0;
    std::vector<registry::PresetDoc> vision_presets;

    bool operator==(const RunSummary&) const = default;
};

nlohmann::json to_json(const RunSummary& s);
RunSummary summary_from_json(const registry::Registry& registry, const nlohmann::json& doc);

/// Display label of a plan's navigation (translation providers first, else turn providers).
std::string navigation_label(const SessionPlan& plan);

/// Time-weighted motion statistics over a uniformly spaced pose trace (trapezoid weights).
struct MotionStats {
    double mean_linear_speed = 0.0;
    double mean_angular_speed = 0.0;
    double optic_flow_proxy = 0.0;
    MotionBreakdown breakdown;
};

MotionStats motion_stats(std::span<const vision::PoseSample> poses, double dt, const BreakdownThresholds& th = {});

struct RunArtifacts {
    std::string pose_csv;    ///< `t,px,py,pz,qw,qx,qy,qz`
    std::string event_csv;   ///< `t,kind,payload_json`
    std::string effects_csv; ///< empty when no vision preset is active
    RunSummary summary;
};

std::string pose_csv(std::span<const vision::PoseSample> poses);
std::string event_csv(std::span<const EventRecord> events);

/// Throws Conflict unless the session finished or was stopped.
RunArtifacts finalize(const SessionState& state, const BreakdownThresholds& th = {});

/// Writes poses.csv, events.csv, effects.csv (when present) and summary.json into `dir`.
std::vector<std::filesystem::path> write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& dir);

} // namespace csaf::runtime
