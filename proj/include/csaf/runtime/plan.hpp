#pragma once

#include "csaf/environment/scene_description.hpp"
#include "csaf/locomotion/handler.hpp"
#include "csaf/locomotion/input_trace.hpp"
#include "csaf/locomotion/step.hpp"
#include "csaf/susceptibility/sensitivity.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace csaf::runtime {

enum class PhaseKind { Baseline, Exposure, Break };
enum class ControlType { Active, Passive };

const char* to_string(PhaseKind kind);
const char* to_string(ControlType type);
std::optional<PhaseKind> phase_kind_from_string(std::string_view name);

struct PhaseSpec {
    PhaseKind kind = PhaseKind::Exposure;
    double duration = 0.0; ///< s
};

struct FmsSettings {
    double interval = 60.0;
    int scale_min = 0;
    int scale_max = 20;
};

/// Scripted answers: each prompt is answered `latency` seconds later with ratings[k mod size].
struct FmsAutoResponses {
    double latency = 2.0;
    std::vector<int> ratings;
    std::string source = "participant";
};

/// Passive motion: either a generated sensitivity battery or explicit segments.
struct PassiveMotion {
    std::optional<susceptibility::SensitivityConfig> sensitivity;
    std::vector<susceptibility::StimulusSegment> segments;
};

/// One scripted controller command held over [from, to).
struct ScriptStep {
    double from = 0.0;
    double to = 0.0;
    locomotion::Side side = locomotion::Side::Left;
    locomotion::ControllerInput input;
};

struct TargetSpawn {
    std::string id;
    double t = 0.0;
    Vec3 position = Vec3::Zero();
};

struct ScheduledHit {
    double t = 0.0;
    std::string target;
};

struct SessionPlan {
    std::string name = "session";
    std::vector<PhaseSpec> phases;
    environment::SceneDescription scene;
    ControlType control = ControlType::Active;
    std::vector<locomotion::ProviderCandidate> left_providers;
    std::vector<locomotion::ProviderCandidate> right_providers;
    PassiveMotion passive;
    std::optional<int> coin_count; ///< overrides the scene's collectible count
    FmsSettings fms;
    double log_rate = 50.0;       ///< Hz
    double dt = locomotion::kDefaultTimestep;
    std::uint64_t seed = 0;
    double pickup_radius = 0.5;   ///< m, horizontal distance
    std::vector<nlohmann::json> presets; ///< preset documents, decoded against the registry at start
    locomotion::InputTrace trace;        ///< replayed inputs, merged with the script
    std::vector<ScriptStep> script;
    std::optional<FmsAutoResponses> fms_responses;
    std::vector<TargetSpawn> targets;
    std::vector<ScheduledHit> hits;
    Vec3 start_position = Vec3::Zero();
    double start_yaw = 0.0; ///< deg

    [[nodiscard]] double total_duration() const;
};

/// Throws InvalidArgument on empty phases, non-positive durations/rates/interval, coin_count < 0,
/// inverted FMS scale or a provider/passive mismatch with the control type.
void validate(const SessionPlan& plan);

/// Decodes a plan. Relative file references (scene, trace, presets) resolve against base_dir.
SessionPlan plan_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
SessionPlan load_plan(const std::filesystem::path& file);

locomotion::ProviderParams provider_params_from_json(locomotion::ProviderKind kind, const nlohmann::json& doc);

/// Script steps flattened into a trace (a neutral sample closes each step); merged with `trace`.
locomotion::InputTrace compile_inputs(const SessionPlan& plan);

} // namespace csaf::runtime
