#pragma once

#include "csaf/registry/preset.hpp"
#include "csaf/runtime/plan.hpp"
#include "csaf/vision/effect_stream.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace csaf::runtime {

enum class EventKind { PhaseStart, FmsPrompt, FmsResponse, CoinCollected, TargetHit, Teleport, Snap, IndicatorShown, Custom };

const char* to_string(EventKind kind);

struct EventRecord {
    double t = 0.0;
    EventKind kind = EventKind::Custom;
    nlohmann::json payload = nlohmann::json::object();
};

/// Everything a session derives from its plan once, shared read-only between state copies.
struct SessionResources {
    SessionPlan plan;
    std::shared_ptr<const environment::PathTable> path;
    std::shared_ptr<const environment::Heightmap> terrain;
    locomotion::ProviderSet providers;
    std::vector<std::string> diagnostics;
    std::optional<susceptibility::StimulusSchedule> schedule;
    std::vector<registry::PresetDoc> presets;
    vision::EffectsConfig effects;
    locomotion::InputTrace inputs;
    std::vector<Vec3> collectibles;
    double total_duration = 0.0;
    double passive_origin = 0.0; ///< session time the passive schedule starts (first exposure phase)
};

struct Target {
    TargetSpawn spawn;
    bool spawned = false;
    bool hit = false;
};

struct SessionState {
    std::shared_ptr<const SessionResources> resources;
    long long tick_index = 0;
    double clock = 0.0;
    std::size_t phase_index = 0;
    double phase_start = 0.0;
    bool finished = false; ///< every phase elapsed
    bool stopped = false;  ///< explicit stop
    locomotion::RigState rig;
    Posed head;            ///< logged pose (rig pose when active, schedule pose when passive)
    bool pending_fms = false;
    double pending_since = 0.0;
    int prompt_index = -1;
    int prompts_in_phase = 0;    ///< prompts still due in the current exposure
    double next_prompt = 0.0;
    std::map<int, Vec3> remaining_collectibles;
    std::vector<int> collected;
    std::vector<Target> targets;
    std::vector<EventRecord> event_log;
    std::vector<vision::PoseSample> pose_log;
    long long next_log_row = 0;
    std::size_t passive_segment = 0; ///< next schedule segment to announce
    std::optional<vision::EffectFrame> effects; ///< live effect snapshot from the newest pose rows
    std::optional<vision::EffectsTracker> tracker;

    [[nodiscard]] const SessionPlan& plan() const { return resources->plan; }
    [[nodiscard]] bool running() const { return !finished && !stopped; }
    [[nodiscard]] std::optional<PhaseKind> phase() const;
};

/// Builds resources from a plan: decodes presets, builds path/terrain, places collectibles,
/// configures providers or the passive schedule. Throws on an invalid plan.
std::shared_ptr<const SessionResources> prepare_session(const registry::Registry& registry, SessionPlan plan);

SessionState start_session(const registry::Registry& registry, SessionPlan plan);
SessionState start_session(std::shared_ptr<const SessionResources> resources);

/// One fixed step. `dt` must equal the plan's step. A stopped or finished session is returned unchanged.
SessionState tick(SessionState state, const locomotion::InputPair& inputs, double dt);

/// Throws Conflict without a pending prompt and OutOfRange outside the plan's scale.
SessionState submit_fms(SessionState state, int rating, const std::string& source = "participant");

/// Throws NotFound for an unknown target and Conflict for one not yet spawned or already hit.
SessionState submit_hit(SessionState state, const std::string& target_id);

SessionState stop(SessionState state);

/// Runs a whole plan headless, replaying its inputs and scripted FMS answers and hits.
SessionState run_to_completion(SessionState state);

} // namespace csaf::runtime
