#pragma once

#include "csaf/environment/scene_description.hpp"
#include "csaf/gateway/command.hpp"
#include "csaf/registry/preset_library.hpp"
#include "csaf/runtime/experiment_set.hpp"
#include "csaf/runtime/session.hpp"
#include "csaf/runtime/summary.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <future>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace csaf::gateway {

struct ServiceConfig {
    std::filesystem::path data_dir = ".";       ///< artifact root; relative files resolve here
    std::optional<std::filesystem::path> preset_dir;
    double telemetry_rate = 10.0;               ///< frames per second of session time
    double time_scale = 1.0;                    ///< session seconds per wall second (background mode)
    std::size_t telemetry_history = 4096;
};

/// Immutable snapshot pushed to stream subscribers.
struct TelemetryFrame {
    std::uint64_t seq = 0;
    double t = 0.0;
    std::string phase; ///< "baseline", "exposure", "break" or "idle"/"finished"/"stopped"
    bool pending_fms = false;
    Posed pose;
    double fov = 0.0;
    double opacity = 0.0;
    double color_weight = 0.0;
    nlohmann::json recent_events = nlohmann::json::array();
};

nlohmann::json to_json(const TelemetryFrame& frame);

/// Owns the scene, preset library and at most one session. All mutations pass through a single
/// FIFO queue and are applied between ticks by one thread, so concurrent callers see one total order.
class ControlService {
  public:
    ControlService(const registry::Registry& registry, ServiceConfig config);
    ~ControlService();

    ControlService(const ControlService&) = delete;
    ControlService& operator=(const ControlService&) = delete;

    /// Enqueues a command. The future resolves once the command has been applied.
    std::future<CommandResult> submit(Command command);
    /// submit() and wait. In manual mode this pumps the queue itself.
    CommandResult execute(Command command);

    /// Manual mode: apply queued commands, then advance a running session by up to `ticks` steps.
    void pump(int ticks = 0);
    /// Background mode: a worker paces the session in wall time scaled by time_scale.
    void start_background();
    void stop_background();

    [[nodiscard]] nlohmann::json scene_snapshot() const;
    [[nodiscard]] nlohmann::json presets_snapshot(std::string_view type = {}) const;
    [[nodiscard]] std::optional<nlohmann::json> preset_snapshot(std::string_view type, std::string_view name) const;
    [[nodiscard]] nlohmann::json session_snapshot() const;
    [[nodiscard]] nlohmann::json set_snapshot() const;

    /// Frames with seq > after, waiting up to `timeout` for one to appear.
    std::vector<TelemetryFrame> frames_after(std::uint64_t after, std::chrono::milliseconds timeout) const;
    [[nodiscard]] std::uint64_t latest_seq() const;

    [[nodiscard]] const registry::Registry& registry() const { return *registry_; }
    [[nodiscard]] const ServiceConfig& config() const { return config_; }

  private:
    struct Pending {
        Command command;
        std::promise<CommandResult> done;
    };

    CommandResult apply(const Command& command);
    CommandResult load_scene(const nlohmann::json& payload);
    CommandResult toggle_feature(const nlohmann::json& payload);
    CommandResult create_preset(const nlohmann::json& payload);
    CommandResult delete_preset(const nlohmann::json& payload);
    CommandResult apply_preset(const nlohmann::json& payload);
    CommandResult start_session(const nlohmann::json& payload);
    CommandResult stop_session();
    CommandResult submit_fms(const nlohmann::json& payload);
    CommandResult submit_hit(const nlohmann::json& payload);
    CommandResult advance_set(const nlohmann::json& payload);

    nlohmann::json scene_json() const;
    nlohmann::json session_json() const;
    nlohmann::json set_json() const;
    void drain_queue();
    void advance(int ticks);
    void after_session_end();
    void emit_frame(bool force);
    registry::EntityId resolve_entity(const nlohmann::json& ref) const;
    std::filesystem::path resolve_path(const std::string& ref) const;

    const registry::Registry* registry_;
    ServiceConfig config_;

    // queue
    std::mutex queue_mutex_;
    std::deque<Pending> queue_;

    // state, read by snapshots under state_mutex_
    mutable std::mutex state_mutex_;
    environment::SceneDescription scene_description_;
    registry::Scene scene_;
    registry::PresetLibrary presets_;
    std::optional<runtime::SessionState> session_;
    std::optional<locomotion::TraceCursor> cursor_;
    std::optional<runtime::RunArtifacts> last_artifacts_;
    std::optional<std::filesystem::path> last_artifact_dir_;
    std::uint64_t session_counter_ = 0;
    std::size_t events_streamed_ = 0;
    double next_frame_t_ = 0.0;
    std::optional<runtime::ExperimentSet> set_;
    std::filesystem::path set_base_;
    std::string set_node_;
    std::map<std::string, int, std::less<>> set_visits_;
    bool set_done_ = false;

    // telemetry
    mutable std::mutex telemetry_mutex_;
    mutable std::condition_variable telemetry_cv_;
    std::deque<TelemetryFrame> frames_;
    std::uint64_t next_seq_ = 1;

    std::atomic<bool> running_{false};
    std::thread worker_;
    std::condition_variable queue_cv_;
};

} // namespace csaf::gateway
