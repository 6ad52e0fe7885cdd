#include "csaf/gateway/control_service.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/registry/builtin_types.hpp"

#include <chrono>
#include <cmath>

namespace csaf::gateway {

using nlohmann::json;
namespace rt = runtime;

json to_json(const TelemetryFrame& f) {
    const auto& q = f.pose.orientation;
    return json{{"seq", f.seq},
                {"t", f.t},
                {"phase", f.phase},
                {"pending_fms", f.pending_fms},
                {"pose",
                 {{"position", {f.pose.position.x(), f.pose.position.y(), f.pose.position.z()}},
                  {"orientation", {q.w(), q.x(), q.y(), q.z()}}}},
                {"effects", {{"fov", f.fov}, {"opacity", f.opacity}, {"color_weight", f.color_weight}}},
                {"events", f.recent_events}};
}

ControlService::ControlService(const registry::Registry& registry, ServiceConfig config)
    : registry_(&registry), config_(std::move(config)), presets_(registry, config_.preset_dir) {
    if (config_.preset_dir && std::filesystem::exists(*config_.preset_dir)) presets_.load_directory();
}

ControlService::~ControlService() { stop_background(); }

std::future<CommandResult> ControlService::submit(Command command) {
    Pending p{std::move(command), {}};
    auto fut = p.done.get_future();
    {
        std::lock_guard lock(queue_mutex_);
        queue_.push_back(std::move(p));
    }
    queue_cv_.notify_one();
    return fut;
}

CommandResult ControlService::execute(Command command) {
    auto fut = submit(std::move(command));
    if (!running_) drain_queue();
    return fut.get();
}

void ControlService::pump(int ticks) {
    drain_queue();
    advance(ticks);
}

void ControlService::drain_queue() {
    for (;;) {
        Pending p;
        {
            std::lock_guard lock(queue_mutex_);
            if (queue_.empty()) return;
            p = std::move(queue_.front());
            queue_.pop_front();
        }
        CommandResult result;
        {
            std::lock_guard lock(state_mutex_);
            result = apply(p.command);
        }
        p.done.set_value(std::move(result));
    }
}

CommandResult ControlService::apply(const Command& c) {
    try {
        switch (c.kind) {
        case CommandKind::LoadScene: return load_scene(c.payload);
        case CommandKind::ToggleFeature: return toggle_feature(c.payload);
        case CommandKind::CreatePreset: return create_preset(c.payload);
        case CommandKind::DeletePreset: return delete_preset(c.payload);
        case CommandKind::ApplyPreset: return apply_preset(c.payload);
        case CommandKind::StartSession: return start_session(c.payload);
        case CommandKind::StopSession: return stop_session();
        case CommandKind::SubmitFms: return submit_fms(c.payload);
        case CommandKind::SubmitHit: return submit_hit(c.payload);
        case CommandKind::AdvanceSet: return advance_set(c.payload);
        }
    } catch (const Error& e) {
        return error_result(e.code(), e.what());
    } catch (const json::exception& e) {
        return error_result(ErrorCode::Parse, e.what());
    }
    return error_result(ErrorCode::InvalidArgument, "unknown command");
}

std::filesystem::path ControlService::resolve_path(const std::string& ref) const {
    std::filesystem::path p(ref);
    return p.is_absolute() ? p : config_.data_dir / p;
}

registry::EntityId ControlService::resolve_entity(const json& ref) const {
    if (ref.is_number_unsigned() || ref.is_number_integer()) {
        const registry::EntityId id{ref.get<std::uint64_t>()};
        require(scene_.find(id) != nullptr, ErrorCode::NotFound, "no entity with id " + ref.dump());
        return id;
    }
    require(ref.is_string(), ErrorCode::InvalidArgument, "entity must be an id or a name");
    const std::string name = ref.get<std::string>();
    std::optional<registry::EntityId> found;
    for (const auto& [id, e] : scene_.entities())
        if (e.display_name == name) {
            require(!found, ErrorCode::Conflict, "entity name '" + name + "' is ambiguous");
            found = id;
        }
    require(found.has_value(), ErrorCode::NotFound, "no entity named '" + name + "'");
    return *found;
}

CommandResult ControlService::load_scene(const json& p) {
    require(!session_ || !session_->running(), ErrorCode::Conflict, "cannot load a scene while a session runs");
    environment::SceneDescription desc;
    if (p.contains("file"))
        desc = environment::load_scene_description(resolve_path(p.at("file").get<std::string>()));
    else
        desc = environment::scene_from_json(p.at("scene"));
    scene_ = environment::instantiate_entities(*registry_, desc);
    scene_description_ = std::move(desc);
    return {200, scene_json()};
}

CommandResult ControlService::toggle_feature(const json& p) {
    const auto id = resolve_entity(p.at("entity"));
    const std::string type = p.at("type").get<std::string>();
    require(registry_->find(type) != nullptr, ErrorCode::NotFound, "unknown type '" + type + "'");
    scene_.replace(registry::toggle_feature(*registry_, scene_.entity(id), type, p.at("enabled").get<bool>()));
    return {200, {{"entity", id.value}, {"type", type}, {"enabled", p.at("enabled").get<bool>()}}};
}

CommandResult ControlService::create_preset(const json& p) {
    const std::string type = p.at("type").get<std::string>();
    const registry::TypeTag& tag = registry_->get(type);
    registry::FieldMap values;
    const json given = p.value("values", json::object());
    require(given.is_object(), ErrorCode::InvalidArgument, "'values' must be an object");
    for (const auto& [name, value] : given.items()) {
        const registry::FieldSpec* spec = tag.field(name);
        require(spec != nullptr, ErrorCode::UnknownField, "type '" + type + "' has no field '" + name + "'");
        values.insert_or_assign(name, registry::field_from_json(value, *spec));
    }
    const auto& doc = presets_.create_preset(type, p.at("name").get<std::string>(), values);
    return {201, registry::to_json(doc)};
}

CommandResult ControlService::delete_preset(const json& p) {
    presets_.remove(p.at("type").get<std::string>(), p.at("name").get<std::string>());
    return {200, {{"deleted", true}}};
}

CommandResult ControlService::apply_preset(const json& p) {
    const auto id = resolve_entity(p.at("entity"));
    const auto& doc = presets_.get(p.at("type").get<std::string>(), p.at("name").get<std::string>());
    std::vector<std::string> warnings;
    scene_.replace(registry::apply_preset(*registry_, scene_.entity(id), doc, &warnings));
    return {200, {{"entity", id.value}, {"warnings", warnings}}};
}

CommandResult ControlService::start_session(const json& p) {
    require(!session_ || !session_->running(), ErrorCode::Conflict, "a session is already running");
    json plan_doc;
    std::filesystem::path base = config_.data_dir;
    if (p.contains("plan_file")) {
        const auto file = resolve_path(p.at("plan_file").get<std::string>());
        plan_doc = json::parse(csv::read_file(file));
        base = file.parent_path();
    } else {
        plan_doc = p.at("plan");
    }
    if (!plan_doc.contains("scene")) plan_doc["scene"] = environment::to_json(scene_description_);
    if (p.contains("seed")) plan_doc["seed"] = p.at("seed");
    // enabled vision features of the live scene act as presets unless the plan brings its own
    if (!plan_doc.contains("presets")) {
        json presets = json::array();
        for (const auto& [id, entity] : scene_.entities())
            for (const auto& type : entity.active_features()) {
                const auto* tag = registry_->find(type);
                if (tag && tag->category == registry::Category::vision())
                    presets.push_back(registry::to_json(registry::extract_preset(*registry_, entity, type, "live")));
            }
        plan_doc["presets"] = presets;
    }
    rt::SessionPlan plan = rt::plan_from_json(plan_doc, base);
    session_ = rt::start_session(*registry_, std::move(plan));
    cursor_.emplace(session_->resources->inputs);
    ++session_counter_;
    events_streamed_ = 0;
    next_frame_t_ = 0.0;
    last_artifacts_.reset();
    last_artifact_dir_.reset();
    emit_frame(true);
    return {200, session_json()};
}

CommandResult ControlService::stop_session() {
    require(session_ && session_->running(), ErrorCode::Conflict, "no session is running");
    session_ = rt::stop(std::move(*session_));
    after_session_end();
    return {200, session_json()};
}

CommandResult ControlService::submit_fms(const json& p) {
    require(session_.has_value(), ErrorCode::Conflict, "no session");
    // copy so a rejected rating leaves the session intact
    session_ = rt::submit_fms(rt::SessionState(*session_), p.at("rating").get<int>(), p.value("source", std::string("participant")));
    emit_frame(true);
    return {200, {{"accepted", true}, {"t", session_->clock}}};
}

CommandResult ControlService::submit_hit(const json& p) {
    require(session_ && session_->running(), ErrorCode::Conflict, "no session is running");
    session_ = rt::submit_hit(rt::SessionState(*session_), p.at("target").get<std::string>());
    return {200, {{"accepted", true}, {"t", session_->clock}}};
}

CommandResult ControlService::advance_set(const json& p) {
    if (p.contains("set")) {
        const json& s = p.at("set");
        if (s.is_string()) {
            const auto file = resolve_path(s.get<std::string>());
            set_ = rt::experiment_set_from_json(json::parse(csv::read_file(file)));
            set_base_ = file.parent_path();
        } else {
            set_ = rt::experiment_set_from_json(s);
            set_base_ = config_.data_dir;
        }
        set_node_ = set_->start;
        set_visits_.clear();
        set_visits_[set_node_] = 1;
        set_done_ = false;
        return {200, set_json()};
    }
    require(set_.has_value(), ErrorCode::Conflict, "no experiment set loaded");
    require(!set_done_, ErrorCode::Conflict, "experiment set already finished");
    require(last_artifacts_.has_value() && (!session_ || !session_->running()), ErrorCode::Conflict,
            "advance needs a finished session for the current node");
    const auto next = rt::next_node(*set_, set_node_, rt::node_results(last_artifacts_->summary), set_visits_);
    if (next) {
        set_node_ = *next;
        ++set_visits_[set_node_];
    } else {
        set_done_ = true;
    }
    return {200, set_json()};
}

void ControlService::advance(int ticks) {
    std::lock_guard lock(state_mutex_);
    if (!session_ || !session_->running()) return;
    const rt::SessionPlan& plan = session_->plan();
    for (int i = 0; i < ticks && session_->running(); ++i) {
        const locomotion::InputPair inputs = cursor_->advance_to(session_->clock);
        session_ = rt::tick(std::move(*session_), inputs, plan.dt);
        if (plan.fms_responses && session_->pending_fms &&
            session_->clock >= session_->pending_since + plan.fms_responses->latency - 1e-9) {
            int answered = 0;
            for (const auto& e : session_->event_log) answered += e.kind == rt::EventKind::FmsResponse;
            const auto& r = *plan.fms_responses;
            session_ = rt::submit_fms(rt::SessionState(*session_), r.ratings[answered % r.ratings.size()], r.source);
        }
        emit_frame(false);
    }
    if (!session_->running()) after_session_end();
}

void ControlService::after_session_end() {
    last_artifacts_ = rt::finalize(*session_);
    const auto dir = config_.data_dir / "runs" / (session_->plan().name + "-" + std::to_string(session_counter_));
    try {
        rt::write_artifacts(*last_artifacts_, dir);
        last_artifact_dir_ = dir;
    } catch (const Error&) {
        last_artifact_dir_.reset();
    }
    emit_frame(true);
}

void ControlService::emit_frame(bool force) {
    if (!session_) return;
    const rt::SessionState& s = *session_;
    if (!force && s.clock + 1e-9 < next_frame_t_) return;
    next_frame_t_ = s.clock + 1.0 / config_.telemetry_rate;

    TelemetryFrame f;
    f.t = s.clock;
    if (s.stopped)
        f.phase = "stopped";
    else if (s.finished)
        f.phase = "finished";
    else
        f.phase = rt::to_string(*s.phase());
    f.pending_fms = s.pending_fms;
    f.pose = s.head;
    f.fov = s.resources->effects.fov ? s.resources->effects.fov->fov_max : s.resources->effects.hardware_fov;
    if (s.effects) {
        f.fov = s.effects->fov;
        f.opacity = s.effects->opacity;
        f.color_weight = s.effects->color.weight;
    }
    for (std::size_t i = events_streamed_; i < s.event_log.size(); ++i) {
        const auto& e = s.event_log[i];
        f.recent_events.push_back({{"t", e.t}, {"kind", rt::to_string(e.kind)}, {"payload", e.payload}});
    }
    events_streamed_ = s.event_log.size();
    {
        std::lock_guard lock(telemetry_mutex_);
        // session time restarts with each session; keep the stream monotone per session by seq
        f.seq = next_seq_++;
        frames_.push_back(std::move(f));
        while (frames_.size() > config_.telemetry_history) frames_.pop_front();
    }
    telemetry_cv_.notify_all();
}

std::vector<TelemetryFrame> ControlService::frames_after(std::uint64_t after, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(telemetry_mutex_);
    telemetry_cv_.wait_for(lock, timeout, [&] { return !frames_.empty() && frames_.back().seq > after; });
    std::vector<TelemetryFrame> out;
    for (const auto& f : frames_)
        if (f.seq > after) out.push_back(f);
    return out;
}

std::uint64_t ControlService::latest_seq() const {
    std::lock_guard lock(telemetry_mutex_);
    return frames_.empty() ? 0 : frames_.back().seq;
}

void ControlService::start_background() {
    if (running_.exchange(true)) return;
    worker_ = std::thread([this] {
        using clock = std::chrono::steady_clock;
        auto last = clock::now();
        double budget = 0.0;
        while (running_) {
            drain_queue();
            const auto now = clock::now();
            const double wall = std::chrono::duration<double>(now - last).count();
            last = now;
            double dt = 0.0;
            bool live = false;
            {
                std::lock_guard lock(state_mutex_);
                live = session_ && session_->running();
                if (live) dt = session_->plan().dt;
            }
            if (live) {
                budget += wall * config_.time_scale;
                const int ticks = static_cast<int>(std::min(std::floor(budget / dt), 10000.0));
                budget -= ticks * dt;
                advance(ticks);
            } else {
                budget = 0.0;
            }
            std::unique_lock lock(queue_mutex_);
            queue_cv_.wait_for(lock, std::chrono::milliseconds(5), [&] { return !queue_.empty() || !running_; });
        }
        drain_queue();
    });
}

void ControlService::stop_background() {
    if (!running_.exchange(false)) return;
    queue_cv_.notify_all();
    if (worker_.joinable()) worker_.join();
}

json ControlService::scene_snapshot() const {
    std::lock_guard lock(state_mutex_);
    return scene_json();
}

json ControlService::session_snapshot() const {
    std::lock_guard lock(state_mutex_);
    return session_json();
}

json ControlService::set_snapshot() const {
    std::lock_guard lock(state_mutex_);
    return set_json();
}

json ControlService::scene_json() const {
    json categories = json::array();
    for (const auto& c : registry_->list_categories()) categories.push_back(c.name);
    json types = json::array();
    for (const auto& t : registry_->types()) {
        json fields = json::array();
        for (const auto& f : t.fields)
            fields.push_back({{"name", f.name},
                              {"type", registry::to_string(f.type)},
                              {"unit", f.unit},
                              {"default", registry::field_to_json(f.default_value)},
                              {"options", f.enum_options}});
        types.push_back({{"identifier", t.identifier},
                         {"category", t.category.name},
                         {"extends", t.extends ? json(*t.extends) : json(nullptr)},
                         {"fields", fields}});
    }
    json entities = json::array();
    for (const auto& [id, e] : scene_.entities()) {
        json features = json::array();
        for (const auto& [type, att] : e.attachments) {
            json values = json::object();
            for (const auto& [name, v] : att.values) values[name] = registry::field_to_json(v);
            const auto* tag = registry_->find(type);
            features.push_back({{"type", type},
                                {"category", tag ? tag->category.name : ""},
                                {"enabled", att.enabled},
                                {"values", values}});
        }
        json extensions = json::array();
        for (const auto* t : registry::available_extensions(*registry_, e)) extensions.push_back(t->identifier);
        entities.push_back({{"id", id.value},
                            {"name", e.display_name},
                            {"features", features},
                            {"available_extensions", extensions}});
    }
    return json{{"name", scene_description_.name},
                {"theme", scene_description_.theme},
                {"complexity", scene_description_.complexity},
                {"categories", categories},
                {"types", types},
                {"entities", entities}};
}

json ControlService::presets_snapshot(std::string_view type) const {
    std::lock_guard lock(state_mutex_);
    json out = json::array();
    const auto docs = type.empty() ? presets_.all() : presets_.list_presets_for(type);
    for (const auto* d : docs) out.push_back(registry::to_json(*d));
    return out;
}

std::optional<json> ControlService::preset_snapshot(std::string_view type, std::string_view name) const {
    std::lock_guard lock(state_mutex_);
    const auto* d = presets_.find(type, name);
    if (!d) return std::nullopt;
    return registry::to_json(*d);
}

json ControlService::session_json() const {
    json out{{"active", false}};
    if (!session_) return out;
    const rt::SessionState& s = *session_;
    out["active"] = s.running();
    out["t"] = s.clock;
    out["phase"] = s.phase() ? json(rt::to_string(*s.phase())) : json(nullptr);
    out["phase_index"] = s.phase_index;
    out["pending_fms"] = s.pending_fms;
    out["stopped"] = s.stopped;
    out["finished"] = s.finished;
    out["plan"] = s.plan().name;
    out["coins_remaining"] = s.remaining_collectibles.size();
    out["coins_collected"] = s.collected.size();
    out["diagnostics"] = s.resources->diagnostics;
    json targets = json::array();
    for (const auto& tg : s.targets) targets.push_back({{"id", tg.spawn.id}, {"spawned", tg.spawned}, {"hit", tg.hit}});
    out["targets"] = std::move(targets);
    if (last_artifacts_) out["summary"] = rt::to_json(last_artifacts_->summary);
    if (last_artifact_dir_) out["artifacts"] = last_artifact_dir_->string();
    return out;
}

json ControlService::set_json() const {
    if (!set_) return json{{"loaded", false}};
    const auto* node = set_->node(set_node_);
    return json{{"loaded", true},
                {"name", set_->name},
                {"current", set_node_},
                {"plan", node ? json((set_base_ / node->plan).string()) : json(nullptr)},
                {"done", set_done_},
                {"visits", set_visits_}};
}

} // namespace csaf::gateway
