#include "csaf/runtime/session.hpp"

#include "csaf/core/error.hpp"
#include "csaf/environment/collectibles.hpp"
#include "csaf/locomotion/step.hpp"
#include "csaf/vision/from_presets.hpp"

#include <algorithm>
#include <cmath>

namespace csaf::runtime {

using nlohmann::json;
namespace loco = locomotion;
namespace sus = susceptibility;

namespace {

constexpr double kTimeEps = 1e-9;

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

int prompts_for(const SessionPlan& plan, double duration) {
    return static_cast<int>(std::floor(duration / plan.fms.interval + kTimeEps));
}

void log_event(SessionState& s, double t, EventKind kind, json payload = json::object()) {
    s.event_log.push_back({t, kind, std::move(payload)});
}

void begin_phase(SessionState& s, double t) {
    const PhaseSpec& phase = s.plan().phases[s.phase_index];
    s.phase_start = t;
    log_event(s, t, EventKind::PhaseStart,
              {{"phase", s.phase_index}, {"kind", to_string(phase.kind)}, {"duration", phase.duration}});
    if (phase.kind == PhaseKind::Exposure) {
        s.prompts_in_phase = prompts_for(s.plan(), phase.duration);
        s.next_prompt = t;
    }
}

void end_phase(SessionState& s, double t) {
    if (s.plan().phases[s.phase_index].kind == PhaseKind::Exposure) {
        if (s.pending_fms) {
            log_event(s, t, EventKind::Custom, {{"name", "fms_expired"}, {"prompt", s.prompt_index}});
            s.pending_fms = false;
        }
        s.prompts_in_phase = 0;
    }
    ++s.phase_index;
    if (s.phase_index < s.plan().phases.size()) {
        begin_phase(s, t);
    } else {
        s.finished = true;
        log_event(s, t, EventKind::Custom, {{"name", "session_end"}});
    }
}

// Fires prompts and phase boundaries due up to `now`, earliest first.
void advance_timeline(SessionState& s, double now) {
    while (!s.finished) {
        const double phase_end = s.phase_start + s.plan().phases[s.phase_index].duration;
        const double prompt = s.prompts_in_phase > 0 ? s.next_prompt : INFINITY;
        if (std::min(prompt, phase_end) > now + kTimeEps) break;
        if (prompt < phase_end - kTimeEps) {
            ++s.prompt_index;
            json payload{{"prompt", s.prompt_index}};
            if (s.pending_fms) payload["replaces_unanswered"] = true;
            log_event(s, prompt, EventKind::FmsPrompt, std::move(payload));
            s.pending_fms = true;
            s.pending_since = prompt;
            --s.prompts_in_phase;
            s.next_prompt = prompt + s.plan().fms.interval;
        } else {
            end_phase(s, phase_end);
        }
    }
}

// Target spawns and passive-schedule announcements due up to `now`.
void announce(SessionState& s, double now) {
    for (auto& target : s.targets)
        if (!target.spawned && target.spawn.t <= now + kTimeEps) {
            target.spawned = true;
            log_event(s, target.spawn.t, EventKind::Custom,
                      {{"name", "target_spawn"}, {"id", target.spawn.id}, {"position", vec_json(target.spawn.position)}});
        }
    const auto& schedule = s.resources->schedule;
    if (!schedule) return;
    while (s.passive_segment < schedule->segments.size()) {
        const auto& seg = schedule->segments[s.passive_segment];
        const double t = s.resources->passive_origin + seg.start;
        if (t > now + kTimeEps) break;
        if (seg.kind == sus::SegmentKind::Indicator) {
            json payload{{"segment", s.passive_segment}};
            if (seg.rotation_axis) payload["axis"] = sus::to_string(*seg.rotation_axis);
            if (seg.translation_axis) payload["axis"] = sus::to_string(*seg.translation_axis);
            log_event(s, t, EventKind::IndicatorShown, std::move(payload));
        } else if (seg.kind == sus::SegmentKind::ReturnToMenu) {
            log_event(s, t, EventKind::Custom, {{"name", "return_to_menu"}});
        }
        ++s.passive_segment;
    }
}

Posed passive_pose(const SessionState& s, double t) {
    const auto& schedule = *s.resources->schedule;
    const double local = std::clamp(t - s.resources->passive_origin, 0.0, schedule.end_time);
    return compose(s.rig.pose(), sus::schedule_pose(schedule, local));
}

void log_pose_rows(SessionState& s, double prev_clock, const Posed& prev, double dt) {
    const double rate = s.plan().log_rate;
    const double limit = std::min(s.clock, s.resources->total_duration) + kTimeEps;
    for (;;) {
        const double t = static_cast<double>(s.next_log_row) / rate;
        if (t > limit) break;
        const double f = std::clamp((t - prev_clock) / dt, 0.0, 1.0);
        Posed p;
        p.position = prev.position + f * (s.head.position - prev.position);
        p.orientation = prev.orientation.slerp(f, s.head.orientation).normalized();
        s.pose_log.push_back({t, p});
        ++s.next_log_row;
        if (s.tracker && s.pose_log.size() >= 3) {
            const std::span<const vision::PoseSample> tail(s.pose_log.data() + s.pose_log.size() - 3, 3);
            s.effects = s.tracker->update(vision::kinematics_from_trace(tail, 1.0 / rate).back(), 1.0 / rate);
        }
    }
}

void collect_coins(SessionState& s) {
    const double r2 = s.plan().pickup_radius * s.plan().pickup_radius;
    for (auto it = s.remaining_collectibles.begin(); it != s.remaining_collectibles.end();) {
        // horizontal distance: coins sit on the path while the rig may ride terrain
        const Vec3 d = it->second - s.head.position;
        if (d.x() * d.x() + d.z() * d.z() <= r2) {
            log_event(s, s.clock, EventKind::CoinCollected, {{"id", it->first}, {"position", vec_json(it->second)}});
            s.collected.push_back(it->first);
            it = s.remaining_collectibles.erase(it);
        } else {
            ++it;
        }
    }
}

void sort_new_events(SessionState& s, std::size_t from) {
    std::stable_sort(s.event_log.begin() + static_cast<std::ptrdiff_t>(from), s.event_log.end(),
                     [](const EventRecord& a, const EventRecord& b) { return a.t < b.t; });
}

} // namespace

const char* to_string(EventKind kind) {
    switch (kind) {
    case EventKind::PhaseStart: return "PhaseStart";
    case EventKind::FmsPrompt: return "FmsPrompt";
    case EventKind::FmsResponse: return "FmsResponse";
    case EventKind::CoinCollected: return "CoinCollected";
    case EventKind::TargetHit: return "TargetHit";
    case EventKind::Teleport: return "Teleport";
    case EventKind::Snap: return "Snap";
    case EventKind::IndicatorShown: return "IndicatorShown";
    case EventKind::Custom: return "Custom";
    }
    return "?";
}

std::optional<PhaseKind> SessionState::phase() const {
    if (phase_index >= plan().phases.size()) return std::nullopt;
    return plan().phases[phase_index].kind;
}

std::shared_ptr<const SessionResources> prepare_session(const registry::Registry& registry, SessionPlan plan) {
    validate(plan);
    auto res = std::make_shared<SessionResources>();
    const auto& scene = plan.scene;

    for (const auto& doc : plan.presets)
        res->presets.push_back(registry::preset_from_json(registry, doc, &res->diagnostics));
    res->effects = vision::effects_from_presets(registry, res->presets);

    if (scene.path) res->path = std::make_shared<const environment::PathTable>(environment::build_path(*scene.path));
    if (scene.terrain)
        res->terrain = std::make_shared<const environment::Heightmap>(environment::generate_terrain(*scene.terrain));

    const int coins = plan.coin_count.value_or(scene.collectibles.count);
    if (coins > 0) {
        const auto& free = scene.collectibles.free_positions;
        if (!free.empty()) {
            require(free.size() >= static_cast<std::size_t>(coins), ErrorCode::InvalidArgument,
                    "scene lists fewer collectible positions than coin_count");
            res->collectibles.assign(free.begin(), free.begin() + coins);
        } else {
            require(res->path != nullptr, ErrorCode::InvalidArgument, "collectibles need a scene path");
            res->collectibles = environment::place_collectibles(*res->path, coins,
                                                                scene.collectibles.seed.value_or(plan.seed),
                                                                scene.collectibles.jitter)
                                    .positions;
        }
    }

    if (plan.control == ControlType::Active) {
        auto bind_path = [&](std::vector<loco::ProviderCandidate> list) {
            for (auto& c : list)
                if (loco::provider_kind_from_type(c.type) == loco::ProviderKind::PathFollow) {
                    require(res->path != nullptr, ErrorCode::InvalidArgument, "PathFollow needs a scene path");
                    c.params.path = res->path;
                }
            return list;
        };
        loco::TeleportSurfaces surfaces;
        if (res->terrain)
            surfaces.terrain = res->terrain;
        else
            surfaces.planes.emplace_back(Vec3::UnitY(), 0.0);
        auto handler = loco::configure_handler(bind_path(plan.left_providers), bind_path(plan.right_providers),
                                               std::move(surfaces));
        res->providers = std::move(handler.set);
        for (auto& d : handler.diagnostics) res->diagnostics.push_back(std::move(d));
    } else {
        res->schedule = plan.passive.sensitivity ? sus::build_sensitivity_schedule(*plan.passive.sensitivity, plan.seed)
                                                 : sus::make_schedule(plan.passive.segments);
        double t = 0.0;
        for (const auto& p : plan.phases) {
            if (p.kind == PhaseKind::Exposure) break;
            t += p.duration;
        }
        res->passive_origin = t < plan.total_duration() ? t : 0.0;
    }

    res->inputs = compile_inputs(plan);
    res->total_duration = plan.total_duration();
    res->plan = std::move(plan);
    return res;
}

SessionState start_session(const registry::Registry& registry, SessionPlan plan) {
    return start_session(prepare_session(registry, std::move(plan)));
}

SessionState start_session(std::shared_ptr<const SessionResources> resources) {
    require(resources != nullptr, ErrorCode::InvalidArgument, "session resources missing");
    SessionState s;
    s.resources = std::move(resources);
    const SessionPlan& plan = s.plan();

    bool follows_path = false;
    for (const auto* side : {&s.resources->providers.left, &s.resources->providers.right})
        for (const auto& p : *side) follows_path |= p.kind == loco::ProviderKind::PathFollow;
    if (follows_path) {
        s.rig = loco::rig_at_path_start(*s.resources->path);
    } else {
        s.rig.position = plan.start_position;
        s.rig.heading = yaw_rotation_deg(plan.start_yaw);
    }
    s.head = s.resources->schedule ? passive_pose(s, 0.0) : s.rig.pose();

    for (std::size_t i = 0; i < s.resources->collectibles.size(); ++i)
        s.remaining_collectibles.emplace(static_cast<int>(i), s.resources->collectibles[i]);
    for (const auto& t : plan.targets) s.targets.push_back({t, false, false});
    if (s.resources->effects.any()) s.tracker.emplace(s.resources->effects);

    begin_phase(s, 0.0);
    announce(s, 0.0);
    advance_timeline(s, 0.0);
    sort_new_events(s, 0);
    s.pose_log.push_back({0.0, s.head});
    s.next_log_row = 1;
    return s;
}

SessionState tick(SessionState s, const loco::InputPair& inputs, double dt) {
    if (!s.running()) return s;
    require(std::abs(dt - s.plan().dt) <= 1e-12, ErrorCode::InvalidArgument, "tick dt differs from the plan's fixed step");
    const std::size_t first_event = s.event_log.size();
    const double prev_clock = s.clock;
    const Posed prev = s.head;
    ++s.tick_index;
    s.clock = static_cast<double>(s.tick_index) * dt;

    if (s.resources->schedule) {
        s.head = passive_pose(s, s.clock);
    } else {
        s.rig = loco::step(std::move(s.rig), s.resources->providers, inputs, dt);
        s.head = s.rig.pose();
        if (s.rig.active_provider_modes.contains(loco::ProviderKind::Teleport))
            log_event(s, s.clock, EventKind::Teleport, {{"to", vec_json(s.rig.position)}});
        if (s.rig.active_provider_modes.contains(loco::ProviderKind::SnapTurn))
            log_event(s, s.clock, EventKind::Snap, {{"yaw", yaw_of_deg(s.rig.heading)}});
    }
    log_pose_rows(s, prev_clock, prev, dt);
    collect_coins(s);
    announce(s, s.clock);
    advance_timeline(s, s.clock);
    sort_new_events(s, first_event);
    return s;
}

SessionState submit_fms(SessionState s, int rating, const std::string& source) {
    require(s.pending_fms, ErrorCode::Conflict, "no FMS prompt is pending");
    const auto& fms = s.plan().fms;
    require(rating >= fms.scale_min && rating <= fms.scale_max, ErrorCode::OutOfRange,
            "FMS rating " + std::to_string(rating) + " outside [" + std::to_string(fms.scale_min) + ", " +
                std::to_string(fms.scale_max) + "]");
    log_event(s, s.clock, EventKind::FmsResponse,
              {{"prompt", s.prompt_index}, {"rating", rating}, {"latency", s.clock - s.pending_since}, {"source", source}});
    s.pending_fms = false;
    return s;
}

SessionState submit_hit(SessionState s, const std::string& target_id) {
    auto it = std::find_if(s.targets.begin(), s.targets.end(),
                           [&](const Target& t) { return t.spawn.id == target_id; });
    require(it != s.targets.end(), ErrorCode::NotFound, "unknown target '" + target_id + "'");
    require(it->spawned && !it->hit, ErrorCode::Conflict, "target '" + target_id + "' is not live");
    it->hit = true;
    log_event(s, s.clock, EventKind::TargetHit, {{"id", target_id}, {"latency", s.clock - it->spawn.t}});
    return s;
}

SessionState stop(SessionState s) {
    if (!s.running()) return s;
    s.stopped = true;
    s.pending_fms = false;
    log_event(s, s.clock, EventKind::Custom, {{"name", "stopped"}});
    return s;
}

SessionState run_to_completion(SessionState s) {
    const SessionPlan& plan = s.plan();
    loco::TraceCursor cursor(s.resources->inputs);
    std::vector<ScheduledHit> hits = plan.hits;
    std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    std::size_t next_hit = 0;
    std::size_t answered = 0;
    while (s.running()) {
        const locomotion::InputPair inputs = cursor.advance_to(s.clock);
        s = tick(std::move(s), inputs, plan.dt);
        if (plan.fms_responses && s.pending_fms &&
            s.clock >= s.pending_since + plan.fms_responses->latency - kTimeEps) {
            const auto& r = *plan.fms_responses;
            s = submit_fms(std::move(s), r.ratings[answered++ % r.ratings.size()], r.source);
        }
        while (next_hit < hits.size() && hits[next_hit].t <= s.clock + kTimeEps)
            s = submit_hit(std::move(s), hits[next_hit++].target);
    }
    return s;
}

} // namespace csaf::runtime
