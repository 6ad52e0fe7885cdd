#include "csaf/runtime/plan.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace csaf::runtime {

using nlohmann::json;
namespace loco = locomotion;
namespace sus = susceptibility;

const char* to_string(PhaseKind kind) {
    switch (kind) {
    case PhaseKind::Baseline: return "baseline";
    case PhaseKind::Exposure: return "exposure";
    case PhaseKind::Break: return "break";
    }
    return "?";
}

const char* to_string(ControlType type) { return type == ControlType::Active ? "active" : "passive"; }

std::optional<PhaseKind> phase_kind_from_string(std::string_view name) {
    for (auto k : {PhaseKind::Baseline, PhaseKind::Exposure, PhaseKind::Break})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

double SessionPlan::total_duration() const {
    double total = 0.0;
    for (const auto& p : phases) total += p.duration;
    return total;
}

void validate(const SessionPlan& plan) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    require(!plan.phases.empty(), ErrorCode::InvalidArgument, "plan has no phases");
    for (const auto& p : plan.phases)
        require(positive(p.duration), ErrorCode::InvalidArgument, "phase durations must be > 0");
    require(positive(plan.fms.interval), ErrorCode::InvalidArgument, "fms interval must be > 0");
    require(plan.fms.scale_min <= plan.fms.scale_max, ErrorCode::InvalidArgument, "fms scale_min exceeds scale_max");
    require(positive(plan.log_rate), ErrorCode::InvalidArgument, "log_rate must be > 0");
    require(positive(plan.dt), ErrorCode::InvalidArgument, "dt must be > 0");
    require(std::isfinite(plan.pickup_radius) && plan.pickup_radius >= 0.0, ErrorCode::InvalidArgument,
            "pickup_radius must be >= 0");
    require(!plan.coin_count || *plan.coin_count >= 0, ErrorCode::InvalidArgument, "coin_count must be >= 0");
    if (plan.control == ControlType::Passive) {
        require(plan.left_providers.empty() && plan.right_providers.empty(), ErrorCode::InvalidArgument,
                "a passive plan cannot list providers");
        require(plan.passive.sensitivity.has_value() != !plan.passive.segments.empty(), ErrorCode::InvalidArgument,
                "a passive plan needs exactly one of a sensitivity config or explicit segments");
    } else {
        require(!plan.passive.sensitivity && plan.passive.segments.empty(), ErrorCode::InvalidArgument,
                "an active plan cannot carry a passive schedule");
    }
    if (plan.fms_responses) {
        require(positive(plan.fms_responses->latency) || plan.fms_responses->latency == 0.0,
                ErrorCode::InvalidArgument, "fms response latency must be >= 0");
        require(!plan.fms_responses->ratings.empty(), ErrorCode::InvalidArgument, "fms_responses lists no ratings");
    }
    for (const auto& s : plan.script)
        require(std::isfinite(s.from) && s.to >= s.from, ErrorCode::InvalidArgument, "script step ends before it starts");
}

namespace {

Vec3 vec3_from(const json& v) {
    require(v.is_array() && v.size() == 3, ErrorCode::Parse, "expected [x, y, z]");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& ref) {
    std::filesystem::path p(ref);
    return p.is_absolute() ? p : base / p;
}

json load_json(const std::filesystem::path& file) {
    const std::string text = csv::read_file(file);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, file.string() + ": " + e.what());
    }
}

std::vector<loco::Action> actions_from(const json& list) {
    std::vector<loco::Action> out;
    for (const auto& a : list) {
        const auto action = loco::action_from_string(a.get<std::string>());
        require(action.has_value(), ErrorCode::Parse, "unknown action '" + a.get<std::string>() + "'");
        out.push_back(*action);
    }
    return out;
}

std::vector<loco::ProviderCandidate> providers_from(const json& list, loco::Side side) {
    std::vector<loco::ProviderCandidate> out;
    for (const auto& entry : list) {
        require(entry.is_object() && entry.contains("type"), ErrorCode::Parse, "provider entries need a type");
        loco::ProviderCandidate c;
        c.type = entry.at("type").get<std::string>();
        const auto kind = loco::provider_kind_from_type(c.type);
        if (kind) {
            c.params = provider_params_from_json(*kind, entry.value("params", json::object()));
            // a missing action list binds the kind's own action
            const auto actions = entry.contains("actions") ? actions_from(entry.at("actions"))
                                                           : std::vector<loco::Action>{loco::action_of(*kind)};
            (side == loco::Side::Left ? c.left_actions : c.right_actions) = actions;
        } else if (entry.contains("actions")) {
            (side == loco::Side::Left ? c.left_actions : c.right_actions) = actions_from(entry.at("actions"));
        }
        out.push_back(std::move(c));
    }
    return out;
}

sus::StimulusSegment segment_from(const json& d) {
    sus::StimulusSegment s;
    const std::string kind = d.at("kind").get<std::string>();
    bool known = false;
    for (auto k : {sus::SegmentKind::Indicator, sus::SegmentKind::Rotation, sus::SegmentKind::Translation,
                   sus::SegmentKind::Pause, sus::SegmentKind::ReturnToMenu})
        if (kind == sus::to_string(k)) {
            s.kind = k;
            known = true;
        }
    require(known, ErrorCode::Parse, "unknown segment kind '" + kind + "'");
    s.duration = d.value("duration", 0.0);
    s.magnitude = d.value("magnitude", s.kind == sus::SegmentKind::Rotation ? 360.0 : 0.0);
    s.direction = d.value("direction", 1);
    require(s.direction == 1 || s.direction == -1, ErrorCode::Parse, "segment direction must be 1 or -1");
    if (d.contains("axis")) {
        const std::string axis = d.at("axis").get<std::string>();
        s.rotation_axis = sus::rotation_axis_from_string(axis);
        if (!s.rotation_axis) s.translation_axis = sus::translation_axis_from_string(axis);
        require(s.rotation_axis || s.translation_axis, ErrorCode::Parse, "unknown axis '" + axis + "'");
    }
    return s;
}

ScriptStep script_step_from(const json& d) {
    ScriptStep s;
    s.from = d.at("from").get<double>();
    s.to = d.at("to").get<double>();
    const auto side = loco::side_from_string(d.value("side", std::string("left")));
    require(side.has_value(), ErrorCode::Parse, "script side must be left or right");
    s.side = *side;
    s.input.joystick = Vec2(d.value("jx", 0.0), d.value("jy", 0.0));
    s.input.grip = d.value("grip", false);
    s.input.trigger = d.value("trigger", false);
    s.input.validate_button = d.value("validate", false);
    if (d.contains("controller_position")) s.input.controller_pose.position = vec3_from(d.at("controller_position"));
    if (d.contains("controller_orientation")) {
        const json& q = d.at("controller_orientation");
        require(q.is_array() && q.size() == 4, ErrorCode::Parse, "controller_orientation is [w, x, y, z]");
        s.input.controller_pose.orientation =
            Quat(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>()).normalized();
    }
    return s;
}

} // namespace

loco::ProviderParams provider_params_from_json(loco::ProviderKind kind, const json& d) {
    require(d.is_object(), ErrorCode::Parse, "provider params must be an object");
    loco::ProviderParams p;
    switch (kind) {
    case loco::ProviderKind::ContinuousMove:
        p.speed = d.value("speed", p.speed);
        p.heading_relative = d.value("heading_relative", p.heading_relative);
        break;
    case loco::ProviderKind::Teleport: p.teleport_threshold = d.value("threshold", p.teleport_threshold); break;
    case loco::ProviderKind::GrabMove: p.grab_scale = d.value("scale", p.grab_scale); break;
    case loco::ProviderKind::ContinuousTurn: p.turn_rate = d.value("turn_rate", p.turn_rate); break;
    case loco::ProviderKind::SnapTurn:
        p.snap_angle = d.value("snap_angle", p.snap_angle);
        p.snap_threshold = d.value("threshold", p.snap_threshold);
        break;
    case loco::ProviderKind::PathFollow:
        p.follow_speed = d.value("follow_speed", p.follow_speed);
        p.path_ref = d.value("path", std::string("scene"));
        break;
    }
    return p;
}

SessionPlan plan_from_json(const json& d, const std::filesystem::path& base_dir) {
    require(d.is_object(), ErrorCode::Parse, "plan must be a JSON object");
    SessionPlan plan;
    try {
        plan.name = d.value("name", plan.name);
        for (const auto& p : d.at("phases")) {
            const auto kind = phase_kind_from_string(p.at("kind").get<std::string>());
            require(kind.has_value(), ErrorCode::Parse, "unknown phase kind '" + p.at("kind").get<std::string>() + "'");
            plan.phases.push_back({*kind, p.at("duration").get<double>()});
        }
        const json& scene = d.at("scene");
        if (scene.is_string())
            plan.scene = environment::load_scene_description(resolve(base_dir, scene.get<std::string>()));
        else
            plan.scene = environment::scene_from_json(scene);

        const std::string control = d.value("control", std::string("active"));
        require(control == "active" || control == "passive", ErrorCode::Parse, "control must be active or passive");
        plan.control = control == "active" ? ControlType::Active : ControlType::Passive;
        if (d.contains("providers")) {
            const json& pr = d.at("providers");
            if (pr.contains("left")) plan.left_providers = providers_from(pr.at("left"), loco::Side::Left);
            if (pr.contains("right")) plan.right_providers = providers_from(pr.at("right"), loco::Side::Right);
        }
        if (d.contains("passive")) {
            const json& ps = d.at("passive");
            if (ps.contains("sensitivity")) {
                const json& cfg = ps.at("sensitivity");
                plan.passive.sensitivity = sus::sensitivity_from_json(
                    cfg.is_string() ? load_json(resolve(base_dir, cfg.get<std::string>())) : cfg);
            }
            if (ps.contains("segments"))
                for (const auto& s : ps.at("segments")) plan.passive.segments.push_back(segment_from(s));
        }
        if (d.contains("coin_count")) plan.coin_count = d.at("coin_count").get<int>();
        if (d.contains("fms")) {
            const json& f = d.at("fms");
            plan.fms.interval = f.value("interval", plan.fms.interval);
            plan.fms.scale_min = f.value("scale_min", plan.fms.scale_min);
            plan.fms.scale_max = f.value("scale_max", plan.fms.scale_max);
        }
        plan.log_rate = d.value("log_rate", plan.log_rate);
        plan.dt = d.value("dt", plan.dt);
        plan.seed = d.value("seed", plan.seed);
        plan.pickup_radius = d.value("pickup_radius", plan.pickup_radius);
        if (d.contains("presets"))
            for (const auto& p : d.at("presets"))
                plan.presets.push_back(p.is_string() ? load_json(resolve(base_dir, p.get<std::string>())) : p);
        if (d.contains("inputs")) {
            const json& in = d.at("inputs");
            if (in.contains("trace"))
                plan.trace = loco::parse_input_trace(
                    csv::read_file(resolve(base_dir, in.at("trace").get<std::string>())));
            if (in.contains("script"))
                for (const auto& s : in.at("script")) plan.script.push_back(script_step_from(s));
        }
        if (d.contains("fms_responses")) {
            const json& r = d.at("fms_responses");
            FmsAutoResponses auto_r;
            auto_r.latency = r.value("latency", auto_r.latency);
            auto_r.ratings = r.at("ratings").get<std::vector<int>>();
            auto_r.source = r.value("source", auto_r.source);
            plan.fms_responses = auto_r;
        }
        if (d.contains("targets"))
            for (const auto& t : d.at("targets"))
                plan.targets.push_back({t.at("id").get<std::string>(), t.at("t").get<double>(),
                                        vec3_from(t.value("position", json::array({0.0, 0.0, 0.0})))});
        if (d.contains("hits"))
            for (const auto& h : d.at("hits")) plan.hits.push_back({h.at("t").get<double>(), h.at("target").get<std::string>()});
        if (d.contains("start")) {
            const json& s = d.at("start");
            if (s.contains("position")) plan.start_position = vec3_from(s.at("position"));
            plan.start_yaw = s.value("yaw", 0.0);
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed plan: ") + e.what());
    }
    validate(plan);
    return plan;
}

SessionPlan load_plan(const std::filesystem::path& file) {
    return plan_from_json(load_json(file), file.parent_path());
}

loco::InputTrace compile_inputs(const SessionPlan& plan) {
    loco::InputTrace out = plan.trace;
    for (const auto& s : plan.script) {
        out.samples.push_back({s.from, s.side, s.input});
        loco::ControllerInput neutral;
        neutral.controller_pose = s.input.controller_pose;
        out.samples.push_back({s.to, s.side, neutral});
    }
    std::stable_sort(out.samples.begin(), out.samples.end(),
                     [](const loco::InputSample& a, const loco::InputSample& b) { return a.t < b.t; });
    return out;
}

} // namespace csaf::runtime
