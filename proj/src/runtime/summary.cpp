#include "csaf/runtime/summary.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/registry/builtin_types.hpp"

#include <algorithm>
#include <cmath>

namespace csaf::runtime {

using nlohmann::json;
namespace loco = locomotion;

std::vector<std::string> breakdown_lines(const MotionBreakdown& b) {
    static constexpr const char* linear_axes[3] = {"lateral", "vertical", "longitudinal"};
    static constexpr const char* rotation_axes[3] = {"Pitch", "Yaw", "Roll"};
    auto minutes = [](double s) {
        const double m = std::round(s / 60.0 * 100.0) / 100.0;
        if (m > 0.0) return csv::format_number(m) + " min";
        return csv::format_number(std::round(s * 100.0) / 100.0) + " s";
    };
    std::vector<std::string> out;
    for (int i = 0; i < 3; ++i)
        if (b.linear_accel[i] > 0.0)
            out.push_back(std::string("Linear acceleration along ") + linear_axes[i] + " - " + minutes(b.linear_accel[i]));
    for (int i = 0; i < 3; ++i)
        if (b.rotation[i] > 0.0)
            out.push_back(std::string("Rotation along ") + rotation_axes[i] + " axis - " + minutes(b.rotation[i]));
    return out;
}

std::string navigation_label(const SessionPlan& plan) {
    if (plan.control == ControlType::Passive) return "Passive (pre-defined motion)";
    auto label = [](loco::ProviderKind k) -> std::string {
        switch (k) {
        case loco::ProviderKind::ContinuousMove: return "Standard control";
        case loco::ProviderKind::Teleport: return "Teleportation";
        case loco::ProviderKind::GrabMove: return "Grab move";
        case loco::ProviderKind::PathFollow: return "Path following";
        case loco::ProviderKind::ContinuousTurn: return "Continuous turn";
        case loco::ProviderKind::SnapTurn: return "Snap turn";
        }
        return "?";
    };
    std::vector<std::string> moves, turns;
    auto add = [](std::vector<std::string>& list, std::string s) {
        if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(std::move(s));
    };
    for (const auto* side : {&plan.left_providers, &plan.right_providers})
        for (const auto& c : *side) {
            const auto kind = loco::provider_kind_from_type(c.type);
            if (!kind) continue;
            const bool turning = *kind == loco::ProviderKind::ContinuousTurn || *kind == loco::ProviderKind::SnapTurn;
            add(turning ? turns : moves, label(*kind));
        }
    const auto& chosen = moves.empty() ? turns : moves;
    std::string out;
    for (const auto& s : chosen) out += (out.empty() ? "" : " + ") + s;
    return out.empty() ? "None" : out;
}

MotionStats motion_stats(std::span<const vision::PoseSample> poses, double dt, const BreakdownThresholds& th) {
    MotionStats out;
    if (poses.size() < 3) return out;
    const auto kin = vision::kinematics_from_trace(poses, dt);
    double total_w = 0.0, lin = 0.0, ang = 0.0, flow = 0.0;
    for (std::size_t i = 0; i < kin.size(); ++i) {
        const double w = (i == 0 || i + 1 == kin.size()) ? 0.5 * dt : dt;
        const Eigen::Matrix3d to_body = poses[i].pose.orientation.toRotationMatrix().transpose();
        const Vec3 a = to_body * kin[i].linear_accel;
        const Vec3 omega = to_body * kin[i].angular_velocity;
        const double v = kin[i].linear_velocity.norm();
        const double wn = kin[i].angular_velocity.norm();
        total_w += w;
        lin += w * v;
        ang += w * wn;
        flow += w * 0.5 * (wn / 90.0 + v / 1.0);
        // body axes: x lateral/pitch, y vertical/yaw, z longitudinal/roll
        for (int k = 0; k < 3; ++k) {
            if (std::abs(a[k]) > th.linear_accel) out.breakdown.linear_accel[k] += w;
            if (std::abs(omega[k]) > th.angular_rate) out.breakdown.rotation[k] += w;
        }
    }
    out.mean_linear_speed = lin / total_w;
    out.mean_angular_speed = ang / total_w;
    out.optic_flow_proxy = flow / total_w;
    return out;
}

std::string pose_csv(std::span<const vision::PoseSample> poses) {
    csv::Writer w("t,px,py,pz,qw,qx,qy,qz");
    for (const auto& p : poses) {
        const auto& q = p.pose.orientation;
        w.field(p.t).field(p.pose.position.x()).field(p.pose.position.y()).field(p.pose.position.z());
        w.field(q.w()).field(q.x()).field(q.y()).field(q.z());
        w.end_row();
    }
    return w.str();
}

std::string event_csv(std::span<const EventRecord> events) {
    csv::Writer w("t,kind,payload_json");
    for (const auto& e : events) {
        w.field(e.t).field(to_string(e.kind)).field(e.payload.dump());
        w.end_row();
    }
    return w.str();
}

RunArtifacts finalize(const SessionState& s, const BreakdownThresholds& th) {
    require(s.finished || s.stopped, ErrorCode::Conflict, "session is still running");
    const SessionPlan& plan = s.plan();
    const SessionResources& res = *s.resources;
    RunArtifacts out;
    out.pose_csv = pose_csv(s.pose_log);
    out.event_csv = event_csv(s.event_log);
    const double log_dt = 1.0 / plan.log_rate;
    if (res.effects.any() && s.pose_log.size() >= 3)
        out.effects_csv = vision::effect_stream_csv(vision::effect_stream(s.pose_log, log_dt, res.effects));

    RunSummary& sum = out.summary;
    sum.plan_name = plan.name;
    sum.scene_name = plan.scene.name;
    sum.theme = plan.scene.theme;
    sum.control = plan.control;
    sum.navigation = navigation_label(plan);
    sum.seed = plan.seed;
    sum.duration = s.finished ? res.total_duration : std::min(s.clock, res.total_duration);
    sum.stopped_early = s.stopped;
    double start = 0.0;
    for (const auto& p : plan.phases) {
        sum.phases.push_back({p.kind, p.duration, std::clamp(sum.duration - start, 0.0, p.duration)});
        start += p.duration;
    }
    const MotionStats stats = motion_stats(s.pose_log, log_dt, th);
    sum.mean_linear_speed = stats.mean_linear_speed;
    sum.mean_angular_speed = stats.mean_angular_speed;
    sum.optic_flow_proxy = stats.optic_flow_proxy;
    sum.breakdown = stats.breakdown;

    double rating_sum = 0.0;
    for (const auto& e : s.event_log) {
        if (e.kind == EventKind::FmsPrompt) ++sum.fms_prompts;
        if (e.kind == EventKind::TargetHit) ++sum.targets_hit;
        if (e.kind == EventKind::FmsResponse) {
            const int r = e.payload.at("rating").get<int>();
            ++sum.fms_responses;
            rating_sum += r;
            sum.max_fms = std::max(sum.max_fms.value_or(r), r);
        }
    }
    if (sum.fms_responses > 0) sum.mean_fms = rating_sum / sum.fms_responses;
    sum.coins_total = static_cast<int>(res.collectibles.size());
    sum.coins_collected = static_cast<int>(s.collected.size());
    sum.hardware_fov = res.effects.hardware_fov;
    std::vector<std::string> seen;
    for (auto it = res.presets.rbegin(); it != res.presets.rend(); ++it) {
        // the last preset of a type wins, matching effects_from_presets
        if (std::find(seen.begin(), seen.end(), it->target_type) != seen.end()) continue;
        seen.push_back(it->target_type);
        namespace rb = registry::builtin;
        static const std::vector<std::string> vision_types = {rb::kFovRestrictor, rb::kVisionSnapper,
                                                              rb::kColorManipulation, rb::kDepthOfField,
                                                              rb::kPixelize, rb::kRestFrames};
        if (std::find(vision_types.begin(), vision_types.end(), it->target_type) != vision_types.end())
            sum.vision_presets.insert(sum.vision_presets.begin(), *it);
    }
    return out;
}

json to_json(const RunSummary& s) {
    json phases = json::array();
    for (const auto& p : s.phases) phases.push_back({{"kind", to_string(p.kind)}, {"planned", p.planned}, {"actual", p.actual}});
    json presets = json::array();
    for (const auto& p : s.vision_presets) presets.push_back(registry::to_json(p));
    return json{{"plan", s.plan_name},
                {"scene", s.scene_name},
                {"theme", s.theme},
                {"control", to_string(s.control)},
                {"navigation", s.navigation},
                {"seed", s.seed},
                {"phases", phases},
                {"duration", s.duration},
                {"stopped_early", s.stopped_early},
                {"mean_linear_speed", s.mean_linear_speed},
                {"mean_angular_speed", s.mean_angular_speed},
                {"optic_flow_proxy", s.optic_flow_proxy},
                {"breakdown",
                 {{"linear_accel", s.breakdown.linear_accel},
                  {"rotation", s.breakdown.rotation},
                  {"lines", breakdown_lines(s.breakdown)}}},
                {"fms", {{"prompts", s.fms_prompts},
                         {"responses", s.fms_responses},
                         {"mean", s.mean_fms ? json(*s.mean_fms) : json(nullptr)},
                         {"max", s.max_fms ? json(*s.max_fms) : json(nullptr)}}},
                {"coins", {{"total", s.coins_total}, {"collected", s.coins_collected}}},
                {"targets_hit", s.targets_hit},
                {"hardware_fov", s.hardware_fov},
                {"vision_presets", presets}};
}

RunSummary summary_from_json(const registry::Registry& registry, const json& d) {
    RunSummary s;
    try {
        s.plan_name = d.at("plan").get<std::string>();
        s.scene_name = d.at("scene").get<std::string>();
        s.theme = d.at("theme").get<std::string>();
        s.control = d.at("control").get<std::string>() == "passive" ? ControlType::Passive : ControlType::Active;
        s.navigation = d.at("navigation").get<std::string>();
        s.seed = d.at("seed").get<std::uint64_t>();
        for (const auto& p : d.at("phases")) {
            const auto kind = phase_kind_from_string(p.at("kind").get<std::string>());
            require(kind.has_value(), ErrorCode::Parse, "unknown phase kind in summary");
            s.phases.push_back({*kind, p.at("planned").get<double>(), p.at("actual").get<double>()});
        }
        s.duration = d.at("duration").get<double>();
        s.stopped_early = d.at("stopped_early").get<bool>();
        s.mean_linear_speed = d.at("mean_linear_speed").get<double>();
        s.mean_angular_speed = d.at("mean_angular_speed").get<double>();
        s.optic_flow_proxy = d.at("optic_flow_proxy").get<double>();
        s.breakdown.linear_accel = d.at("breakdown").at("linear_accel").get<std::array<double, 3>>();
        s.breakdown.rotation = d.at("breakdown").at("rotation").get<std::array<double, 3>>();
        const json& f = d.at("fms");
        s.fms_prompts = f.at("prompts").get<int>();
        s.fms_responses = f.at("responses").get<int>();
        if (!f.at("mean").is_null()) s.mean_fms = f.at("mean").get<double>();
        if (!f.at("max").is_null()) s.max_fms = f.at("max").get<int>();
        s.coins_total = d.at("coins").at("total").get<int>();
        s.coins_collected = d.at("coins").at("collected").get<int>();
        s.targets_hit = d.at("targets_hit").get<int>();
        s.hardware_fov = d.at("hardware_fov").get<double>();
        for (const auto& p : d.at("vision_presets")) s.vision_presets.push_back(registry::preset_from_json(registry, p));
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed summary: ") + e.what());
    }
    return s;
}

std::vector<std::filesystem::path> write_artifacts(const RunArtifacts& a, const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> written;
    auto put = [&](const char* name, const std::string& text) {
        csv::write_file(dir / name, text);
        written.push_back(dir / name);
    };
    put("poses.csv", a.pose_csv);
    put("events.csv", a.event_csv);
    if (!a.effects_csv.empty()) put("effects.csv", a.effects_csv);
    put("summary.json", to_json(a.summary).dump(2) + "\n");
    return written;
}

} // namespace csaf::runtime
