#include "csaf/report/report.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/registry/builtin_types.hpp"
#include "csaf/vision/from_presets.hpp"

#include <algorithm>
#include <cmath>

namespace csaf::report {

using nlohmann::json;
namespace rb = registry::builtin;

std::vector<Violation> validate_report(const StandardReport& r) {
    std::vector<Violation> out;
    auto check = [&](bool ok, std::string path, std::string message) {
        if (!ok) out.push_back({std::move(path), std::move(message)});
    };
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };

    const Demographics& d = r.demographics;
    check(d.participants >= 0, "demographics.participants", "must be >= 0");
    check(d.females >= 0, "demographics.females", "must be >= 0");
    check(d.experienced >= 0, "demographics.experienced", "must be >= 0");
    check(d.inexperienced >= 0, "demographics.inexperienced", "must be >= 0");
    check(d.females <= d.participants, "demographics.females", "exceeds the number of participants");
    check(d.experienced + d.inexperienced <= d.participants, "demographics.experienced",
          "experienced + inexperienced exceeds the number of participants");
    const AgeStats& a = d.age;
    const bool age_finite = std::isfinite(a.min) && std::isfinite(a.max) && std::isfinite(a.mean);
    check(age_finite, "demographics.age", "must be finite");
    check(a.min >= 0.0, "demographics.age.min", "must be >= 0");
    check(a.min <= a.max, "demographics.age.min", "exceeds age.max");
    check(a.mean >= a.min && a.mean <= a.max, "demographics.age.mean", "outside [age.min, age.max]");
    check(finite_nonneg(a.std), "demographics.age.std", "must be >= 0");

    const ExperimentSettings& e = r.experiment;
    check(e.sessions >= 0, "experiment.sessions", "must be >= 0");
    check(!e.baseline_min || finite_nonneg(*e.baseline_min), "experiment.baseline_min", "must be >= 0");
    check(finite_nonneg(e.exposure_min), "experiment.exposure_min", "must be >= 0");
    check(!e.break_min || finite_nonneg(*e.break_min), "experiment.break_min", "must be >= 0");
    check(e.motion_breakdown.empty() || static_cast<long long>(e.motion_breakdown.size()) == e.sessions,
          "experiment.motion_breakdown", "needs one entry per session");
    check(e.navigation_per_session.empty() || static_cast<long long>(e.navigation_per_session.size()) == e.sessions,
          "experiment.navigation_per_session", "needs one entry per session");
    check(!e.optic_flow || finite_nonneg(*e.optic_flow), "experiment.optic_flow", "must be >= 0");

    for (std::size_t i = 0; i < r.reduction_techniques.size(); ++i)
        check(!r.reduction_techniques[i].name.empty(), "reduction_techniques[" + std::to_string(i) + "].name",
              "must not be empty");
    check(std::isfinite(r.hardware.fov) && r.hardware.fov >= 0.0 && r.hardware.fov <= 360.0, "hardware.fov",
          "must lie in [0, 360]");
    return out;
}

const char* optic_flow_definition() {
    return "proxy: time mean of (|angular velocity| / 90 deg/s + |linear velocity| / 1 m/s) / 2";
}

Technique describe_technique(const registry::PresetDoc& preset) {
    const std::string& t = preset.target_type;
    const auto& v = preset.values;
    auto num = [](double x) { return csv::format_number(x); };
    if (t == rb::kFovRestrictor) {
        const auto c = vision::fov_config(v);
        return {"FOV reduction",
                c.dynamic ? std::string("Active during linear movement") + (c.use_angular ? " and rotation" : "")
                          : "Always active",
                "FOV reduction size (minimum " + num(c.fov_min) + " degrees) and speed (" + num(c.rate_limit) +
                    " degrees/s)"};
    }
    if (t == rb::kVisionSnapper) {
        const auto c = vision::snapper_config(v);
        return {"Vision snapper", "Active when angular speed exceeds " + num(c.omega_threshold) + " degrees/s",
                "Fade out " + num(c.fade_out) + " s, hold " + num(c.hold) + " s, fade in " + num(c.fade_in) + " s"};
    }
    if (t == rb::kColorManipulation) {
        const auto c = vision::color_config(v);
        return {"Color manipulation", "Active during linear or rotational acceleration",
                "Hue deltas R " + num(c.hue_delta_r) + ", G " + num(c.hue_delta_g) + ", B " + num(c.hue_delta_b) +
                    ", W " + num(c.hue_delta_w) + " degrees; saturation " + num(c.saturation_delta) + "; contrast " +
                    num(c.contrast_delta)};
    }
    if (t == rb::kDepthOfField) {
        const auto c = vision::dof_config(v);
        return {"Depth of field", c.dynamic ? "Active during movement" : "Always active",
                "Focus distance " + num(c.focus_distance) + " m, maximum blur " + num(c.max_blur)};
    }
    if (t == rb::kPixelize) {
        const auto c = vision::pixelize_config(v);
        return {"Pixelization", "Always active", "Screen height " + std::to_string(c.screen_height) + " px"};
    }
    if (t == rb::kRestFrames) {
        const auto c = vision::rest_frame_config(v);
        const Vec3& p = c.offset.position;
        return {"Rest frame", "Always active",
                std::string(vision::to_string(c.model)) + " at (" + num(p.x()) + ", " + num(p.y()) + ", " + num(p.z()) +
                    ") m from the eyes"};
    }
    fail(ErrorCode::InvalidArgument, "'" + t + "' is not a reduction technique");
}

StandardReport from_session(std::span<const runtime::RunSummary> sessions, const Demographics& demographics,
                            const Hardware& hardware, const StudyContext& context) {
    require(!sessions.empty(), ErrorCode::InvalidArgument, "a report needs at least one session");
    auto phase_total = [](const runtime::RunSummary& s, runtime::PhaseKind kind) {
        double total = 0.0;
        for (const auto& p : s.phases)
            if (p.kind == kind) total += p.actual;
        return total;
    };
    StandardReport r;
    r.demographics = demographics;
    r.hardware = hardware;
    ExperimentSettings& e = r.experiment;
    e.design = context.design;
    e.vr_content = context.vr_content;
    e.sessions = static_cast<long long>(sessions.size());

    const auto& first = sessions.front();
    const double baseline = phase_total(first, runtime::PhaseKind::Baseline);
    const double exposure = phase_total(first, runtime::PhaseKind::Exposure);
    const double rest = phase_total(first, runtime::PhaseKind::Break);
    for (const auto& s : sessions)
        require(phase_total(s, runtime::PhaseKind::Baseline) == baseline &&
                    phase_total(s, runtime::PhaseKind::Exposure) == exposure &&
                    phase_total(s, runtime::PhaseKind::Break) == rest,
                ErrorCode::InvalidArgument, "sessions disagree on baseline, exposure or break duration");
    if (baseline > 0.0) e.baseline_min = baseline / 60.0;
    e.exposure_min = exposure / 60.0;
    if (rest > 0.0) e.break_min = rest / 60.0;

    bool all_passive = true;
    double flow = 0.0;
    for (const auto& s : sessions) {
        const auto lines = runtime::breakdown_lines(s.breakdown);
        std::string joined;
        for (const auto& l : lines) joined += (joined.empty() ? "" : ", ") + l;
        e.motion_breakdown.push_back(joined.empty() ? "None" : joined);
        e.navigation_per_session.push_back(s.navigation);
        all_passive &= s.control == runtime::ControlType::Passive;
        flow += s.optic_flow_proxy;
    }
    e.control_type = all_passive ? runtime::ControlType::Passive : runtime::ControlType::Active;
    e.optic_flow = flow / static_cast<double>(sessions.size());

    for (const auto& s : sessions)
        for (const auto& p : s.vision_presets) {
            const Technique t = describe_technique(p);
            if (std::find(r.reduction_techniques.begin(), r.reduction_techniques.end(), t) == r.reduction_techniques.end())
                r.reduction_techniques.push_back(t);
        }
    return r;
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& d, const char* key) {
    if (!d.contains(key) || d.at(key).is_null()) return std::nullopt;
    return d.at(key).get<double>();
}

} // namespace

json to_json(const StandardReport& r) {
    const auto& d = r.demographics;
    const auto& e = r.experiment;
    json techniques = json::array();
    for (const auto& t : r.reduction_techniques)
        techniques.push_back({{"name", t.name}, {"apply_condition", t.apply_condition}, {"details", t.details}});
    return json{
        {"schema", "report.v1"},
        {"demographics",
         {{"participants", d.participants},
          {"females", d.females},
          {"experienced", d.experienced},
          {"inexperienced", d.inexperienced},
          {"age", {{"min", d.age.min}, {"max", d.age.max}, {"mean", d.age.mean}, {"std", d.age.std}}}}},
        {"experiment",
         {{"design", e.design},
          {"sessions", e.sessions},
          {"baseline_min", optional_json(e.baseline_min)},
          {"exposure_min", e.exposure_min},
          {"break_min", optional_json(e.break_min)},
          {"motion_breakdown", e.motion_breakdown},
          {"vr_content", e.vr_content},
          {"control_type", e.control_type == runtime::ControlType::Passive ? "Passive" : "Active"},
          {"navigation_per_session", e.navigation_per_session},
          {"optic_flow", optional_json(e.optic_flow)},
          {"optic_flow_definition", optic_flow_definition()}}},
        {"reduction_techniques", techniques},
        {"hardware", {{"hmd", r.hardware.hmd}, {"fov", r.hardware.fov}}}};
}

StandardReport report_from_json(const json& doc) {
    StandardReport r;
    try {
        require(doc.value("schema", std::string()) == "report.v1", ErrorCode::VersionUnsupported,
                "report schema must be report.v1");
        const json& d = doc.at("demographics");
        r.demographics.participants = d.at("participants").get<long long>();
        r.demographics.females = d.at("females").get<long long>();
        r.demographics.experienced = d.at("experienced").get<long long>();
        r.demographics.inexperienced = d.at("inexperienced").get<long long>();
        const json& a = d.at("age");
        r.demographics.age = {a.at("min").get<double>(), a.at("max").get<double>(), a.at("mean").get<double>(),
                              a.at("std").get<double>()};
        const json& e = doc.at("experiment");
        auto& x = r.experiment;
        x.design = e.at("design").get<std::string>();
        x.sessions = e.at("sessions").get<long long>();
        x.baseline_min = optional_from(e, "baseline_min");
        x.exposure_min = e.at("exposure_min").get<double>();
        x.break_min = optional_from(e, "break_min");
        x.motion_breakdown = e.value("motion_breakdown", std::vector<std::string>{});
        x.vr_content = e.at("vr_content").get<std::string>();
        const std::string control = e.at("control_type").get<std::string>();
        require(control == "Passive" || control == "Active", ErrorCode::Parse, "control_type must be Passive or Active");
        x.control_type = control == "Passive" ? runtime::ControlType::Passive : runtime::ControlType::Active;
        x.navigation_per_session = e.value("navigation_per_session", std::vector<std::string>{});
        x.optic_flow = optional_from(e, "optic_flow");
        for (const auto& t : doc.at("reduction_techniques"))
            r.reduction_techniques.push_back({t.at("name").get<std::string>(), t.value("apply_condition", std::string()),
                                              t.value("details", std::string())});
        const json& h = doc.at("hardware");
        r.hardware.hmd = h.at("hmd").get<std::string>();
        r.hardware.fov = h.at("fov").get<double>();
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed report: ") + e.what());
    }
    return r;
}

StandardReport parse_report(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("report is not JSON: ") + e.what());
    }
    return report_from_json(doc);
}

} // namespace csaf::report
