#include "csaf/susceptibility/sensitivity.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/core/random.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace csaf::susceptibility {

using nlohmann::json;

const char* to_string(RotationAxis axis) {
    switch (axis) {
    case RotationAxis::Pitch: return "pitch";
    case RotationAxis::Roll: return "roll";
    case RotationAxis::Yaw: return "yaw";
    }
    return "?";
}

const char* to_string(TranslationAxis axis) {
    switch (axis) {
    case TranslationAxis::Lateral: return "lateral";
    case TranslationAxis::Vertical: return "vertical";
    case TranslationAxis::Longitudinal: return "longitudinal";
    }
    return "?";
}

const char* to_string(SegmentKind kind) {
    switch (kind) {
    case SegmentKind::Indicator: return "indicator";
    case SegmentKind::Rotation: return "rotation";
    case SegmentKind::Translation: return "translation";
    case SegmentKind::Pause: return "pause";
    case SegmentKind::ReturnToMenu: return "return_to_menu";
    }
    return "?";
}

std::optional<RotationAxis> rotation_axis_from_string(std::string_view name) {
    for (auto a : {RotationAxis::Pitch, RotationAxis::Roll, RotationAxis::Yaw})
        if (name == to_string(a)) return a;
    return std::nullopt;
}

std::optional<TranslationAxis> translation_axis_from_string(std::string_view name) {
    for (auto a : {TranslationAxis::Lateral, TranslationAxis::Vertical, TranslationAxis::Longitudinal})
        if (name == to_string(a)) return a;
    return std::nullopt;
}

Vec3 unit_axis(RotationAxis axis) {
    switch (axis) {
    case RotationAxis::Pitch: return Vec3::UnitX();
    case RotationAxis::Roll: return Vec3::UnitZ();
    case RotationAxis::Yaw: return Vec3::UnitY();
    }
    return Vec3::UnitY();
}

Vec3 unit_axis(TranslationAxis axis) {
    switch (axis) {
    case TranslationAxis::Lateral: return Vec3::UnitX();
    case TranslationAxis::Vertical: return Vec3::UnitY();
    case TranslationAxis::Longitudinal: return Vec3::UnitZ();
    }
    return Vec3::UnitZ();
}

TranslationAxis paired_translation(RotationAxis axis) {
    switch (axis) {
    case RotationAxis::Pitch: return TranslationAxis::Lateral;
    case RotationAxis::Roll: return TranslationAxis::Longitudinal;
    case RotationAxis::Yaw: return TranslationAxis::Vertical;
    }
    return TranslationAxis::Vertical;
}

void validate(const SensitivityConfig& cfg) {
    require(cfg.reps_per_axis >= 1, ErrorCode::InvalidArgument, "reps_per_axis must be >= 1");
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    require(positive(cfg.turn_duration) && positive(cfg.pause_after_turn) && positive(cfg.pause_between_triples) &&
                positive(cfg.indicator_duration),
            ErrorCode::InvalidArgument, "sensitivity durations must be > 0");
    require(cfg.orders.size() == 3, ErrorCode::InvalidArgument, "exactly three axis orders are required");
    for (const auto& order : cfg.orders) {
        AxisOrder sorted = order;
        std::sort(sorted.begin(), sorted.end());
        require(sorted == AxisOrder{RotationAxis::Pitch, RotationAxis::Roll, RotationAxis::Yaw},
                ErrorCode::InvalidArgument, "each axis order must be a permutation of pitch, roll, yaw");
    }
    if (cfg.include_translation) {
        require(positive(cfg.translation.distance) && positive(cfg.translation.duration), ErrorCode::InvalidArgument,
                "translation distance and duration must be > 0");
        require(!cfg.translation.axes.empty(), ErrorCode::InvalidArgument, "translation needs at least one axis");
    }
}

StimulusSchedule make_schedule(std::vector<StimulusSegment> segments) {
    StimulusSchedule schedule;
    double t = 0.0;
    Posed pose;
    for (auto& seg : segments) {
        require(seg.duration >= 0.0 && std::isfinite(seg.duration), ErrorCode::InvalidArgument,
                "segment durations must be >= 0");
        seg.start = t;
        schedule.start_poses.push_back(pose);
        if (seg.kind == SegmentKind::Rotation) {
            require(seg.rotation_axis.has_value(), ErrorCode::InvalidArgument, "rotation segment without an axis");
            const double angle = seg.direction * seg.magnitude;
            pose.orientation = (axis_rotation_deg(unit_axis(*seg.rotation_axis), angle) * pose.orientation).normalized();
        } else if (seg.kind == SegmentKind::Translation) {
            require(seg.translation_axis.has_value(), ErrorCode::InvalidArgument, "translation segment without an axis");
            pose.position += seg.direction * seg.magnitude * unit_axis(*seg.translation_axis);
        }
        t += seg.duration;
    }
    schedule.segments = std::move(segments);
    schedule.end_time = t;
    return schedule;
}

StimulusSchedule build_sensitivity_schedule(const SensitivityConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    std::vector<AxisOrder> orders = cfg.orders;
    if (cfg.shuffle_orders) {
        Rng rng = make_rng(seed);
        shuffle(std::span<AxisOrder>(orders), rng);
    }
    std::vector<StimulusSegment> segs;
    auto pause = [&](double d) { segs.push_back({SegmentKind::Pause, 0.0, d, {}, {}, 0.0, 1}); };
    auto direction = [&](int rep) { return cfg.alternate_direction && rep % 2 == 1 ? -1 : 1; };

    for (std::size_t o = 0; o < orders.size(); ++o) {
        if (o > 0) pause(cfg.pause_between_triples);
        for (RotationAxis axis : orders[o]) {
            for (int rep = 0; rep < cfg.reps_per_axis; ++rep) {
                segs.push_back({SegmentKind::Indicator, 0.0, cfg.indicator_duration, axis, {}, 0.0, 1});
                segs.push_back({SegmentKind::Rotation, 0.0, cfg.turn_duration, axis, {}, 360.0, direction(rep)});
                pause(cfg.pause_after_turn);
            }
        }
    }
    if (cfg.include_translation) {
        for (std::size_t o = 0; o < orders.size(); ++o) {
            pause(cfg.pause_between_triples);
            for (RotationAxis paired : orders[o]) {
                const TranslationAxis axis = paired_translation(paired);
                if (std::find(cfg.translation.axes.begin(), cfg.translation.axes.end(), axis) ==
                    cfg.translation.axes.end())
                    continue;
                for (int rep = 0; rep < cfg.reps_per_axis; ++rep) {
                    segs.push_back({SegmentKind::Indicator, 0.0, cfg.indicator_duration, {}, axis, 0.0, 1});
                    segs.push_back({SegmentKind::Translation, 0.0, cfg.translation.duration, {}, axis,
                                    cfg.translation.distance, direction(rep)});
                    pause(cfg.pause_after_turn);
                }
            }
        }
    }
    segs.push_back({SegmentKind::ReturnToMenu, 0.0, 0.0, {}, {}, 0.0, 1});
    return make_schedule(std::move(segs));
}

Posed schedule_pose(const StimulusSchedule& schedule, double t) {
    const double slack = 1e-9 * std::max(1.0, schedule.end_time);
    require(std::isfinite(t) && t >= -slack && t <= schedule.end_time + slack, ErrorCode::OutOfRange,
            "time outside the schedule");
    if (schedule.segments.empty()) return {};
    t = std::clamp(t, 0.0, schedule.end_time);
    // last segment with a positive duration whose start is <= t
    std::size_t idx = 0;
    for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
        const auto& s = schedule.segments[i];
        if (s.start > t) break;
        if (s.duration > 0.0) idx = i;
    }
    const StimulusSegment& seg = schedule.segments[idx];
    Posed pose = schedule.start_poses[idx];
    const double f = seg.duration > 0.0 ? std::clamp((t - seg.start) / seg.duration, 0.0, 1.0) : 1.0;
    if (seg.kind == SegmentKind::Rotation) {
        const double angle = seg.direction * seg.magnitude * f;
        pose.orientation = (axis_rotation_deg(unit_axis(*seg.rotation_axis), angle) * pose.orientation).normalized();
    } else if (seg.kind == SegmentKind::Translation) {
        pose.position += seg.direction * seg.magnitude * f * unit_axis(*seg.translation_axis);
    }
    return pose;
}

std::string schedule_csv(const StimulusSchedule& schedule) {
    csv::Writer w("start,duration,kind,axis,magnitude");
    for (const auto& s : schedule.segments) {
        std::string axis;
        if (s.rotation_axis) axis = to_string(*s.rotation_axis);
        if (s.translation_axis) axis = to_string(*s.translation_axis);
        w.field(s.start).field(s.duration).field(to_string(s.kind)).field(axis).field(s.direction * s.magnitude);
        w.end_row();
    }
    return w.str();
}

json to_json(const SensitivityConfig& cfg) {
    json orders = json::array();
    for (const auto& o : cfg.orders) orders.push_back({to_string(o[0]), to_string(o[1]), to_string(o[2])});
    json axes = json::array();
    for (auto a : cfg.translation.axes) axes.push_back(to_string(a));
    return json{{"reps_per_axis", cfg.reps_per_axis},
                {"turn_duration", cfg.turn_duration},
                {"pause_after_turn", cfg.pause_after_turn},
                {"pause_between_triples", cfg.pause_between_triples},
                {"indicator_duration", cfg.indicator_duration},
                {"orders", orders},
                {"shuffle_orders", cfg.shuffle_orders},
                {"alternate_direction", cfg.alternate_direction},
                {"include_translation", cfg.include_translation},
                {"translation",
                 {{"axes", axes}, {"distance", cfg.translation.distance}, {"duration", cfg.translation.duration}}}};
}

SensitivityConfig sensitivity_from_json(const json& d) {
    require(d.is_object(), ErrorCode::Parse, "sensitivity config must be a JSON object");
    SensitivityConfig c;
    c.reps_per_axis = d.value("reps_per_axis", c.reps_per_axis);
    c.turn_duration = d.value("turn_duration", c.turn_duration);
    c.pause_after_turn = d.value("pause_after_turn", c.pause_after_turn);
    c.pause_between_triples = d.value("pause_between_triples", c.pause_between_triples);
    c.indicator_duration = d.value("indicator_duration", c.indicator_duration);
    c.shuffle_orders = d.value("shuffle_orders", c.shuffle_orders);
    c.alternate_direction = d.value("alternate_direction", c.alternate_direction);
    c.include_translation = d.value("include_translation", c.include_translation);
    if (d.contains("orders")) {
        c.orders.clear();
        for (const auto& o : d.at("orders")) {
            require(o.is_array() && o.size() == 3, ErrorCode::Parse, "each order lists three axes");
            AxisOrder order{};
            for (std::size_t i = 0; i < 3; ++i) {
                const auto axis = rotation_axis_from_string(o[i].get<std::string>());
                require(axis.has_value(), ErrorCode::Parse, "unknown rotation axis '" + o[i].get<std::string>() + "'");
                order[i] = *axis;
            }
            c.orders.push_back(order);
        }
    }
    if (d.contains("translation")) {
        const json& t = d.at("translation");
        c.translation.distance = t.value("distance", c.translation.distance);
        c.translation.duration = t.value("duration", c.translation.duration);
        if (t.contains("axes")) {
            c.translation.axes.clear();
            for (const auto& a : t.at("axes")) {
                const auto axis = translation_axis_from_string(a.get<std::string>());
                require(axis.has_value(), ErrorCode::Parse, "unknown translation axis '" + a.get<std::string>() + "'");
                c.translation.axes.push_back(*axis);
            }
        }
    }
    validate(c);
    return c;
}

} // namespace csaf::susceptibility
