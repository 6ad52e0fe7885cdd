#pragma once

#include "csaf/core/geometry.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace csaf::susceptibility {

/// Pitch turns about the lateral (x) axis, roll about the longitudinal (z) axis, yaw about vertical (y).
enum class RotationAxis { Pitch, Roll, Yaw };
enum class TranslationAxis { Lateral, Vertical, Longitudinal };

using AxisOrder = std::array<RotationAxis, 3>;

const char* to_string(RotationAxis axis);
const char* to_string(TranslationAxis axis);
std::optional<RotationAxis> rotation_axis_from_string(std::string_view name);
std::optional<TranslationAxis> translation_axis_from_string(std::string_view name);
Vec3 unit_axis(RotationAxis axis);
Vec3 unit_axis(TranslationAxis axis);
/// The translation axis a rotation axis turns about (pitch -> lateral, roll -> longitudinal, yaw -> vertical).
TranslationAxis paired_translation(RotationAxis axis);

struct TranslationConfig {
    std::vector<TranslationAxis> axes = {TranslationAxis::Lateral, TranslationAxis::Vertical,
                                         TranslationAxis::Longitudinal};
    double distance = 4.0; ///< m per segment
    double duration = 4.0; ///< s per segment
};

struct SensitivityConfig {
    int reps_per_axis = 1;
    double turn_duration = 10.0;
    double pause_after_turn = 2.0;
    double pause_between_triples = 5.0;
    double indicator_duration = 1.0;
    std::vector<AxisOrder> orders = {{RotationAxis::Pitch, RotationAxis::Roll, RotationAxis::Yaw},
                                     {RotationAxis::Roll, RotationAxis::Yaw, RotationAxis::Pitch},
                                     {RotationAxis::Yaw, RotationAxis::Pitch, RotationAxis::Roll}};
    bool shuffle_orders = false;     ///< seeded shuffle of the order list
    bool alternate_direction = true; ///< flip the turn direction on every other repetition
    bool include_translation = false;
    TranslationConfig translation;
};

/// Throws InvalidArgument: orders must be three permutations of {pitch, roll, yaw}; durations > 0.
void validate(const SensitivityConfig& cfg);

enum class SegmentKind { Indicator, Rotation, Translation, Pause, ReturnToMenu };

const char* to_string(SegmentKind kind);

struct StimulusSegment {
    SegmentKind kind = SegmentKind::Pause;
    double start = 0.0;
    double duration = 0.0;
    std::optional<RotationAxis> rotation_axis;       ///< Indicator (announcing a turn) and Rotation
    std::optional<TranslationAxis> translation_axis; ///< Indicator (announcing a translation) and Translation
    double magnitude = 0.0; ///< deg (rotation) or m (translation), always positive
    int direction = 1;      ///< +1 or -1
};

/// Gap-free passive-motion timeline with the camera pose at every segment start.
struct StimulusSchedule {
    std::vector<StimulusSegment> segments;
    std::vector<Posed> start_poses;
    double end_time = 0.0;
};

StimulusSchedule build_sensitivity_schedule(const SensitivityConfig& cfg, std::uint64_t seed);

/// Assembles a schedule from segments (starts are recomputed to tile time from zero).
StimulusSchedule make_schedule(std::vector<StimulusSegment> segments);

/// Camera pose at time t in [0, end_time]; throws OutOfRange otherwise.
Posed schedule_pose(const StimulusSchedule& schedule, double t);

/// Header `start,duration,kind,axis,magnitude`; magnitude carries the direction sign.
std::string schedule_csv(const StimulusSchedule& schedule);

nlohmann::json to_json(const SensitivityConfig& cfg);
SensitivityConfig sensitivity_from_json(const nlohmann::json& doc);

} // namespace csaf::susceptibility
