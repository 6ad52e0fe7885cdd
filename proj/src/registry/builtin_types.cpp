#include "csaf/registry/builtin_types.hpp"

namespace csaf::registry {

namespace {

FieldSpec real(std::string name, std::string unit, double value) {
    return {std::move(name), FieldType::Real, std::move(unit), FieldValue(value), {}};
}
FieldSpec integer(std::string name, std::string unit, std::int64_t value) {
    return {std::move(name), FieldType::Integer, std::move(unit), FieldValue(value), {}};
}
FieldSpec boolean(std::string name, bool value) { return {std::move(name), FieldType::Boolean, "", FieldValue(value), {}}; }
FieldSpec string(std::string name, std::string value) {
    return {std::move(name), FieldType::String, "", FieldValue(std::move(value)), {}};
}
FieldSpec enumeration(std::string name, std::vector<std::string> options, std::string value) {
    return {std::move(name), FieldType::Enum, "", FieldValue(EnumValue{std::move(value)}), std::move(options)};
}

TypeTag type(const char* id, Category category, std::vector<FieldSpec> fields, std::optional<std::string> extends = {}) {
    return TypeTag{id, std::move(category), std::move(fields), std::move(extends), 1};
}

} // namespace

void register_builtin_types(Registry& r) {
    using namespace builtin;
    const auto experiment = Category::experiment();
    const auto environment = Category::environment();
    const auto vision = Category::vision();
    const auto locomotion = Category::locomotion();

    r.register_type(type(kGameHandler, experiment,
                         {enumeration("mode", {"coin", "shooting"}, "coin"), integer("coin_count", "", 10),
                          real("pickup_radius", "m", 0.5)}));
    r.register_type(type(kDataSaver, experiment, {real("log_rate", "Hz", 50.0)}));
    r.register_type(type(kFmsQuestionnaire, experiment,
                         {real("interval", "s", 60.0), integer("scale_min", "", 0), integer("scale_max", "", 20)}));
    r.register_type(type(kSensitivityTest, experiment,
                         {integer("reps_per_axis", "", 1), real("turn_duration", "s", 10.0),
                          real("pause_after_turn", "s", 2.0), real("pause_between_triples", "s", 5.0),
                          real("indicator_duration", "s", 1.0), boolean("include_translation", false),
                          real("translation_distance", "m", 4.0), real("translation_duration", "s", 4.0),
                          boolean("alternate_direction", true)}));
    r.register_type(type(kRodAndFrameTest, experiment,
                         {real("frame_tilt", "deg", 18.0), real("rod_tilt", "deg", 27.0),
                          integer("repetitions_per_permutation", "", 4), real("rod_step", "deg", 1.0)}));
    r.register_type(type(kCamera, experiment, {real("fov", "deg", 110.0)}));
    r.register_type(type(kCameraRotator, experiment,
                         {enumeration("axis", {"pitch", "roll", "yaw"}, "yaw"), real("rate", "deg/s", 0.0)},
                         std::string(kCamera)));

    r.register_type(type(kPathCreator, environment,
                         {boolean("closed", false), integer("sample_count", "", 1024),
                          enumeration("interpolation", {"catmull_rom", "linear"}, "catmull_rom")}));
    r.register_type(type(kCollectiblePlacer, environment,
                         {integer("count", "", 10), real("jitter", "m", 0.5), integer("seed", "", 0)}));
    r.register_type(type(kTerrainGenerator, environment,
                         {integer("seed", "", 0), integer("width", "", 64), integer("depth", "", 64),
                          real("cell_size", "m", 1.0), real("amplitude", "m", 2.0), real("frequency", "1/m", 0.05),
                          integer("octaves", "", 4), real("persistence", "", 0.5)}));
    r.register_type(type(kBackgroundMusic, environment,
                         {string("intro_track", ""), real("intro_duration", "s", 0.0), real("horizon", "s", 1200.0)}));

    r.register_type(type(kFovRestrictor, vision,
                         {real("fov_max", "deg", 110.0), real("fov_min", "deg", 60.0), real("gain", "deg/(m/s)", 20.0),
                          real("rate_limit", "deg/s", 0.2), boolean("dynamic", true), boolean("use_angular", false),
                          real("angular_gain", "deg/(deg/s)", 0.0)}));
    r.register_type(type(kVisionSnapper, vision,
                         {real("omega_threshold", "deg/s", 30.0), real("fade_out", "s", 0.1), real("hold", "s", 0.2),
                          real("fade_in", "s", 0.2)}));
    r.register_type(type(kColorManipulation, vision,
                         {real("hue_delta_r", "deg", 0.0), real("hue_delta_g", "deg", 0.0),
                          real("hue_delta_b", "deg", 0.0), real("hue_delta_w", "deg", 0.0),
                          real("saturation_delta", "", 0.0), real("contrast_delta", "", 0.0),
                          real("k_lin", "1/(m/s2)", 0.1), real("k_rot", "1/(deg/s2)", 0.01)}));
    r.register_type(type(kDepthOfField, vision,
                         {real("focus_distance", "m", 2.0), real("max_blur", "", 1.0), boolean("dynamic", true),
                          real("probe_depth", "m", 10.0)}));
    r.register_type(type(kPixelize, vision, {integer("screen_height", "px", 270)}));
    r.register_type(type(kRestFrames, vision,
                         {enumeration("model", {"nose", "hat"}, "nose"),
                          {"offset_position", FieldType::Vector3, "m", FieldValue(Vec3(0.0, -0.04, 0.09)), {}},
                          {"offset_rotation", FieldType::Quaternion, "", FieldValue(Quat::Identity()), {}}}));

    r.register_type(type(kLocomotionHandler, locomotion, {boolean("heading_relative", true)}));
    r.register_type(type(kContinuousMove, locomotion, {real("speed", "m/s", 2.0), boolean("heading_relative", true)}));
    r.register_type(type(kTeleportation, locomotion, {real("threshold", "", 0.7), real("max_distance", "m", 50.0)}));
    r.register_type(type(kGrabMove, locomotion, {real("scale", "", 1.0)}));
    r.register_type(type(kContinuousTurn, locomotion, {real("turn_rate", "deg/s", 90.0)}));
    r.register_type(type(kSnapTurn, locomotion, {real("snap_angle", "deg", 30.0), real("threshold", "", 0.7)}));
    r.register_type(type(kPathFollow, locomotion, {real("follow_speed", "m/s", 5.0), string("path", "scene")}));
}

Registry make_builtin_registry() {
    Registry r;
    register_builtin_types(r);
    return r;
}

} // namespace csaf::registry
