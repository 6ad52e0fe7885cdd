#include "csaf/vision/from_presets.hpp"

#include "csaf/registry/builtin_types.hpp"

namespace csaf::vision {

namespace rb = registry::builtin;

namespace {

double real(const registry::FieldMap& v, std::string_view name, double fallback) {
    const auto it = v.find(name);
    return it == v.end() ? fallback : it->second.as_real();
}

bool flag(const registry::FieldMap& v, std::string_view name, bool fallback) {
    const auto it = v.find(name);
    return it == v.end() ? fallback : it->second.as_bool();
}

} // namespace

FovRestrictorCfg fov_config(const registry::FieldMap& v) {
    FovRestrictorCfg c;
    c.fov_max = real(v, "fov_max", c.fov_max);
    c.fov_min = real(v, "fov_min", c.fov_min);
    c.gain = real(v, "gain", c.gain);
    c.rate_limit = real(v, "rate_limit", c.rate_limit);
    c.dynamic = flag(v, "dynamic", c.dynamic);
    c.use_angular = flag(v, "use_angular", c.use_angular);
    c.angular_gain = real(v, "angular_gain", c.angular_gain);
    validate(c);
    return c;
}

SnapperCfg snapper_config(const registry::FieldMap& v) {
    SnapperCfg c;
    c.omega_threshold = real(v, "omega_threshold", c.omega_threshold);
    c.fade_out = real(v, "fade_out", c.fade_out);
    c.hold = real(v, "hold", c.hold);
    c.fade_in = real(v, "fade_in", c.fade_in);
    validate(c);
    return c;
}

ColorCfg color_config(const registry::FieldMap& v) {
    ColorCfg c;
    c.hue_delta_r = real(v, "hue_delta_r", c.hue_delta_r);
    c.hue_delta_g = real(v, "hue_delta_g", c.hue_delta_g);
    c.hue_delta_b = real(v, "hue_delta_b", c.hue_delta_b);
    c.hue_delta_w = real(v, "hue_delta_w", c.hue_delta_w);
    c.saturation_delta = real(v, "saturation_delta", c.saturation_delta);
    c.contrast_delta = real(v, "contrast_delta", c.contrast_delta);
    c.k_lin = real(v, "k_lin", c.k_lin);
    c.k_rot = real(v, "k_rot", c.k_rot);
    validate(c);
    return c;
}

DofCfg dof_config(const registry::FieldMap& v) {
    DofCfg c;
    c.focus_distance = real(v, "focus_distance", c.focus_distance);
    c.max_blur = real(v, "max_blur", c.max_blur);
    c.dynamic = flag(v, "dynamic", c.dynamic);
    c.probe_depth = real(v, "probe_depth", c.probe_depth);
    return c;
}

PixelizeCfg pixelize_config(const registry::FieldMap& v) {
    PixelizeCfg c;
    if (const auto it = v.find("screen_height"); it != v.end()) c.screen_height = static_cast<int>(it->second.as_integer());
    return c;
}

RestFrameCfg rest_frame_config(const registry::FieldMap& v) {
    RestFrameCfg c = nose_rest_frame();
    if (const auto it = v.find("model"); it != v.end() && it->second.as_enum() == "hat") c = hat_rest_frame();
    if (const auto it = v.find("offset_position"); it != v.end()) c.offset.position = it->second.as_vector3();
    if (const auto it = v.find("offset_rotation"); it != v.end()) c.offset.orientation = it->second.as_quaternion();
    return c;
}

EffectsConfig effects_from_presets(const registry::Registry& registry, std::span<const registry::PresetDoc> presets) {
    EffectsConfig out;
    for (const auto& raw : presets) {
        const registry::PresetDoc doc = registry::conform_preset(registry, raw);
        const std::string& t = doc.target_type;
        if (t == rb::kFovRestrictor) {
            out.fov = fov_config(doc.values);
        } else if (t == rb::kVisionSnapper) {
            out.snapper = snapper_config(doc.values);
        } else if (t == rb::kColorManipulation) {
            out.color = color_config(doc.values);
        } else if (t == rb::kDepthOfField) {
            out.dof = dof_config(doc.values);
        } else if (t == rb::kPixelize) {
            out.pixelize = pixelize_config(doc.values);
        } else if (t == rb::kRestFrames) {
            out.rest_frame = rest_frame_config(doc.values);
        }
    }
    return out;
}

} // namespace csaf::vision
