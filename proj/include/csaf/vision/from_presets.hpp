#pragma once

#include "csaf/registry/preset.hpp"
#include "csaf/vision/effect_stream.hpp"

#include <span>

namespace csaf::vision {

FovRestrictorCfg fov_config(const registry::FieldMap& values);
SnapperCfg snapper_config(const registry::FieldMap& values);
ColorCfg color_config(const registry::FieldMap& values);
DofCfg dof_config(const registry::FieldMap& values);
PixelizeCfg pixelize_config(const registry::FieldMap& values);
RestFrameCfg rest_frame_config(const registry::FieldMap& values);

/// Builds the effect set from Vision presets; presets for other types are ignored.
EffectsConfig effects_from_presets(const registry::Registry& registry, std::span<const registry::PresetDoc> presets);

} // namespace csaf::vision
