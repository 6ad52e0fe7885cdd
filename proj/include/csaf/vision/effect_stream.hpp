#pragma once

#include "csaf/vision/effects.hpp"
#include "csaf/vision/kinematics.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csaf::vision {

/// Active reduction techniques. Absent entries produce neutral output.
struct EffectsConfig {
    std::optional<FovRestrictorCfg> fov;
    std::optional<SnapperCfg> snapper;
    std::optional<ColorCfg> color;
    std::optional<DofCfg> dof;
    std::optional<PixelizeCfg> pixelize;
    std::optional<RestFrameCfg> rest_frame;
    double hardware_fov = 110.0; ///< deg, reported when no restrictor is active

    [[nodiscard]] bool any() const { return fov || snapper || color || dof || pixelize || rest_frame; }
};

struct EffectFrame {
    double t = 0.0;
    double fov = 0.0;
    double opacity = 0.0;
    ColorDeltas color;
    double blur = 0.0;
};

/// Carries effect state (FOV, snapper) across successive kinematics samples.
class EffectsTracker {
  public:
    explicit EffectsTracker(EffectsConfig cfg);

    EffectFrame update(const KinematicsSample& k, double dt);
    [[nodiscard]] const EffectsConfig& config() const { return cfg_; }

  private:
    EffectsConfig cfg_;
    double fov_;
    SnapperState snapper_;
};

std::vector<EffectFrame> effect_stream(std::span<const PoseSample> poses, double dt, const EffectsConfig& cfg);

/// Header `t,fov,opacity,hue_r,hue_g,hue_b,hue_w,sat,con,blur`.
std::string effect_stream_csv(std::span<const EffectFrame> frames);

} // namespace csaf::vision
