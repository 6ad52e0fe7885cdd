#include "csaf/vision/effect_stream.hpp"

#include "csaf/core/csv.hpp"

#include <algorithm>

namespace csaf::vision {

EffectsTracker::EffectsTracker(EffectsConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.fov) validate(*cfg_.fov);
    if (cfg_.snapper) validate(*cfg_.snapper);
    if (cfg_.color) validate(*cfg_.color);
    fov_ = cfg_.fov ? (cfg_.fov->dynamic ? cfg_.fov->fov_max : cfg_.fov->fov_min) : cfg_.hardware_fov;
}

EffectFrame EffectsTracker::update(const KinematicsSample& k, double dt) {
    EffectFrame frame;
    frame.t = k.t;
    const double speed = k.linear_velocity.norm();
    const double omega = k.angular_velocity.norm();
    if (cfg_.fov) fov_ = fov_restriction(*cfg_.fov, speed, fov_, dt, omega);
    frame.fov = fov_;
    if (cfg_.snapper) {
        auto [state, opacity] = snapper_step(*cfg_.snapper, snapper_, omega, dt);
        snapper_ = state;
        frame.opacity = opacity;
    }
    if (cfg_.color) frame.color = color_weights(*cfg_.color, k.linear_accel.norm(), k.angular_accel.norm());
    if (cfg_.dof) {
        const double blur = dof_blur(*cfg_.dof, cfg_.dof->probe_depth);
        // dynamic depth of field scales with linear speed, saturating at 1 m/s
        frame.blur = cfg_.dof->dynamic ? blur * std::min(1.0, speed) : blur;
    }
    return frame;
}

std::vector<EffectFrame> effect_stream(std::span<const PoseSample> poses, double dt, const EffectsConfig& cfg) {
    const auto kinematics = kinematics_from_trace(poses, dt);
    EffectsTracker tracker(cfg);
    std::vector<EffectFrame> out;
    out.reserve(kinematics.size());
    for (const auto& k : kinematics) out.push_back(tracker.update(k, dt));
    return out;
}

std::string effect_stream_csv(std::span<const EffectFrame> frames) {
    csv::Writer w("t,fov,opacity,hue_r,hue_g,hue_b,hue_w,sat,con,blur");
    for (const auto& f : frames) {
        w.field(f.t).field(f.fov).field(f.opacity);
        w.field(f.color.hue_r).field(f.color.hue_g).field(f.color.hue_b).field(f.color.hue_w);
        w.field(f.color.saturation).field(f.color.contrast).field(f.blur);
        w.end_row();
    }
    return w.str();
}

} // namespace csaf::vision
