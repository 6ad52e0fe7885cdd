#include "csaf/vision/effects.hpp"

#include "csaf/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace csaf::vision {

void validate(const FovRestrictorCfg& cfg) {
    require(cfg.fov_min <= cfg.fov_max, ErrorCode::InvalidArgument, "fov_min must not exceed fov_max");
    require(cfg.fov_min > 0.0, ErrorCode::InvalidArgument, "fov_min must be > 0");
    require(cfg.rate_limit > 0.0, ErrorCode::InvalidArgument, "rate_limit must be > 0");
    require(cfg.gain >= 0.0 && cfg.angular_gain >= 0.0, ErrorCode::InvalidArgument, "gains must be >= 0");
}

double fov_target(const FovRestrictorCfg& cfg, double speed, double angular_speed) {
    double reduction = cfg.gain * std::abs(speed);
    if (cfg.use_angular) reduction += cfg.angular_gain * std::abs(angular_speed);
    return std::clamp(cfg.fov_max - reduction, cfg.fov_min, cfg.fov_max);
}

double fov_restriction(const FovRestrictorCfg& cfg, double speed, double prev_fov, double dt, double angular_speed) {
    if (!cfg.dynamic) return cfg.fov_min;
    const double target = fov_target(cfg, speed, angular_speed);
    const double max_change = cfg.rate_limit * dt;
    const double next = prev_fov + std::clamp(target - prev_fov, -max_change, max_change);
    return std::clamp(next, cfg.fov_min, cfg.fov_max);
}

void validate(const SnapperCfg& cfg) {
    require(cfg.omega_threshold > 0.0, ErrorCode::InvalidArgument, "omega_threshold must be > 0");
    require(cfg.fade_out >= 0.0 && cfg.hold >= 0.0 && cfg.fade_in >= 0.0, ErrorCode::InvalidArgument,
            "snapper durations must be >= 0");
}

namespace {

constexpr double kPhaseSlack = 1e-9;

} // namespace

std::pair<SnapperState, double> snapper_step(const SnapperCfg& cfg, SnapperState s, double omega, double dt) {
    const bool rotating = std::abs(omega) > cfg.omega_threshold;
    double remaining = dt;
    // Consume dt phase by phase so that phase boundaries land on exact times. Zero-length phases
    // under sustained rotation could cycle without consuming time, hence the transition cap.
    for (int transitions = 0;; ++transitions) {
        if (transitions > 8) return {s, s.opacity};
        switch (s.phase) {
        case SnapperPhase::Idle:
            if (!rotating || remaining <= 0.0) {
                s.opacity = 0.0;
                return {s, s.opacity};
            }
            s.phase = SnapperPhase::FadingOut;
            s.elapsed = 0.0;
            break;
        case SnapperPhase::FadingOut: {
            if (cfg.fade_out <= 0.0 || s.elapsed + remaining >= cfg.fade_out - kPhaseSlack) {
                remaining -= std::max(0.0, cfg.fade_out - s.elapsed);
                s.phase = SnapperPhase::Black;
                s.elapsed = 0.0;
                s.opacity = 1.0;
                if (remaining <= kPhaseSlack) return {s, s.opacity};
                break;
            }
            s.elapsed += remaining;
            s.opacity = s.elapsed / cfg.fade_out;
            return {s, s.opacity};
        }
        case SnapperPhase::Black:
            s.opacity = 1.0;
            if (s.elapsed + remaining >= cfg.hold - kPhaseSlack) {
                remaining -= std::max(0.0, cfg.hold - s.elapsed);
                s.phase = SnapperPhase::FadingIn;
                s.elapsed = 0.0;
                if (remaining <= kPhaseSlack) return {s, s.opacity};
                break;
            }
            s.elapsed += remaining;
            return {s, s.opacity};
        case SnapperPhase::FadingIn:
            if (rotating) {
                // restart the fade-out from the current opacity so opacity stays continuous
                s.phase = SnapperPhase::FadingOut;
                s.elapsed = s.opacity * cfg.fade_out;
                break;
            }
            if (cfg.fade_in <= 0.0 || s.elapsed + remaining >= cfg.fade_in - kPhaseSlack) {
                s.phase = SnapperPhase::Idle;
                s.elapsed = 0.0;
                s.opacity = 0.0;
                return {s, s.opacity};
            }
            s.elapsed += remaining;
            s.opacity = 1.0 - s.elapsed / cfg.fade_in;
            return {s, s.opacity};
        }
    }
}

void validate(const ColorCfg& cfg) {
    require(cfg.k_lin >= 0.0 && cfg.k_rot >= 0.0, ErrorCode::InvalidArgument, "color gains must be >= 0");
}

ColorDeltas color_weights(const ColorCfg& cfg, double a_lin, double a_rot) {
    const double w = std::clamp(cfg.k_lin * std::abs(a_lin) + cfg.k_rot * std::abs(a_rot), 0.0, 1.0);
    return {w,
            w * cfg.hue_delta_r,
            w * cfg.hue_delta_g,
            w * cfg.hue_delta_b,
            w * cfg.hue_delta_w,
            w * cfg.saturation_delta,
            w * cfg.contrast_delta};
}

double dof_blur(const DofCfg& cfg, double object_depth) {
    require(object_depth > 0.0, ErrorCode::InvalidArgument, "object depth must be > 0");
    require(cfg.focus_distance > 0.0, ErrorCode::InvalidArgument, "focus_distance must be > 0");
    if (std::isinf(object_depth)) return cfg.max_blur;
    return cfg.max_blur * std::min(1.0, std::abs(object_depth - cfg.focus_distance) / cfg.focus_distance);
}

Resolution pixelize_resolution(const PixelizeCfg& cfg, Resolution native) {
    require(cfg.screen_height > 0, ErrorCode::InvalidArgument, "screen_height must be > 0");
    require(native.width > 0 && native.height > 0, ErrorCode::InvalidArgument, "native resolution must be positive");
    require(cfg.screen_height <= native.height, ErrorCode::InvalidArgument,
            "screen_height exceeds the native height");
    const double width = static_cast<double>(native.width) * cfg.screen_height / native.height;
    return {static_cast<int>(std::lround(width)), cfg.screen_height};
}

RestFrameCfg nose_rest_frame() { return {RestFrameModel::Nose, {Vec3(0.0, -0.04, 0.09), Quat::Identity()}}; }

RestFrameCfg hat_rest_frame() { return {RestFrameModel::Hat, {Vec3(0.0, 0.12, 0.10), Quat::Identity()}}; }

const char* to_string(RestFrameModel model) { return model == RestFrameModel::Nose ? "nose" : "hat"; }

Posed rest_frame_pose(const Posed& head_pose, const RestFrameCfg& cfg) { return compose(head_pose, cfg.offset); }

} // namespace csaf::vision
