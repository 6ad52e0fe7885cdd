#pragma once

#include "csaf/core/geometry.hpp"

#include <string>
#include <utility>

namespace csaf::vision {

struct FovRestrictorCfg {
    double fov_max = 110.0;   ///< deg
    double fov_min = 60.0;    ///< deg
    double gain = 20.0;       ///< deg per m/s of linear speed
    double rate_limit = 0.2;  ///< deg/s
    bool dynamic = true;
    bool use_angular = false; ///< also respond to angular speed
    double angular_gain = 0.0; ///< deg per deg/s
};

void validate(const FovRestrictorCfg& cfg);

/// Target clamp(fov_max - gain * speed, fov_min, fov_max), approached from prev_fov by at most
/// rate_limit * dt. A static restrictor holds fov_min.
double fov_restriction(const FovRestrictorCfg& cfg, double speed, double prev_fov, double dt,
                       double angular_speed = 0.0);

/// The unlimited-rate target for a speed.
double fov_target(const FovRestrictorCfg& cfg, double speed, double angular_speed = 0.0);

struct SnapperCfg {
    double omega_threshold = 30.0; ///< deg/s
    double fade_out = 0.1;         ///< s
    double hold = 0.2;             ///< s
    double fade_in = 0.2;          ///< s
};

void validate(const SnapperCfg& cfg);

enum class SnapperPhase { Idle, FadingOut, Black, FadingIn };

struct SnapperState {
    SnapperPhase phase = SnapperPhase::Idle;
    double elapsed = 0.0; ///< time spent in the current phase
    double opacity = 0.0;
};

/// Blink-to-black state machine driven by angular speed.
std::pair<SnapperState, double> snapper_step(const SnapperCfg& cfg, SnapperState state, double omega, double dt);

struct ColorCfg {
    double hue_delta_r = 0.0; ///< deg
    double hue_delta_g = 0.0;
    double hue_delta_b = 0.0;
    double hue_delta_w = 0.0;
    double saturation_delta = 0.0;
    double contrast_delta = 0.0;
    double k_lin = 0.1;  ///< per m/s^2
    double k_rot = 0.01; ///< per deg/s^2
};

void validate(const ColorCfg& cfg);

struct ColorDeltas {
    double weight = 0.0;
    double hue_r = 0.0;
    double hue_g = 0.0;
    double hue_b = 0.0;
    double hue_w = 0.0;
    double saturation = 0.0;
    double contrast = 0.0;
};

/// w = clamp(k_lin * a_lin + k_rot * a_rot, 0, 1); deltas = w * configured deltas.
ColorDeltas color_weights(const ColorCfg& cfg, double a_lin, double a_rot);

struct DofCfg {
    double focus_distance = 2.0; ///< m
    double max_blur = 1.0;
    bool dynamic = true;
    double probe_depth = 10.0;   ///< m, depth reported in effect streams
};

/// max_blur * min(1, |depth - focus| / focus).
double dof_blur(const DofCfg& cfg, double object_depth);

struct PixelizeCfg {
    int screen_height = 270; ///< px
};

struct Resolution {
    int width = 0;
    int height = 0;
    bool operator==(const Resolution&) const = default;
};

/// Target render resolution keeping the native aspect. Advisory only: no HMD path consumes it.
Resolution pixelize_resolution(const PixelizeCfg& cfg, Resolution native);

enum class RestFrameModel { Nose, Hat };

struct RestFrameCfg {
    RestFrameModel model = RestFrameModel::Nose;
    Posed offset; ///< rest-frame object pose in the head frame
};

/// Nose below and ahead of the eyes; hat brim above and ahead.
RestFrameCfg nose_rest_frame();
RestFrameCfg hat_rest_frame();

const char* to_string(RestFrameModel model);

/// World pose of the rest-frame object: head_pose composed with the configured offset.
Posed rest_frame_pose(const Posed& head_pose, const RestFrameCfg& cfg);

} // namespace csaf::vision
