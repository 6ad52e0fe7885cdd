#include "csaf/core/error.hpp"
#include "csaf/core/random.hpp"
#include "csaf/registry/builtin_types.hpp"
#include "csaf/registry/preset.hpp"
#include "csaf/vision/effect_stream.hpp"
#include "csaf/vision/effects.hpp"
#include "csaf/vision/from_presets.hpp"
#include "csaf/vision/kinematics.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace csaf;
using namespace csaf::vision;

namespace {

std::vector<PoseSample> trace(int n, double dt, auto&& pose_of) {
    std::vector<PoseSample> out;
    for (int i = 0; i < n; ++i) out.push_back({i * dt, pose_of(i * dt)});
    return out;
}

// Step-by-step reference for the blink machine, written as explicit time bookkeeping.
struct SnapperOracle {
    SnapperCfg cfg;
    int phase = 0; // 0 idle, 1 out, 2 black, 3 in
    double elapsed = 0.0;
    double opacity = 0.0;
    void step(double omega, double dt) {
        const bool fast = omega > cfg.omega_threshold;
        if (phase == 0 && fast) { phase = 1; elapsed = 0.0; }
        else if (phase == 3 && fast) { phase = 1; elapsed = cfg.fade_out * opacity; }
        if (phase == 1) {
            elapsed += dt;
            opacity = std::min(1.0, elapsed / cfg.fade_out);
            if (elapsed >= cfg.fade_out - 1e-12) { phase = 2; elapsed = std::max(0.0, elapsed - cfg.fade_out); opacity = 1.0; }
        } else if (phase == 2) {
            elapsed += dt;
            if (elapsed >= cfg.hold - 1e-12) { phase = 3; elapsed = 0.0; }
        } else if (phase == 3) {
            elapsed += dt;
            opacity = std::max(0.0, 1.0 - elapsed / cfg.fade_in);
            if (elapsed >= cfg.fade_in - 1e-12) { phase = 0; elapsed = 0.0; opacity = 0.0; }
        }
    }
};

} // namespace

TEST_CASE("kinematics of a constant pose are zero") {
    const auto poses = trace(10, 0.1, [](double) { return Posed{Vec3(1, 2, 3), yaw_rotation_deg(40.0)}; });
    for (const auto& k : kinematics_from_trace(poses, 0.1)) {
        CHECK(k.linear_velocity.norm() == 0.0);
        CHECK(k.linear_accel.norm() == 0.0);
        CHECK(k.angular_velocity.norm() < 1e-12);
    }
}

TEST_CASE("kinematics match analytic derivatives") {
    const double dt = 0.01;
    const auto quad = trace(50, dt, [](double t) { return Posed{Vec3(0, 0, t * t), Quat::Identity()}; });
    for (const auto& k : kinematics_from_trace(quad, dt)) {
        CHECK(std::abs(k.linear_accel.z() - 2.0) < 1e-6);
        CHECK(std::abs(k.linear_velocity.z() - 2.0 * k.t) < 1e-6);
    }
    const auto yaw = trace(50, dt, [](double t) { return Posed{Vec3::Zero(), yaw_rotation_deg(30.0 * t)}; });
    for (const auto& k : kinematics_from_trace(yaw, dt)) {
        CHECK(std::abs(k.angular_velocity.y() - 30.0) < 1e-6);
        CHECK(std::abs(k.angular_velocity.x()) < 1e-9);
        CHECK(k.angular_accel.norm() < 1e-6);
    }
}

TEST_CASE("kinematics converge at second order on a cubic") {
    auto max_err = [](double dt) {
        const int n = static_cast<int>(std::round(1.0 / dt)) + 1;
        const auto poses = trace(n, dt, [](double t) { return Posed{Vec3(t * t * t, 0, 0), Quat::Identity()}; });
        double err = 0.0;
        for (const auto& k : kinematics_from_trace(poses, dt))
            err = std::max(err, std::abs(k.linear_velocity.x() - 3.0 * k.t * k.t));
        return err;
    };
    const double e1 = max_err(0.02), e2 = max_err(0.01);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("kinematics reject bad traces") {
    std::vector<PoseSample> two = {{0.0, {}}, {0.1, {}}};
    CHECK_THROWS_AS((void)kinematics_from_trace(two, 0.1), Error);
    std::vector<PoseSample> uneven = {{0.0, {}}, {0.1, {}}, {0.25, {}}};
    CHECK_THROWS_AS((void)kinematics_from_trace(uneven, 0.1), Error);
}

TEST_CASE("FOV restriction examples") {
    const FovRestrictorCfg cfg;
    CHECK(fov_restriction(cfg, 0.0, 110.0, 1.0) == 110.0);
    CHECK(fov_restriction(cfg, 100.0, 110.0, 1.0) == doctest::Approx(109.8));
    double fov = 110.0;
    for (int i = 0; i < 400; ++i) fov = fov_restriction(cfg, 1e6, fov, 1.0);
    CHECK(fov == 60.0);
    FovRestrictorCfg fixed = cfg;
    fixed.dynamic = false;
    CHECK(fov_restriction(fixed, 5.0, 70.0, 0.1) == 60.0);
}

TEST_CASE("FOV restriction properties over random steps") {
    Rng rng = make_rng(2024);
    FovRestrictorCfg cfg;
    cfg.rate_limit = 15.0;
    for (int i = 0; i < 20000; ++i) {
        const double prev = uniform(rng, cfg.fov_min, cfg.fov_max);
        const double speed = uniform(rng, 0.0, 6.0);
        const double dt = uniform(rng, 1e-3, 0.5);
        const double out = fov_restriction(cfg, speed, prev, dt);
        CHECK(out >= cfg.fov_min);
        CHECK(out <= cfg.fov_max);
        CHECK(std::abs(out - prev) <= cfg.rate_limit * dt + 1e-12);
        CHECK(fov_target(cfg, speed + uniform(rng, 0.0, 2.0)) <= fov_target(cfg, speed));
    }
}

TEST_CASE("angular FOV response is off unless enabled") {
    FovRestrictorCfg cfg;
    cfg.angular_gain = 1.0;
    CHECK(fov_target(cfg, 0.0, 30.0) == 110.0);
    cfg.use_angular = true;
    CHECK(fov_target(cfg, 0.0, 30.0) == 80.0);
}

TEST_CASE("snapper timing follows the reference machine") {
    SnapperCfg cfg;
    const double dt = 0.01;
    SnapperState s;
    SnapperOracle ref{cfg};
    for (int i = 0; i < 500; ++i) {
        const double omega = (i < 50 || (i > 120 && i < 140) || i > 300) ? 90.0 : 0.0;
        auto [next, opacity] = snapper_step(cfg, s, omega, dt);
        ref.step(omega, dt);
        CHECK(opacity == doctest::Approx(ref.opacity).epsilon(1e-9));
        CHECK(std::abs(opacity - s.opacity) <= dt / std::min(cfg.fade_out, cfg.fade_in) + 1e-9);
        s = next;
    }

    SnapperState sustained;
    double t = 0.0, reached = -1.0;
    while (t < 1.0) {
        auto [n, o] = snapper_step(cfg, sustained, 100.0, 0.001);
        sustained = n;
        t += 0.001;
        if (o == 1.0 && reached < 0.0) reached = t;
    }
    CHECK(reached == doctest::Approx(cfg.fade_out).epsilon(1e-6));

    SnapperState quiet;
    for (int i = 0; i < 1000; ++i) CHECK(snapper_step(cfg, quiet, 5.0, 0.01).second == 0.0);
}

TEST_CASE("snapper clears after hold plus fade-in when rotation stops at black") {
    SnapperCfg cfg;
    SnapperState s;
    const double dt = 0.001;
    for (int i = 0; i < 100; ++i) s = snapper_step(cfg, s, 100.0, dt).first;
    REQUIRE(s.phase == SnapperPhase::Black);
    double t = 0.0, cleared = -1.0;
    while (t < 2.0 && cleared < 0.0) {
        auto [n, o] = snapper_step(cfg, s, 0.0, dt);
        s = n;
        t += dt;
        if (o == 0.0) cleared = t;
    }
    CHECK(cleared == doctest::Approx(cfg.hold + cfg.fade_in).epsilon(1e-6));
}

TEST_CASE("color weights") {
    ColorCfg cfg;
    cfg.hue_delta_r = 40.0;
    cfg.saturation_delta = -0.5;
    CHECK(color_weights(cfg, 0.0, 0.0).hue_r == 0.0);
    CHECK(color_weights(cfg, 1e9, 0.0).hue_r == 40.0);
    cfg.k_lin = 1.0;
    cfg.k_rot = 0.0;
    const ColorDeltas half = color_weights(cfg, 0.5, 100.0);
    CHECK(half.weight == 0.5);
    CHECK(half.hue_r == 20.0);
    CHECK(half.saturation == -0.25);
    cfg.k_lin = 0.1;
    cfg.k_rot = 0.01;
    CHECK(color_weights(cfg, 2.0, 20.0).weight == doctest::Approx(2.0 * color_weights(cfg, 1.0, 10.0).weight));
}

TEST_CASE("depth of field and pixelize") {
    DofCfg dof;
    CHECK(dof_blur(dof, 2.0) == 0.0);
    CHECK(dof_blur(dof, 3.0) == 0.5);
    CHECK(dof_blur(dof, 1e9) == 1.0);
    CHECK(pixelize_resolution({270}, {1920, 1080}) == Resolution{480, 270});
    CHECK(pixelize_resolution({1080}, {1920, 1080}) == Resolution{1920, 1080});
    CHECK_THROWS_AS((void)pixelize_resolution({0}, {1920, 1080}), Error);
}

TEST_CASE("rest frame stays fixed in the head frame") {
    const RestFrameCfg nose = nose_rest_frame();
    CHECK(nose.offset.position.y() < 0.0);
    CHECK(nose.offset.position.z() > 0.0);
    CHECK(hat_rest_frame().offset.position.y() > 0.0);
    const Posed at_origin = rest_frame_pose(Posed{}, nose);
    CHECK((at_origin.position - nose.offset.position).norm() < 1e-15);
    Rng rng = make_rng(1);
    for (int i = 0; i < 1000; ++i) {
        const Posed head{Vec3(uniform(rng, -50, 50), uniform(rng, 0, 3), uniform(rng, -50, 50)),
                         axis_rotation_deg(Vec3(uniform(rng, -1, 1), uniform(rng, -1, 1), 1.0), uniform(rng, -180, 180))};
        const Posed obj = rest_frame_pose(head, nose);
        CHECK((head.inverse_transform_point(obj.position) - nose.offset.position).norm() < 1e-9);
    }
}

TEST_CASE("effects come from vision presets only") {
    const auto reg = registry::make_builtin_registry();
    const std::vector<registry::PresetDoc> presets = {
        registry::create_preset(reg, registry::builtin::kFovRestrictor, "t2", {{"fov_min", 60.0}}),
        registry::create_preset(reg, registry::builtin::kGrabMove, "g", {}),
        registry::create_preset(reg, registry::builtin::kRestFrames, "hat", {{"model", registry::EnumValue{"hat"}}}),
    };
    const EffectsConfig cfg = effects_from_presets(reg, presets);
    CHECK(cfg.fov.has_value());
    CHECK(cfg.rest_frame.has_value());
    CHECK(cfg.rest_frame->model == RestFrameModel::Hat);
    CHECK_FALSE(cfg.snapper.has_value());

    const auto poses = trace(100, 0.02, [](double t) { return Posed{Vec3(0, 0, 3.0 * t), Quat::Identity()}; });
    const auto frames = effect_stream(poses, 0.02, cfg);
    REQUIRE(frames.size() == 100);
    CHECK(frames.back().fov < 110.0);
    const std::string text = effect_stream_csv(frames);
    CHECK(text.rfind("t,fov,opacity,hue_r,hue_g,hue_b,hue_w,sat,con,blur\n", 0) == 0);

    const auto neutral = effect_stream(poses, 0.02, EffectsConfig{});
    CHECK(neutral.front().fov == 110.0);
    CHECK(neutral.front().opacity == 0.0);
}
