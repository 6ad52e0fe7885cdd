#include "csaf/core/error.hpp"
#include "csaf/core/random.hpp"
#include "csaf/susceptibility/rft.hpp"
#include "csaf/susceptibility/sensitivity.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

using namespace csaf;
using namespace csaf::susceptibility;

TEST_CASE("default rotational phase lasts 127 s") {
    const StimulusSchedule s = build_sensitivity_schedule(SensitivityConfig{}, 0);
    double sum = 0.0;
    int rotations = 0;
    for (const auto& seg : s.segments) {
        sum += seg.duration;
        rotations += seg.kind == SegmentKind::Rotation;
    }
    CHECK(sum == doctest::Approx(127.0));
    CHECK(s.end_time == doctest::Approx(127.0));
    CHECK(rotations == 9);
    CHECK(s.segments.back().kind == SegmentKind::ReturnToMenu);
}

TEST_CASE("schedules tile time and rotations are announced") {
    Rng rng = make_rng(10);
    for (int trial = 0; trial < 200; ++trial) {
        SensitivityConfig cfg;
        cfg.reps_per_axis = 1 + static_cast<int>(uniform_index(rng, 3));
        cfg.turn_duration = uniform(rng, 1.0, 20.0);
        cfg.pause_after_turn = uniform(rng, 0.1, 5.0);
        cfg.pause_between_triples = uniform(rng, 0.1, 10.0);
        cfg.indicator_duration = uniform(rng, 0.1, 2.0);
        cfg.include_translation = uniform01(rng) < 0.5;
        cfg.shuffle_orders = uniform01(rng) < 0.5;
        const auto s = build_sensitivity_schedule(cfg, trial);
        double clock = 0.0;
        for (std::size_t i = 0; i < s.segments.size(); ++i) {
            const auto& seg = s.segments[i];
            CHECK(seg.start == doctest::Approx(clock).epsilon(1e-12));
            clock += seg.duration;
            if (seg.kind == SegmentKind::Rotation) {
                REQUIRE(i > 0);
                CHECK(s.segments[i - 1].kind == SegmentKind::Indicator);
                CHECK(seg.magnitude == 360.0);
            }
        }
        CHECK(s.end_time == doctest::Approx(clock).epsilon(1e-12));
        const double reps = cfg.reps_per_axis;
        double want = 9 * reps * (cfg.indicator_duration + cfg.turn_duration + cfg.pause_after_turn) +
                      2 * cfg.pause_between_triples;
        if (cfg.include_translation)
            want += 9 * reps * (cfg.indicator_duration + cfg.translation.duration + cfg.pause_after_turn) +
                    3 * cfg.pause_between_triples;
        CHECK(s.end_time == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("rotation segments complete a full turn") {
    const auto s = build_sensitivity_schedule(SensitivityConfig{}, 0);
    for (const auto& seg : s.segments) {
        if (seg.kind != SegmentKind::Rotation) continue;
        const Posed a = schedule_pose(s, seg.start);
        const Posed mid = schedule_pose(s, seg.start + seg.duration / 2);
        CHECK(angular_distance_deg(a.orientation, mid.orientation) == doctest::Approx(180.0));
        // Integrate the constant rate in small increments as an independent reference.
        Quat q = a.orientation;
        const int n = 3600;
        const Vec3 axis = unit_axis(*seg.rotation_axis);
        for (int k = 0; k < n; ++k) q = (axis_rotation_deg(axis, seg.direction * 360.0 / n) * q).normalized();
        const Posed end = schedule_pose(s, seg.start + seg.duration);
        CHECK(angular_distance_deg(q, end.orientation) < 1e-6);
        CHECK(angular_distance_deg(a.orientation, end.orientation) < 1e-6);
    }
}

TEST_CASE("pauses hold the pose and out-of-range times fail") {
    const auto s = build_sensitivity_schedule(SensitivityConfig{}, 0);
    const auto& pause = s.segments[2];
    REQUIRE(pause.kind == SegmentKind::Pause);
    const Posed a = schedule_pose(s, pause.start);
    const Posed b = schedule_pose(s, pause.start + pause.duration * 0.7);
    CHECK(angular_distance_deg(a.orientation, b.orientation) < 1e-9);
    CHECK_THROWS_AS((void)schedule_pose(s, -1.0), Error);
    CHECK_THROWS_AS((void)schedule_pose(s, s.end_time + 1.0), Error);
}

TEST_CASE("rotation direction alternates across repetitions") {
    SensitivityConfig cfg;
    cfg.reps_per_axis = 2;
    const auto s = build_sensitivity_schedule(cfg, 0);
    std::vector<int> dirs;
    for (const auto& seg : s.segments)
        if (seg.kind == SegmentKind::Rotation) dirs.push_back(seg.direction);
    CHECK(dirs[0] == 1);
    CHECK(dirs[1] == -1);
    cfg.alternate_direction = false;
    for (const auto& seg : build_sensitivity_schedule(cfg, 0).segments) CHECK(seg.direction == 1);
}

TEST_CASE("translation covers all three axes") {
    SensitivityConfig cfg;
    cfg.include_translation = true;
    const auto s = build_sensitivity_schedule(cfg, 0);
    std::map<TranslationAxis, int> seen;
    for (const auto& seg : s.segments) {
        if (seg.kind != SegmentKind::Translation) continue;
        ++seen[*seg.translation_axis];
        const Posed a = schedule_pose(s, seg.start);
        const Posed b = schedule_pose(s, seg.start + seg.duration);
        CHECK((b.position - a.position).norm() == doctest::Approx(cfg.translation.distance));
        CHECK((b.position - a.position).normalized().cwiseAbs() == unit_axis(*seg.translation_axis).cwiseAbs());
    }
    CHECK(seen.size() == 3);
    CHECK(unit_axis(TranslationAxis::Lateral) == Vec3::UnitX());
    CHECK(unit_axis(TranslationAxis::Vertical) == Vec3::UnitY());
    CHECK(unit_axis(TranslationAxis::Longitudinal) == Vec3::UnitZ());
}

TEST_CASE("invalid sensitivity configs are rejected") {
    SensitivityConfig cfg;
    cfg.orders = {{RotationAxis::Pitch, RotationAxis::Pitch, RotationAxis::Yaw}};
    CHECK_THROWS_AS((void)build_sensitivity_schedule(cfg, 0), Error);
    SensitivityConfig zero;
    zero.turn_duration = 0.0;
    CHECK_THROWS_AS((void)build_sensitivity_schedule(zero, 0), Error);
}

TEST_CASE("sensitivity config round trips through json and csv has the right header") {
    SensitivityConfig cfg;
    cfg.reps_per_axis = 3;
    cfg.include_translation = true;
    cfg.translation.axes = {TranslationAxis::Vertical};
    const SensitivityConfig back = sensitivity_from_json(to_json(cfg));
    CHECK(to_json(back) == to_json(cfg));
    const std::string csv = schedule_csv(build_sensitivity_schedule(cfg, 1));
    CHECK(csv.rfind("start,duration,kind,axis,magnitude\n", 0) == 0);
}

TEST_CASE("rft trials are balanced and seeded") {
    const RftConfig cfg;
    const auto trials = generate_rft_trials(cfg, 5);
    REQUIRE(trials.size() == 16);
    std::map<std::pair<int, int>, int> counts;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        CHECK(t.index == static_cast<int>(i));
        ++counts[{t.frame_sign, t.rod_sign}];
        CHECK(std::abs(t.frame_angle) == 18.0);
        CHECK(std::abs(t.rod_start) == 27.0);
    }
    CHECK(counts.size() == 4);
    for (const auto& [k, c] : counts) CHECK(c == 4);
    const auto again = generate_rft_trials(cfg, 5);
    for (std::size_t i = 0; i < 16; ++i) CHECK(again[i].frame_sign == trials[i].frame_sign);
}

TEST_CASE("rod rotation wraps and locks after commit") {
    RftConfig cfg;
    RodState rod{-27.0, false};
    rod = rotate_rod(rod, 0.0, cfg);
    CHECK(rod.angle == -27.0);
    rod = rotate_rod(rod, 27.0, cfg);
    CHECK(rod.angle == 0.0);
    RodState spin{0.0, false};
    for (int i = 0; i < 100; ++i) spin = rotate_rod(spin, 1.0, cfg);
    CHECK(spin.angle == doctest::Approx(-80.0));
    spin = commit(spin);
    CHECK_THROWS_AS((void)rotate_rod(spin, 1.0, cfg), Error);
    CHECK(normalize_rod_angle(-90.0) == 90.0);
    CHECK(normalize_rod_angle(270.0) == 90.0);
}

TEST_CASE("rft scoring") {
    RftConfig cfg;
    cfg.repetitions_per_permutation = 1;
    const auto trials = generate_rft_trials(cfg, 0);
    REQUIRE(trials.size() == 4);
    const std::vector<RftResponse> r = {{2.0}, {-2.0}, {4.0}, {-4.0}};
    const RftResult res = score_rft(trials, r);
    CHECK(res.mean == doctest::Approx(3.0));
    CHECK(res.std == doctest::Approx(1.1547).epsilon(1e-4));
    std::vector<RftResponse> rev(r.rbegin(), r.rend());
    const RftResult res2 = score_rft(trials, rev);
    CHECK(res2.mean == res.mean);
    CHECK(res2.std == doctest::Approx(res.std).epsilon(1e-15));
    const std::vector<RftResponse> vertical(4, RftResponse{0.0});
    CHECK(score_rft(trials, vertical).mean == 0.0);
    const std::vector<RftResponse> one = {{3.5}};
    CHECK(score_rft(std::span(trials).first(1), one).absolute_errors[0] == 3.5);
    CHECK_THROWS_AS((void)score_rft(trials, one), Error);
}

TEST_CASE("rft csv round trip") {
    const auto trials = generate_rft_trials(RftConfig{}, 3);
    std::vector<RftResponse> r;
    for (int i = 0; i < 16; ++i) r.push_back({i * 1.5 - 10.0});
    const auto result = score_rft(trials, r);
    const std::string text = rft_result_csv(trials, r, result);
    CHECK(text.rfind("trial,frame_sign,rod_sign,response_deg,abs_error_deg\n", 0) == 0);
    const auto parsed = parse_rft_responses(text);
    REQUIRE(parsed.size() == 16);
    for (int i = 0; i < 16; ++i) CHECK(parsed[i].final_rod_angle == r[i].final_rod_angle);
    CHECK(rft_trials_csv(trials).rfind("trial,frame_sign,rod_sign,frame_deg,rod_start_deg\n", 0) == 0);
}
