#include "csaf/core/error.hpp"
#include "csaf/core/random.hpp"
#include "csaf/environment/collectibles.hpp"
#include "csaf/environment/music.hpp"
#include "csaf/environment/path.hpp"
#include "csaf/environment/scene_description.hpp"
#include "csaf/environment/terrain.hpp"
#include "csaf/registry/builtin_types.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using namespace csaf;
using namespace csaf::environment;

namespace {

using oracle::barry_goldman;

double dense_length(const PathSpec& spec, std::size_t segments, int per_segment) {
    double len = 0.0;
    Vec3 prev = curve_at(spec, 0.0).position;
    for (std::size_t k = 1; k <= segments * per_segment; ++k) {
        const Vec3 p = curve_at(spec, static_cast<double>(k) / per_segment).position;
        len += (p - prev).norm();
        prev = p;
    }
    return len;
}

PathSpec square(PathInterpolation mode) {
    PathSpec s;
    s.control_points = {Vec3(0, 0, 0), Vec3(10, 0, 0), Vec3(10, 0, 10), Vec3(0, 0, 10)};
    s.closed = true;
    s.interpolation = mode;
    return s;
}

} // namespace

TEST_CASE("curve matches the Barry-Goldman oracle inside segments") {
    PathSpec spec;
    spec.control_points = {Vec3(0, 0, 0), Vec3(3, 1, 4), Vec3(5, 0, 5), Vec3(9, 2, 3), Vec3(12, 0, 10)};
    for (double u = 1.0; u <= 3.0; u += 0.05) {
        const auto i = std::min<std::size_t>(static_cast<std::size_t>(u), 2);
        const auto& p = spec.control_points;
        const Vec3 want = barry_goldman(p[i - 1], p[i], p[i + 1], p[i + 2], u - static_cast<double>(i));
        CHECK((curve_at(spec, u).position - want).norm() < 1e-9);
    }
    // Ends use reflected phantom points.
    const auto& p = spec.control_points;
    const Vec3 phantom = 2.0 * p[0] - p[1];
    CHECK((curve_at(spec, 0.4).position - barry_goldman(phantom, p[0], p[1], p[2], 0.4)).norm() < 1e-9);
}

TEST_CASE("curve interpolates its control points and its derivative is consistent") {
    PathSpec spec = square(PathInterpolation::CentripetalCatmullRom);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK((curve_at(spec, static_cast<double>(i)).position - spec.control_points[i]).norm() < 1e-12);
    const double h = 1e-6;
    for (double u = 0.1; u < 3.9; u += 0.3) {
        const Vec3 fd = (curve_at(spec, u + h).position - curve_at(spec, u - h).position) / (2 * h);
        CHECK((fd - curve_at(spec, u).tangent).norm() < 1e-5);
    }
}

TEST_CASE("arc length agrees with a dense polyline") {
    const PathTable linear = build_path(square(PathInterpolation::Linear));
    CHECK(linear.total_length == doctest::Approx(40.0).epsilon(1e-12));
    PathSpec cr = square(PathInterpolation::CentripetalCatmullRom);
    cr.sample_count = 4096;
    const PathTable t = build_path(cr);
    const double oracle = dense_length(cr, 4, 200000);
    CHECK(std::abs(t.total_length - oracle) / oracle < 1e-3);
}

TEST_CASE("pose lookup by arc length") {
    PathSpec spec;
    spec.control_points = {Vec3(0, 0, 0), Vec3(0, 0, 100)};
    const PathTable t = build_path(spec);
    CHECK(t.total_length == doctest::Approx(100.0).epsilon(1e-12));
    const PathPoint mid = pose_at(t, 37.5);
    CHECK((mid.position - Vec3(0, 0, 37.5)).norm() < 1e-9);
    CHECK((mid.tangent - Vec3::UnitZ()).norm() < 1e-12);
    CHECK_THROWS_AS((void)pose_at(t, 100.5), Error);
    CHECK_THROWS_AS((void)pose_at(t, -1.0), Error);

    const PathTable loop = build_path(square(PathInterpolation::Linear));
    CHECK((pose_at(loop, 45.0).position - pose_at(loop, 5.0).position).norm() < 1e-9);
    CHECK((pose_at(loop, -5.0).position - pose_at(loop, 35.0).position).norm() < 1e-9);
}

TEST_CASE("invalid path specs are rejected") {
    PathSpec one;
    one.control_points = {Vec3::Zero()};
    CHECK_THROWS_AS((void)build_path(one), Error);
    PathSpec dup;
    dup.control_points = {Vec3::Zero(), Vec3::Zero(), Vec3::UnitX()};
    CHECK_THROWS_AS((void)build_path(dup), Error);
    PathSpec nan;
    nan.control_points = {Vec3::Zero(), Vec3(std::nan(""), 0, 0)};
    CHECK_THROWS_AS((void)build_path(nan), Error);
}

TEST_CASE("collectibles sit at centered stations") {
    PathSpec spec;
    spec.control_points = {Vec3(0, 0, 0), Vec3(0, 0, 100)};
    const PathTable t = build_path(spec);
    const CollectibleSet set = place_collectibles(t, 5, 3, 0.0);
    const double want[] = {10, 30, 50, 70, 90};
    for (int i = 0; i < 5; ++i) {
        CHECK(set.stations[i] == doctest::Approx(want[i]));
        CHECK((set.positions[i] - Vec3(0, 0, want[i])).norm() < 1e-9);
    }
    const CollectibleSet j1 = place_collectibles(t, 5, 3, 2.0);
    const CollectibleSet j2 = place_collectibles(t, 5, 3, 2.0);
    for (int i = 0; i < 5; ++i) {
        CHECK(j1.positions[i] == j2.positions[i]);
        CHECK(std::abs(j1.positions[i].x()) <= 2.0);
        CHECK(j1.positions[i].z() == doctest::Approx(want[i]));
    }
    CHECK(place_collectibles(t, 0, 1, 0.0).positions.empty());
    CHECK((lateral_direction(Vec3::UnitY()) - Vec3::UnitX()).norm() < 1e-12);
}

TEST_CASE("terrain is deterministic and bounded") {
    TerrainSpec spec;
    spec.seed = 11;
    spec.width = 48;
    spec.depth = 40;
    spec.amplitude = 3.0;
    const Heightmap a = generate_terrain(spec);
    const Heightmap b = generate_terrain(spec);
    CHECK(a.heights == b.heights);
    CHECK(a.heights.rows() == 40);
    CHECK(a.heights.cols() == 48);
    const double bound = height_bound(spec);
    CHECK(bound == doctest::Approx(3.0 * (1 + 0.5 + 0.25 + 0.125) / std::sqrt(2.0)));
    CHECK(a.heights.cwiseAbs().maxCoeff() <= bound);
    CHECK(a.heights.cwiseAbs().maxCoeff() > 0.0);
    spec.seed = 12;
    CHECK(generate_terrain(spec).heights != a.heights);

    const PerlinNoise noise(5);
    Rng rng = make_rng(8);
    for (int i = 0; i < 20000; ++i) {
        const double v = noise(uniform(rng, -300, 300), uniform(rng, -300, 300));
        CHECK(std::abs(v) <= 1.0 / std::sqrt(2.0) + 1e-12);
    }
}

TEST_CASE("terrain height interpolates bilinearly between nodes") {
    TerrainSpec spec;
    spec.seed = 3;
    spec.width = 8;
    spec.depth = 8;
    spec.cell_size = 2.0;
    const Heightmap g = generate_terrain(spec);
    CHECK(terrain_height(g, 4.0, 6.0) == g.heights(3, 2));
    const double h00 = g.heights(1, 1), h01 = g.heights(1, 2), h10 = g.heights(2, 1), h11 = g.heights(2, 2);
    const double fx = 0.25, fz = 0.6;
    const double want = (1 - fz) * ((1 - fx) * h00 + fx * h01) + fz * ((1 - fx) * h10 + fx * h11);
    CHECK(terrain_height(g, 2.0 + 2.0 * fx, 2.0 + 2.0 * fz) == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS((void)terrain_height(g, -0.1, 1.0), Error);
    CHECK_THROWS_AS((void)terrain_height(g, 1.0, 14.5), Error);
    CHECK(terrain_height(g, g.extent_x(), g.extent_z()) == g.heights(7, 7));
}

TEST_CASE("music timeline plays the intro once then loops") {
    MusicTimeline m;
    m.intro = Track{"intro", 10.0, 120};
    m.loop_tracks = {Track{"a", 30.0, 90}, Track{"b", 20.0, 100}};
    m.horizon = 100.0;
    const auto events = playlist_schedule(m);
    const std::vector<MusicEvent> want = {{0, "intro"}, {10, "a"}, {40, "b"}, {60, "a"}, {90, "b"}};
    CHECK(events == want);
    m.loop_tracks = {Track{"zero", 0.0, 0}};
    CHECK_THROWS_AS(validate(m), Error);
}

TEST_CASE("bundled scenes load and build") {
    const registry::Registry reg = registry::make_builtin_registry();
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(CSAF_SOURCE_DIR) / "data/scenes")) {
        const SceneDescription scene = load_scene_description(entry.path());
        CHECK_FALSE(scene.name.empty());
        if (scene.path) CHECK(build_path(*scene.path).total_length > 0.0);
        if (scene.terrain) CHECK(generate_terrain(*scene.terrain).heights.size() > 0);
        const SceneDescription again = scene_from_json(to_json(scene));
        CHECK(to_json(again) == to_json(scene));
        (void)instantiate_entities(reg, scene);
        ++count;
    }
    CHECK(count == 5);
}
