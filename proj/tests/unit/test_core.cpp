#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/core/geometry.hpp"
#include "csaf/core/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace csaf;

TEST_CASE("numbers print in shortest round-trip form") {
    CHECK(csv::format_number(0.1) == "0.1");
    CHECK(csv::format_number(10.0) == "10");
    CHECK(csv::format_number(-0.0) == "0");
    CHECK(csv::format_number(-2.5) == "-2.5");
    Rng rng = make_rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double x = uniform(rng, -1e6, 1e6) * std::pow(10.0, uniform(rng, -12.0, 12.0));
        CHECK(csv::parse_number(csv::format_number(x)) == x);
    }
}

TEST_CASE("csv quoting survives a parse") {
    csv::Writer w("a,b");
    w.field("plain").field("has, comma and \"quotes\"");
    w.end_row();
    w.field(1).field("line\nbreak");
    w.end_row();
    const auto table = csv::parse(w.str());
    REQUIRE(table.rows.size() == 2);
    CHECK(table.header == std::vector<std::string>{"a", "b"});
    CHECK(table.rows[0][1] == "has, comma and \"quotes\"");
    CHECK(table.rows[1][1] == "line\nbreak");
    CHECK(table.column("b") == 1);
    CHECK_THROWS_AS((void)table.column("zzz"), Error);
}

TEST_CASE("half-turn wrap matches a brute-force oracle") {
    auto oracle = [](double d) {
        while (d > 90.0) d -= 180.0;
        while (d <= -90.0) d += 180.0;
        return d;
    };
    for (double d = -720.0; d <= 720.0; d += 0.25) CHECK(wrap_to_half_turn_90(d) == doctest::Approx(oracle(d)).epsilon(1e-12));
    CHECK(wrap_to_half_turn_90(90.0) == 90.0);
    CHECK(wrap_to_half_turn_90(-90.0) == 90.0);
    CHECK(wrap_to_half_turn_90(100.0) == doctest::Approx(-80.0));
}

TEST_CASE("pose composition and inverse") {
    Posed a{Vec3(1, 2, 3), axis_rotation_deg(Vec3(Vec3(1, 1, 0).normalized()), 37.0)};
    Posed b{Vec3(-4, 0.5, 2), yaw_rotation_deg(80.0)};
    const Posed ab = compose(a, b);
    const Vec3 p(0.3, -0.2, 5.0);
    CHECK((ab.transform_point(p) - a.transform_point(b.transform_point(p))).norm() < 1e-12);
    const Posed id = compose(a, a.inverse());
    CHECK(id.position.norm() < 1e-12);
    CHECK(angular_distance_deg(id.orientation, Quat::Identity()) < 1e-6);
}

TEST_CASE("yaw convention turns +z toward +x") {
    const Vec3 f = yaw_rotation_deg(90.0) * Vec3::UnitZ();
    CHECK((f - Vec3::UnitX()).norm() < 1e-12);
    CHECK(yaw_of_deg(yaw_rotation_deg(35.0)) == doctest::Approx(35.0));
    const Quat q = look_rotation(Vec3(1, 0, 1));
    CHECK(((q * Vec3::UnitZ()) - Vec3(1, 0, 1).normalized()).norm() < 1e-12);
    const Quat down = look_rotation(Vec3(0, -1, 1));
    CHECK(((down * Vec3::UnitZ()) - Vec3(0, -1, 1).normalized()).norm() < 1e-12);
}

TEST_CASE("seeded generators repeat and stay in range") {
    Rng a = make_rng(99), b = make_rng(99);
    for (int i = 0; i < 100; ++i) CHECK(uniform01(a) == uniform01(b));
    Rng r = make_rng(5);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[uniform_index(r, 7)];
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
    std::vector<int> items(50);
    std::iota(items.begin(), items.end(), 0);
    shuffle(std::span<int>(items), r);
    std::vector<int> sorted = items;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("errors carry their code") {
    try {
        require(false, ErrorCode::Conflict, "boom");
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Conflict);
        CHECK(std::string(e.what()) == "boom");
    }
}
