#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/registry/builtin_types.hpp"
#include "csaf/registry/preset.hpp"
#include "csaf/report/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>

using namespace csaf;
using namespace csaf::report;

namespace {

StandardReport fixture() {
    return parse_report(csv::read_file(std::filesystem::path(CSAF_SOURCE_DIR) / "data/reports/example.report.v1.json"));
}

bool has_violation(const StandardReport& r, const std::string& path) {
    for (const auto& v : validate_report(r))
        if (v.path == path) return true;
    return false;
}

runtime::RunSummary session(runtime::ControlType control, std::string navigation) {
    runtime::RunSummary s;
    s.control = control;
    s.navigation = std::move(navigation);
    s.phases = {{runtime::PhaseKind::Baseline, 300, 300}, {runtime::PhaseKind::Exposure, 1200, 1200}};
    s.duration = 1500;
    s.optic_flow_proxy = 0.25;
    return s;
}

} // namespace

TEST_CASE("the table example validates") {
    const StandardReport r = fixture();
    CHECK(validate_report(r).empty());
    CHECK(r.demographics.participants == 40);
    CHECK(r.demographics.age.mean == 24.5);
    CHECK(r.experiment.baseline_min == 5.0);
    CHECK_FALSE(r.experiment.optic_flow.has_value());
}

TEST_CASE("invariant violations carry field paths") {
    StandardReport r = fixture();
    r.demographics.females = 50;
    CHECK(has_violation(r, "demographics.females"));
    r = fixture();
    r.demographics.age.mean = 40;
    CHECK(has_violation(r, "demographics.age.mean"));
    r = fixture();
    r.demographics.experienced = 35;
    CHECK_FALSE(validate_report(r).empty());
    r = fixture();
    r.demographics.participants = -1;
    CHECK_FALSE(validate_report(r).empty());
    r = fixture();
    r.experiment.exposure_min = std::nan("");
    CHECK_FALSE(validate_report(r).empty());
}

TEST_CASE("machine rendering round trips") {
    const StandardReport r = fixture();
    const std::string text = render_report(r, Format::Machine);
    CHECK(parse_report(text) == r);
    CHECK(nlohmann::json::parse(text).at("schema") == "report.v1");
    CHECK(render_report(parse_report(text), Format::Machine) == text);
    CHECK_THROWS_AS((void)parse_report("{"), Error);
    CHECK_THROWS_AS((void)parse_report(R"({"schema":"report.v0"})"), Error);
}

TEST_CASE("document rendering contains every row label") {
    StandardReport r = fixture();
    const std::string doc = render_report(r, Format::Document);
    for (const auto& label : row_labels()) CHECK_MESSAGE(doc.find(label) != std::string::npos, label);
    CHECK(doc.find("18-36 (M: 24.5, Std: 3.45)") != std::string::npos);
    CHECK(doc.find("S1. Teleportation, S2. Standard control") != std::string::npos);
    r.experiment.baseline_min.reset();
    CHECK(render_report(r, Format::Document).find("If any — not applicable") != std::string::npos);
    r.demographics.females = 99;
    CHECK_THROWS_AS((void)render_report(r, Format::Document), Error);
}

TEST_CASE("prefill from sessions") {
    const std::vector<runtime::RunSummary> runs = {session(runtime::ControlType::Active, "Teleportation"),
                                                   session(runtime::ControlType::Active, "Standard control")};
    const StandardReport r = from_session(runs, fixture().demographics, {"HTC Vive Pro", 110});
    CHECK(r.experiment.sessions == 2);
    CHECK(r.experiment.navigation_per_session == std::vector<std::string>{"Teleportation", "Standard control"});
    CHECK(r.experiment.baseline_min == 5.0);
    CHECK(r.experiment.exposure_min == 20.0);
    CHECK_FALSE(r.experiment.break_min.has_value());
    CHECK(r.experiment.optic_flow == doctest::Approx(0.25));
    CHECK(r.reduction_techniques.empty());
    CHECK(r.experiment.motion_breakdown == std::vector<std::string>{"None", "None"});
    CHECK(validate_report(r).empty());

    CHECK_THROWS_AS((void)from_session({}, {}, {}), Error);
    std::vector<runtime::RunSummary> mismatched = runs;
    mismatched[1].phases[1].actual = 600;
    CHECK_THROWS_AS((void)from_session(mismatched, {}, {}), Error);
}

TEST_CASE("techniques come from vision presets") {
    const auto reg = registry::make_builtin_registry();
    auto run = session(runtime::ControlType::Passive, "Passive (pre-defined motion)");
    run.vision_presets = {registry::create_preset(reg, registry::builtin::kFovRestrictor, "t2",
                                                  {{"fov_min", 60.0}, {"rate_limit", 0.2}})};
    run.breakdown.rotation[1] = 600.0;
    const std::vector<runtime::RunSummary> runs = {run};
    const StandardReport r = from_session(runs, {}, {"HMD", 110});
    REQUIRE(r.reduction_techniques.size() == 1);
    CHECK(r.reduction_techniques[0].name == "FOV reduction");
    CHECK(r.reduction_techniques[0].details == "FOV reduction size (minimum 60 degrees) and speed (0.2 degrees/s)");
    CHECK(r.experiment.motion_breakdown == std::vector<std::string>{"Rotation along Yaw axis - 10 min"});
    CHECK(r.experiment.control_type == runtime::ControlType::Passive);
    CHECK_THROWS_AS((void)describe_technique(registry::create_preset(reg, registry::builtin::kGrabMove, "g", {})),
                    Error);
}
