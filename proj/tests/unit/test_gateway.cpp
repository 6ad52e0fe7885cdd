#include "csaf/core/csv.hpp"
#include "csaf/gateway/command.hpp"
#include "csaf/gateway/control_service.hpp"
#include "csaf/gateway/http_service.hpp"
#include "csaf/registry/builtin_types.hpp"

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <filesystem>
#include <thread>

using namespace csaf;
using namespace csaf::gateway;
using nlohmann::json;

namespace {

const registry::Registry& reg() {
    static const registry::Registry r = registry::make_builtin_registry();
    return r;
}

std::filesystem::path source_dir() { return CSAF_SOURCE_DIR; }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("csaf_gateway_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

ServiceConfig config(const std::string& name) {
    ServiceConfig cfg;
    cfg.data_dir = scratch(name);
    cfg.preset_dir = cfg.data_dir / "presets";
    return cfg;
}

json short_plan(double exposure, double interval) {
    return {{"name", "short"},
            {"scene", (source_dir() / "data/scenes/forest-simple.scene.json").string()},
            {"phases", {{{"kind", "exposure"}, {"duration", exposure}}}},
            {"control", "active"},
            {"providers",
             {{"left", {{{"type", "ContinuousMoveProvider"}, {"params", {{"speed", 1.0}}}, {"actions", {"move"}}}}}}},
            {"fms", {{"interval", interval}}},
            {"seed", 3}};
}

json entity_named(const json& scene, const std::string& name) {
    for (const auto& e : scene.at("entities"))
        if (e.at("name") == name) return e;
    FAIL("entity not found: " << name);
    return {};
}

json feature(const json& entity, const std::string& type) {
    for (const auto& f : entity.at("features"))
        if (f.at("type") == type) return f;
    return nullptr;
}

} // namespace

TEST_CASE("status codes follow error classes") {
    CHECK(http_status(ErrorCode::NotFound) == 404);
    CHECK(http_status(ErrorCode::Conflict) == 409);
    CHECK(http_status(ErrorCode::Duplicate) == 409);
    CHECK(http_status(ErrorCode::OutOfRange) == 422);
    CHECK(http_status(ErrorCode::Parse) == 400);
    CHECK(command_kind_from_string(to_string(CommandKind::SubmitFms)) == CommandKind::SubmitFms);
}

TEST_CASE("scene inspection and feature toggles") {
    ControlService svc(reg(), config("scene"));
    const json empty = svc.scene_snapshot();
    json cats = json::array();
    for (const auto& c : reg().list_categories()) cats.push_back(c.name);
    CHECK(empty.at("categories") == cats);

    CHECK(svc.execute({CommandKind::LoadScene, {{"file", (source_dir() / "data/scenes/forest-simple.scene.json").string()}}}).ok());
    const json scene = svc.scene_snapshot();
    CHECK(scene.at("name") == "forest-simple");
    CHECK(feature(entity_named(scene, "MainCamera"), "FovRestrictor").at("enabled") == false);
    CHECK(entity_named(scene, "MainCamera").at("available_extensions") == json::array({"CameraRotator"}));

    CHECK(svc.execute({CommandKind::ToggleFeature, {{"entity", "MainCamera"}, {"type", "FovRestrictor"}, {"enabled", true}}}).ok());
    CHECK(feature(entity_named(svc.scene_snapshot(), "MainCamera"), "FovRestrictor").at("enabled") == true);

    CHECK(svc.execute({CommandKind::ToggleFeature, {{"entity", "GameManager"}, {"type", "CameraRotator"}, {"enabled", true}}})
              .status == 409);
    CHECK(svc.execute({CommandKind::ToggleFeature, {{"entity", "Nobody"}, {"type", "Camera"}, {"enabled", true}}}).status ==
          404);
    CHECK(svc.execute({CommandKind::LoadScene, {{"file", "missing.scene.json"}}}).status >= 400);
}

TEST_CASE("preset CRUD and apply") {
    ServiceConfig cfg = config("presets");
    ControlService svc(reg(), cfg);
    svc.execute({CommandKind::LoadScene, {{"file", (source_dir() / "data/scenes/forest-simple.scene.json").string()}}});
    const Command create{CommandKind::CreatePreset,
                         {{"type", "FovRestrictor"}, {"name", "narrow"}, {"values", {{"fov_min", 45.0}}}}};
    CHECK(svc.execute(create).status == 201);
    CHECK(svc.execute(create).status == 409);
    CHECK(std::filesystem::exists(*cfg.preset_dir / "FovRestrictor.narrow.preset.json"));
    const auto doc = svc.preset_snapshot("FovRestrictor", "narrow");
    REQUIRE(doc.has_value());
    CHECK(doc->at("values").at("fov_min") == 45.0);
    CHECK(svc.presets_snapshot("FovRestrictor").size() == 1);

    CHECK(svc.execute({CommandKind::ApplyPreset, {{"entity", "MainCamera"}, {"type", "FovRestrictor"}, {"name", "narrow"}}}).ok());
    CHECK(feature(entity_named(svc.scene_snapshot(), "MainCamera"), "FovRestrictor").at("values").at("fov_min") == 45.0);

    CHECK(svc.execute({CommandKind::DeletePreset, {{"type", "FovRestrictor"}, {"name", "narrow"}}}).ok());
    CHECK_FALSE(svc.preset_snapshot("FovRestrictor", "narrow").has_value());
    CHECK(svc.execute({CommandKind::DeletePreset, {{"type", "FovRestrictor"}, {"name", "narrow"}}}).status == 404);
    CHECK(svc.execute({CommandKind::CreatePreset, {{"type", "FovRestrictor"}, {"name", "x"}, {"values", {{"bogus", 1}}}}})
              .status >= 400);
}

TEST_CASE("session control in manual mode") {
    ControlService svc(reg(), config("session"));
    CHECK(svc.execute({CommandKind::SubmitFms, {{"rating", 3}}}).status == 409);
    CHECK(svc.execute({CommandKind::StartSession, {{"plan", short_plan(30, 10)}}}).ok());
    json s = svc.session_snapshot();
    CHECK(s.at("active") == true);
    CHECK(s.at("pending_fms") == true);
    CHECK(svc.execute({CommandKind::SubmitFms, {{"rating", 25}}}).status == 422);
    CHECK(svc.execute({CommandKind::SubmitFms, {{"rating", 4}}}).ok());
    CHECK(svc.execute({CommandKind::SubmitFms, {{"rating", 4}}}).status == 409);
    CHECK(svc.execute({CommandKind::StartSession, {{"plan", short_plan(30, 10)}}}).status == 409);
    svc.pump(450);
    s = svc.session_snapshot();
    CHECK(s.at("t").get<double>() == doctest::Approx(5.0));
    CHECK(svc.latest_seq() > 0);
    CHECK(svc.execute({CommandKind::StopSession, {}}).ok());
    s = svc.session_snapshot();
    CHECK(s.at("stopped") == true);
    REQUIRE(s.contains("artifacts"));
    CHECK(std::filesystem::exists(std::filesystem::path(s.at("artifacts").get<std::string>()) / "poses.csv"));
    CHECK(svc.execute({CommandKind::StopSession, {}}).status == 409);
}

TEST_CASE("http routes round trip through the service") {
    ControlService svc(reg(), config("http"));
    const auto static_dir = scratch("static");
    csv::write_file(static_dir / "index.html", "<html>panel</html>");
    svc.start_background();
    HttpService http(svc, static_dir);
    const int port = http.start("127.0.0.1", 0);
    httplib::Client cli("127.0.0.1", port);
    cli.set_read_timeout(5, 0);

    auto post = [&](const std::string& path, const json& body) {
        return cli.Post(path, body.dump(), "application/json");
    };

    auto res = cli.Get("/scene");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body).at("categories").size() == 4);

    res = post("/scene/load", {{"file", (source_dir() / "data/scenes/forest-simple.scene.json").string()}});
    REQUIRE(res);
    CHECK(res->status == 200);
    res = post("/scene/toggle", {{"entity", "XR Origin"}, {"type", "SnapTurnProvider"}, {"enabled", true}});
    REQUIRE(res);
    CHECK(res->status == 200);
    res = cli.Get("/scene");
    CHECK(feature(entity_named(json::parse(res->body), "XR Origin"), "SnapTurnProvider").at("enabled") == true);

    res = cli.Get("/scene/names?name=FovRestrictor");
    REQUIRE(res);
    CHECK(json::parse(res->body).at("ok") == false);
    CHECK(json::parse(res->body).at("result") == "duplicate");

    res = post("/presets", {{"type", "VisionSnapper"}, {"name", "fast"}, {"values", {{"hold", 0.5}}}});
    REQUIRE(res);
    CHECK(res->status == 201);
    res = cli.Get("/presets/VisionSnapper/fast");
    REQUIRE(res);
    CHECK(json::parse(res->body).at("values").at("hold") == 0.5);
    res = cli.Get("/presets?type=VisionSnapper");
    CHECK(json::parse(res->body).size() == 1);
    res = cli.Delete("/presets/VisionSnapper/fast");
    CHECK(res->status == 200);
    CHECK(cli.Get("/presets/VisionSnapper/fast")->status == 404);

    res = post("/fms", {{"rating", 2}});
    REQUIRE(res);
    CHECK(res->status == 409);
    CHECK(json::parse(res->body).contains("error"));

    res = post("/scene/load", {{"oops", true}});
    CHECK(res->status == 400);
    res = cli.Post("/fms", "{not json", "application/json");
    CHECK(res->status == 400);

    res = cli.Get("/index.html");
    REQUIRE(res);
    CHECK(res->body == "<html>panel</html>");

    http.stop();
    svc.stop_background();
}

TEST_CASE("telemetry stream delivers ordered frames") {
    ServiceConfig cfg = config("sse");
    cfg.time_scale = 20.0;
    ControlService svc(reg(), cfg);
    svc.start_background();
    HttpService http(svc);
    const int port = http.start("127.0.0.1", 0);
    httplib::Client cli("127.0.0.1", port);
    cli.set_read_timeout(10, 0);
    REQUIRE(cli.Post("/session/start", json{{"plan", short_plan(60, 30)}}.dump(), "application/json")->status == 200);

    std::string buffer;
    std::vector<json> frames;
    std::vector<std::uint64_t> ids;
    cli.Get("/events?after=0", [&](const char* data, std::size_t len) {
        buffer.append(data, len);
        std::size_t end;
        while ((end = buffer.find("\n\n")) != std::string::npos) {
            const std::string msg = buffer.substr(0, end);
            buffer.erase(0, end + 2);
            std::uint64_t id = 0;
            std::string payload;
            std::size_t pos = 0;
            while (pos < msg.size()) {
                std::size_t nl = msg.find('\n', pos);
                if (nl == std::string::npos) nl = msg.size();
                const std::string line = msg.substr(pos, nl - pos);
                if (line.rfind("id: ", 0) == 0) id = std::stoull(line.substr(4));
                if (line.rfind("data: ", 0) == 0) payload = line.substr(6);
                pos = nl + 1;
            }
            if (!payload.empty()) {
                ids.push_back(id);
                frames.push_back(json::parse(payload));
            }
        }
        return frames.size() < 5;
    });
    REQUIRE(frames.size() >= 5);
    for (std::size_t i = 1; i < ids.size(); ++i) CHECK(ids[i] > ids[i - 1]);
    CHECK(frames.back().contains("pose"));
    CHECK(frames.back().at("effects").contains("fov"));
    CHECK(frames.back().contains("pending_fms"));
    http.stop();
    svc.stop_background();
}
