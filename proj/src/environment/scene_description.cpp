#include "csaf/environment/scene_description.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"
#include "csaf/registry/preset.hpp"

namespace csaf::environment {

using nlohmann::json;

namespace {

Vec3 vec3_from(const json& v, const char* what) {
    require(v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() && v[2].is_number(),
            ErrorCode::Parse, std::string(what) + " must be [x, y, z]");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json vec3_to(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Track track_from(const json& t) {
    require(t.is_object() && t.contains("id") && t.contains("duration"), ErrorCode::Parse,
            "music track needs 'id' and 'duration'");
    return {t.at("id").get<std::string>(), t.at("duration").get<double>(), t.value("bpm", 0.0)};
}

json track_to(const Track& t) { return json{{"id", t.id}, {"duration", t.duration}, {"bpm", t.bpm}}; }

const char* interpolation_name(PathInterpolation i) {
    return i == PathInterpolation::Linear ? "linear" : "catmull_rom";
}

} // namespace

json to_json(const TerrainSpec& s) {
    return json{{"seed", s.seed},           {"width", s.width},         {"depth", s.depth},
                {"cell_size", s.cell_size}, {"amplitude", s.amplitude}, {"frequency", s.frequency},
                {"octaves", s.octaves},     {"persistence", s.persistence}};
}

TerrainSpec terrain_from_json(const json& d) {
    require(d.is_object(), ErrorCode::Parse, "terrain section must be an object");
    TerrainSpec s;
    s.seed = d.value("seed", s.seed);
    s.width = d.value("width", s.width);
    s.depth = d.value("depth", s.depth);
    s.cell_size = d.value("cell_size", s.cell_size);
    s.amplitude = d.value("amplitude", s.amplitude);
    s.frequency = d.value("frequency", s.frequency);
    s.octaves = d.value("octaves", s.octaves);
    s.persistence = d.value("persistence", s.persistence);
    validate(s);
    return s;
}

json to_json(const PathSpec& s) {
    json points = json::array();
    for (const auto& p : s.control_points) points.push_back(vec3_to(p));
    return json{{"control_points", points},
                {"closed", s.closed},
                {"sample_count", s.sample_count},
                {"interpolation", interpolation_name(s.interpolation)}};
}

PathSpec path_from_json(const json& d) {
    require(d.is_object() && d.contains("control_points") && d.at("control_points").is_array(), ErrorCode::Parse,
            "path section needs a 'control_points' array");
    PathSpec s;
    for (const auto& p : d.at("control_points")) s.control_points.push_back(vec3_from(p, "control point"));
    s.closed = d.value("closed", false);
    s.sample_count = d.value("sample_count", 1024);
    const std::string interp = d.value("interpolation", std::string("catmull_rom"));
    require(interp == "catmull_rom" || interp == "linear", ErrorCode::Parse, "unknown interpolation '" + interp + "'");
    s.interpolation = interp == "linear" ? PathInterpolation::Linear : PathInterpolation::CentripetalCatmullRom;
    validate(s);
    return s;
}

SceneDescription scene_from_json(const json& d) {
    require(d.is_object(), ErrorCode::Parse, "scene description must be a JSON object");
    SceneDescription s;
    s.name = d.value("name", std::string());
    require(!s.name.empty(), ErrorCode::Parse, "scene description needs a 'name'");
    s.theme = d.value("theme", std::string());
    s.complexity = d.value("complexity", std::string());
    if (d.contains("terrain") && !d.at("terrain").is_null()) s.terrain = terrain_from_json(d.at("terrain"));
    if (d.contains("path") && !d.at("path").is_null()) s.path = path_from_json(d.at("path"));
    if (d.contains("collectibles")) {
        const json& c = d.at("collectibles");
        s.collectibles.count = c.value("count", 0);
        s.collectibles.jitter = c.value("jitter", 0.0);
        if (c.contains("seed")) s.collectibles.seed = c.at("seed").get<std::uint64_t>();
        if (c.contains("free_positions"))
            for (const auto& p : c.at("free_positions")) s.collectibles.free_positions.push_back(vec3_from(p, "free position"));
        require(s.collectibles.count >= 0 && s.collectibles.jitter >= 0.0, ErrorCode::Parse,
                "collectible count and jitter must be >= 0");
    }
    if (d.contains("music") && !d.at("music").is_null()) {
        const json& m = d.at("music");
        MusicTimeline t;
        if (m.contains("intro") && !m.at("intro").is_null()) t.intro = track_from(m.at("intro"));
        if (m.contains("loop"))
            for (const auto& track : m.at("loop")) t.loop_tracks.push_back(track_from(track));
        t.horizon = m.value("horizon", 0.0);
        validate(t);
        s.music = std::move(t);
    }
    if (d.contains("objects"))
        for (const auto& o : d.at("objects"))
            s.objects.push_back({o.at("kind").get<std::string>(), vec3_from(o.at("position"), "object position")});
    if (d.contains("entities")) {
        for (const auto& e : d.at("entities")) {
            EntitySetting setting;
            setting.name = e.at("name").get<std::string>();
            if (e.contains("features"))
                for (const auto& f : e.at("features"))
                    setting.features.push_back(
                        {f.at("type").get<std::string>(), f.value("enabled", true), f.value("values", json::object())});
            s.entities.push_back(std::move(setting));
        }
    }
    return s;
}

json to_json(const SceneDescription& s) {
    json d{{"name", s.name}, {"theme", s.theme}, {"complexity", s.complexity}};
    d["terrain"] = s.terrain ? to_json(*s.terrain) : json(nullptr);
    d["path"] = s.path ? to_json(*s.path) : json(nullptr);
    json c{{"count", s.collectibles.count}, {"jitter", s.collectibles.jitter}};
    if (s.collectibles.seed) c["seed"] = *s.collectibles.seed;
    if (!s.collectibles.free_positions.empty()) {
        c["free_positions"] = json::array();
        for (const auto& p : s.collectibles.free_positions) c["free_positions"].push_back(vec3_to(p));
    }
    d["collectibles"] = c;
    if (s.music) {
        json loop = json::array();
        for (const auto& t : s.music->loop_tracks) loop.push_back(track_to(t));
        d["music"] = json{{"intro", s.music->intro ? track_to(*s.music->intro) : json(nullptr)},
                          {"loop", loop},
                          {"horizon", s.music->horizon}};
    } else {
        d["music"] = nullptr;
    }
    d["objects"] = json::array();
    for (const auto& o : s.objects) d["objects"].push_back({{"kind", o.kind}, {"position", vec3_to(o.position)}});
    d["entities"] = json::array();
    for (const auto& e : s.entities) {
        json features = json::array();
        for (const auto& f : e.features) features.push_back({{"type", f.type}, {"enabled", f.enabled}, {"values", f.values}});
        d["entities"].push_back({{"name", e.name}, {"features", features}});
    }
    return d;
}

SceneDescription load_scene_description(const std::filesystem::path& file) {
    const json parsed = json::parse(csv::read_file(file), nullptr, false);
    require(!parsed.is_discarded(), ErrorCode::Parse, file.string() + " is not valid JSON");
    return scene_from_json(parsed);
}

registry::Scene instantiate_entities(const registry::Registry& registry, const SceneDescription& scene) {
    registry::Scene out;
    out.name = scene.name;
    for (const auto& setting : scene.entities) {
        const registry::EntityId id = out.create_entity(setting.name);
        registry::SceneEntity entity = out.entity(id);
        // base features first so extensions find their extended attachment
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& f : setting.features) {
                const registry::TypeTag& tag = registry.get(f.type);
                if (tag.is_extension() != (pass == 1)) continue;
                entity = registry::toggle_feature(registry, std::move(entity), f.type, true);
                registry::FieldMap values;
                for (const auto& [name, value] : f.values.items()) {
                    const registry::FieldSpec* spec = tag.field(name);
                    require(spec != nullptr, ErrorCode::UnknownField, "'" + f.type + "' has no field '" + name + "'");
                    values.emplace(name, registry::field_from_json(value, *spec));
                }
                entity.attachments.at(tag.identifier).values = registry.complete_values(tag, values);
                if (!f.enabled) entity = registry::toggle_feature(registry, std::move(entity), f.type, false);
            }
        }
        out.replace(entity);
    }
    return out;
}

} // namespace csaf::environment
