#pragma once

#include "csaf/environment/music.hpp"
#include "csaf/environment/path.hpp"
#include "csaf/environment/terrain.hpp"
#include "csaf/registry/scene.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace csaf::environment {

struct CollectibleParams {
    int count = 0;
    double jitter = 0.0;
    std::optional<std::uint64_t> seed;  ///< defaults to the session seed
    std::vector<Vec3> free_positions;   ///< explicit placements used instead of path stations when non-empty
};

struct SceneObject {
    std::string kind;
    Vec3 position = Vec3::Zero();
};

struct FeatureSetting {
    std::string type;
    bool enabled = true;
    nlohmann::json values = nlohmann::json::object();
};

struct EntitySetting {
    std::string name;
    std::vector<FeatureSetting> features;
};

/// Content of a `*.scene.json` file.
struct SceneDescription {
    std::string name;
    std::string theme;
    std::string complexity;
    std::optional<TerrainSpec> terrain;
    std::optional<PathSpec> path;
    CollectibleParams collectibles;
    std::optional<MusicTimeline> music;
    std::vector<SceneObject> objects;
    std::vector<EntitySetting> entities;
};

SceneDescription scene_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SceneDescription& scene);
SceneDescription load_scene_description(const std::filesystem::path& file);

nlohmann::json to_json(const TerrainSpec& spec);
TerrainSpec terrain_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const PathSpec& spec);
PathSpec path_from_json(const nlohmann::json& doc);

/// Creates registry entities for the description's entity list, attaching and configuring features.
registry::Scene instantiate_entities(const registry::Registry& registry, const SceneDescription& scene);

} // namespace csaf::environment
