#include "csaf/registry/scene.hpp"

#include "csaf/core/error.hpp"

#include <algorithm>

namespace csaf::registry {

const Attachment* SceneEntity::attachment(std::string_view type) const {
    const auto it = attachments.find(type);
    return it == attachments.end() ? nullptr : &it->second;
}

std::vector<std::string> SceneEntity::active_features() const {
    std::vector<std::string> out;
    for (const auto& [type, a] : attachments)
        if (a.enabled) out.push_back(type);
    return out;
}

bool same_attachments(const SceneEntity& a, const SceneEntity& b) { return a.attachments == b.attachments; }

std::vector<const TypeTag*> available_extensions(const Registry& registry, const SceneEntity& entity) {
    std::vector<const TypeTag*> out;
    for (const auto& t : registry.types())
        if (t.extends && entity.attachments.contains(*t.extends)) out.push_back(&t);
    return out;
}

SceneEntity attach(const Registry& registry, SceneEntity entity, std::string_view type) {
    const TypeTag& tag = registry.get(type);
    if (!entity.attachments.contains(type)) entity.attachments.emplace(tag.identifier, Attachment{registry.defaults(tag), true});
    return entity;
}

SceneEntity toggle_feature(const Registry& registry, SceneEntity entity, std::string_view type, bool on) {
    const TypeTag& tag = registry.get(type);
    auto it = entity.attachments.find(type);
    if (on) {
        if (tag.extends) {
            require(entity.attachments.contains(*tag.extends), ErrorCode::Conflict,
                    "extension '" + tag.identifier + "' requires a '" + *tag.extends + "' attachment");
        }
        if (it == entity.attachments.end()) {
            entity.attachments.emplace(tag.identifier, Attachment{registry.defaults(tag), true});
        } else {
            it->second.enabled = true;
        }
    } else if (it != entity.attachments.end()) {
        it->second.enabled = false;
    }
    return entity;
}

EntityId Scene::create_entity(std::string display_name) {
    const EntityId id{next_id_++};
    entities_.emplace(id, SceneEntity{id, std::move(display_name), {}});
    return id;
}

void Scene::rename(EntityId id, std::string display_name) {
    const auto it = entities_.find(id);
    require(it != entities_.end(), ErrorCode::NotFound, "no entity " + std::to_string(id.value));
    it->second.display_name = std::move(display_name);
}

void Scene::remove(EntityId id) {
    require(entities_.erase(id) == 1, ErrorCode::NotFound, "no entity " + std::to_string(id.value));
}

void Scene::replace(const SceneEntity& entity) {
    const auto it = entities_.find(entity.id);
    require(it != entities_.end(), ErrorCode::NotFound, "no entity " + std::to_string(entity.id.value));
    it->second = entity;
}

const SceneEntity* Scene::find(EntityId id) const {
    const auto it = entities_.find(id);
    return it == entities_.end() ? nullptr : &it->second;
}

const SceneEntity& Scene::entity(EntityId id) const {
    const SceneEntity* e = find(id);
    if (e == nullptr) fail(ErrorCode::NotFound, "no entity " + std::to_string(id.value));
    return *e;
}

} // namespace csaf::registry
