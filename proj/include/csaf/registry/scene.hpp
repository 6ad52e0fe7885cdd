#pragma once

#include "csaf/registry/registry.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace csaf::registry {

/// Opaque, never-reused entity handle. Display names are cosmetic.
struct EntityId {
    std::uint64_t value = 0;
    auto operator<=>(const EntityId&) const = default;
};

struct Attachment {
    FieldMap values;
    bool enabled = true;
    bool operator==(const Attachment&) const = default;
};

struct SceneEntity {
    EntityId id;
    std::string display_name;
    std::map<std::string, Attachment, std::less<>> attachments; ///< keyed by type identifier

    [[nodiscard]] const Attachment* attachment(std::string_view type) const;
    /// Enabled attachments, by type identifier.
    [[nodiscard]] std::vector<std::string> active_features() const;
};

/// Entities whose attachments equal each other; display names and ids are ignored.
bool same_attachments(const SceneEntity& a, const SceneEntity& b);

/// Registered extension types whose extended type is attached to `entity`, in registration order.
std::vector<const TypeTag*> available_extensions(const Registry& registry, const SceneEntity& entity);

/// Adds (with schema defaults) or re-enables an attachment, or disables it keeping its values.
SceneEntity toggle_feature(const Registry& registry, SceneEntity entity, std::string_view type, bool on);

/// Attaches a feature with its schema defaults (enabled). Replaces nothing if already attached.
SceneEntity attach(const Registry& registry, SceneEntity entity, std::string_view type);

/// Owns entities and hands out ids. Single writer.
class Scene {
  public:
    EntityId create_entity(std::string display_name);
    void rename(EntityId id, std::string display_name);
    void remove(EntityId id);
    void replace(const SceneEntity& entity);

    [[nodiscard]] const SceneEntity& entity(EntityId id) const;
    [[nodiscard]] const SceneEntity* find(EntityId id) const;
    [[nodiscard]] const std::map<EntityId, SceneEntity>& entities() const { return entities_; }

    std::string name;

  private:
    std::map<EntityId, SceneEntity> entities_;
    std::uint64_t next_id_ = 1;
};

} // namespace csaf::registry
