#pragma once

#include "csaf/registry/scene.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace csaf::registry {

/// Shareable parameter bundle for one feature type. Contains no entity names or ids.
struct PresetDoc {
    std::string preset_name;
    std::string target_type;
    int schema_version = 1;
    FieldMap values;

    bool operator==(const PresetDoc&) const = default;
};

bool is_valid_preset_name(std::string_view name);

/// `<target_type>.<preset_name>.preset.json`
std::string preset_file_name(const PresetDoc& doc);

PresetDoc create_preset(const Registry& registry, std::string_view type, std::string name, const FieldMap& values);

/// Normalizes a document against the registry. Fields unknown to an older-version document are
/// dropped (one warning each); newer versions are rejected.
PresetDoc conform_preset(const Registry& registry, const PresetDoc& doc, std::vector<std::string>* warnings = nullptr);

/// Writes the preset's values into the entity's attachment of the target type.
SceneEntity apply_preset(const Registry& registry, SceneEntity entity, const PresetDoc& preset,
                         std::vector<std::string>* warnings = nullptr);

PresetDoc extract_preset(const Registry& registry, const SceneEntity& entity, std::string_view type,
                         std::string name = "extracted");

nlohmann::json field_to_json(const FieldValue& value);
FieldValue field_from_json(const nlohmann::json& value, const FieldSpec& spec);

nlohmann::json to_json(const PresetDoc& doc);
/// Schema-directed decode. Unknown type or malformed document throws.
PresetDoc preset_from_json(const Registry& registry, const nlohmann::json& doc,
                           std::vector<std::string>* warnings = nullptr);

/// Canonical UTF-8 text (sorted keys, two-space indent, trailing newline).
std::string serialize(const PresetDoc& doc);
PresetDoc deserialize(const Registry& registry, std::string_view text, std::vector<std::string>* warnings = nullptr);

} // namespace csaf::registry
