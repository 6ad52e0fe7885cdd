#include "csaf/registry/preset.hpp"

#include "csaf/core/error.hpp"

#include <algorithm>
#include <cctype>

namespace csaf::registry {

using nlohmann::json;

bool is_valid_preset_name(std::string_view name) {
    if (name.empty() || name.size() > 128) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

std::string preset_file_name(const PresetDoc& doc) { return doc.target_type + "." + doc.preset_name + ".preset.json"; }

PresetDoc create_preset(const Registry& registry, std::string_view type, std::string name, const FieldMap& values) {
    const TypeTag& tag = registry.get(type);
    require(is_valid_preset_name(name), ErrorCode::InvalidArgument, "invalid preset name '" + name + "'");
    return PresetDoc{std::move(name), tag.identifier, tag.schema_version, registry.complete_values(tag, values)};
}

PresetDoc conform_preset(const Registry& registry, const PresetDoc& doc, std::vector<std::string>* warnings) {
    const TypeTag& tag = registry.get(doc.target_type);
    require(doc.schema_version >= 1, ErrorCode::InvalidArgument, "schema_version must be >= 1");
    if (doc.schema_version > tag.schema_version)
        fail(ErrorCode::VersionUnsupported, "preset '" + doc.preset_name + "' has schema_version " +
                                                std::to_string(doc.schema_version) + ", registry supports " +
                                                std::to_string(tag.schema_version) + " for " + tag.identifier);
    FieldMap kept;
    for (const auto& [name, value] : doc.values) {
        if (tag.field(name) == nullptr && doc.schema_version < tag.schema_version) {
            if (warnings)
                warnings->push_back("dropped field '" + name + "' from " + tag.identifier + " schema_version " +
                                    std::to_string(doc.schema_version));
            continue;
        }
        kept.emplace(name, value);
    }
    return PresetDoc{doc.preset_name, tag.identifier, tag.schema_version, registry.complete_values(tag, kept)};
}

SceneEntity apply_preset(const Registry& registry, SceneEntity entity, const PresetDoc& preset,
                         std::vector<std::string>* warnings) {
    const PresetDoc conformed = conform_preset(registry, preset, warnings);
    const auto it = entity.attachments.find(conformed.target_type);
    require(it != entity.attachments.end(), ErrorCode::NotFound,
            "entity " + std::to_string(entity.id.value) + " has no '" + conformed.target_type + "' attachment");
    it->second.values = conformed.values;
    return entity;
}

PresetDoc extract_preset(const Registry& registry, const SceneEntity& entity, std::string_view type, std::string name) {
    const TypeTag& tag = registry.get(type);
    const Attachment* a = entity.attachment(type);
    require(a != nullptr, ErrorCode::NotFound,
            "entity " + std::to_string(entity.id.value) + " has no '" + tag.identifier + "' attachment");
    return PresetDoc{std::move(name), tag.identifier, tag.schema_version, a->values};
}

json field_to_json(const FieldValue& value) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, EnumValue>) {
                return v.label;
            } else if constexpr (std::is_same_v<T, Vec3>) {
                return json::array({v.x(), v.y(), v.z()});
            } else if constexpr (std::is_same_v<T, Quat>) {
                return json::array({v.w(), v.x(), v.y(), v.z()});
            } else if constexpr (std::is_same_v<T, PresetRef>) {
                return json{{"target_type", v.target_type}, {"preset_name", v.preset_name}};
            } else {
                return json(v);
            }
        },
        value.storage());
}

namespace {

[[noreturn]] void mismatch(const FieldSpec& spec, const json& value) {
    fail(ErrorCode::TypeMismatch,
         "field '" + spec.name + "' expects " + to_string(spec.type) + ", got " + std::string(value.type_name()));
}

double number(const FieldSpec& spec, const json& v) {
    if (!v.is_number()) mismatch(spec, v);
    return v.get<double>();
}

} // namespace

FieldValue field_from_json(const json& v, const FieldSpec& spec) {
    switch (spec.type) {
    case FieldType::Boolean:
        if (!v.is_boolean()) mismatch(spec, v);
        return FieldValue(v.get<bool>());
    case FieldType::Integer:
        if (!v.is_number_integer()) mismatch(spec, v);
        return FieldValue(v.get<std::int64_t>());
    case FieldType::Real: return FieldValue(number(spec, v));
    case FieldType::String:
        if (!v.is_string()) mismatch(spec, v);
        return FieldValue(v.get<std::string>());
    case FieldType::Enum:
        if (!v.is_string()) mismatch(spec, v);
        return FieldValue(EnumValue{v.get<std::string>()});
    case FieldType::Vector3:
        if (!v.is_array() || v.size() != 3) mismatch(spec, v);
        return FieldValue(Vec3(number(spec, v[0]), number(spec, v[1]), number(spec, v[2])));
    case FieldType::Quaternion:
        if (!v.is_array() || v.size() != 4) mismatch(spec, v);
        return FieldValue(Quat(number(spec, v[0]), number(spec, v[1]), number(spec, v[2]), number(spec, v[3])));
    case FieldType::PresetRef:
        if (!v.is_object() || !v.contains("target_type") || !v.contains("preset_name")) mismatch(spec, v);
        return FieldValue(PresetRef{v.at("target_type").get<std::string>(), v.at("preset_name").get<std::string>()});
    }
    mismatch(spec, v);
}

json to_json(const PresetDoc& doc) {
    json values = json::object();
    for (const auto& [name, value] : doc.values) values[name] = field_to_json(value);
    return json{{"preset_name", doc.preset_name},
                {"target_type", doc.target_type},
                {"schema_version", doc.schema_version},
                {"values", values}};
}

PresetDoc preset_from_json(const Registry& registry, const json& doc, std::vector<std::string>* warnings) {
    require(doc.is_object(), ErrorCode::Parse, "preset document must be a JSON object");
    for (const char* key : {"preset_name", "target_type", "schema_version", "values"})
        require(doc.contains(key), ErrorCode::Parse, std::string("preset document lacks '") + key + "'");
    require(doc.at("preset_name").is_string() && doc.at("target_type").is_string() &&
                doc.at("schema_version").is_number_integer() && doc.at("values").is_object(),
            ErrorCode::Parse, "preset document has mistyped header keys");

    PresetDoc out;
    out.preset_name = doc.at("preset_name").get<std::string>();
    out.target_type = doc.at("target_type").get<std::string>();
    out.schema_version = doc.at("schema_version").get<int>();
    require(is_valid_preset_name(out.preset_name), ErrorCode::InvalidArgument,
            "invalid preset name '" + out.preset_name + "'");
    const TypeTag& tag = registry.get(out.target_type);
    if (out.schema_version > tag.schema_version)
        fail(ErrorCode::VersionUnsupported, "preset '" + out.preset_name + "' has schema_version " +
                                                std::to_string(out.schema_version) + ", registry supports " +
                                                std::to_string(tag.schema_version));
    for (const auto& [name, value] : doc.at("values").items()) {
        const FieldSpec* spec = tag.field(name);
        if (spec == nullptr) {
            if (out.schema_version < tag.schema_version) {
                if (warnings)
                    warnings->push_back("dropped field '" + name + "' from " + tag.identifier + " schema_version " +
                                        std::to_string(out.schema_version));
                continue;
            }
            fail(ErrorCode::UnknownField, "'" + tag.identifier + "' has no field '" + name + "'");
        }
        out.values.emplace(name, field_from_json(value, *spec));
    }
    return conform_preset(registry, out, warnings);
}

std::string serialize(const PresetDoc& doc) { return to_json(doc).dump(2) + "\n"; }

PresetDoc deserialize(const Registry& registry, std::string_view text, std::vector<std::string>* warnings) {
    json parsed = json::parse(text, nullptr, false);
    require(!parsed.is_discarded(), ErrorCode::Parse, "preset file is not valid JSON");
    return preset_from_json(registry, parsed, warnings);
}

} // namespace csaf::registry
