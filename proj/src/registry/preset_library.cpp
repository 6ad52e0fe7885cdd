#include "csaf/registry/preset_library.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"

namespace csaf::registry {

namespace fs = std::filesystem;

PresetLibrary::PresetLibrary(const Registry& registry, std::optional<fs::path> directory)
    : registry_(&registry), directory_(std::move(directory)) {}

std::vector<std::string> PresetLibrary::load_directory() {
    std::vector<std::string> warnings;
    if (!directory_ || !fs::exists(*directory_)) return warnings;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(*directory_)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.ends_with(".preset.json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        PresetDoc doc = deserialize(*registry_, csv::read_file(file), &warnings);
        docs_.insert_or_assign({doc.target_type, doc.preset_name}, std::move(doc));
    }
    return warnings;
}

const PresetDoc& PresetLibrary::create_preset(std::string_view type, std::string name, const FieldMap& values) {
    require(find(type, name) == nullptr, ErrorCode::Duplicate,
            "preset '" + name + "' already exists for " + std::string(type));
    return put(registry::create_preset(*registry_, type, std::move(name), values));
}

const PresetDoc& PresetLibrary::put(const PresetDoc& doc) {
    require(is_valid_preset_name(doc.preset_name), ErrorCode::InvalidArgument,
            "invalid preset name '" + doc.preset_name + "'");
    PresetDoc conformed = conform_preset(*registry_, doc);
    persist(conformed);
    auto [it, inserted] = docs_.insert_or_assign({conformed.target_type, conformed.preset_name}, std::move(conformed));
    return it->second;
}

void PresetLibrary::remove(std::string_view type, std::string_view name) {
    const auto it = docs_.find({std::string(type), std::string(name)});
    require(it != docs_.end(), ErrorCode::NotFound, "no preset " + std::string(type) + "." + std::string(name));
    if (directory_) {
        std::error_code ec;
        fs::remove(*directory_ / preset_file_name(it->second), ec);
    }
    docs_.erase(it);
}

const PresetDoc* PresetLibrary::find(std::string_view type, std::string_view name) const {
    const auto it = docs_.find({std::string(type), std::string(name)});
    return it == docs_.end() ? nullptr : &it->second;
}

const PresetDoc& PresetLibrary::get(std::string_view type, std::string_view name) const {
    const PresetDoc* doc = find(type, name);
    if (doc == nullptr) fail(ErrorCode::NotFound, "no preset " + std::string(type) + "." + std::string(name));
    return *doc;
}

std::vector<const PresetDoc*> PresetLibrary::list_presets_for(std::string_view type) const {
    std::vector<const PresetDoc*> out;
    for (const auto& [key, doc] : docs_)
        if (key.first == type) out.push_back(&doc);
    return out;
}

std::vector<const PresetDoc*> PresetLibrary::all() const {
    std::vector<const PresetDoc*> out;
    for (const auto& [key, doc] : docs_) out.push_back(&doc);
    return out;
}

void PresetLibrary::persist(const PresetDoc& doc) const {
    if (directory_) csv::write_file(*directory_ / preset_file_name(doc), serialize(doc));
}

} // namespace csaf::registry
