#pragma once

#include "csaf/registry/preset.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <utility>

namespace csaf::registry {

/// Preset store keyed by (target type, preset name). With a directory, every mutation is
/// mirrored to `<dir>/<target_type>.<preset_name>.preset.json`.
class PresetLibrary {
  public:
    explicit PresetLibrary(const Registry& registry, std::optional<std::filesystem::path> directory = std::nullopt);

    /// Loads every `*.preset.json` in the directory. Returns warnings from conforming old documents.
    std::vector<std::string> load_directory();

    const PresetDoc& create_preset(std::string_view type, std::string name, const FieldMap& values);
    /// Inserts or overwrites a document after conforming it to the registry.
    const PresetDoc& put(const PresetDoc& doc);
    void remove(std::string_view type, std::string_view name);

    [[nodiscard]] const PresetDoc* find(std::string_view type, std::string_view name) const;
    [[nodiscard]] const PresetDoc& get(std::string_view type, std::string_view name) const;
    [[nodiscard]] std::vector<const PresetDoc*> list_presets_for(std::string_view type) const;
    [[nodiscard]] std::vector<const PresetDoc*> all() const;

  private:
    void persist(const PresetDoc& doc) const;

    const Registry* registry_;
    std::optional<std::filesystem::path> directory_;
    std::map<std::pair<std::string, std::string>, PresetDoc> docs_;
};

} // namespace csaf::registry
