#include "csaf/core/error.hpp"
#include "csaf/registry/builtin_types.hpp"
#include "csaf/registry/preset.hpp"
#include "csaf/registry/preset_library.hpp"
#include "csaf/registry/registry.hpp"
#include "csaf/registry/scene.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>

using namespace csaf;
using namespace csaf::registry;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Io;
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("csaf_registry_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("built-in categories come in declaration order") {
    const Registry r = make_builtin_registry();
    const auto cats = r.list_categories();
    REQUIRE(cats.size() == 4);
    CHECK(cats[0] == Category::experiment());
    CHECK(cats[1] == Category::environment());
    CHECK(cats[2] == Category::vision());
    CHECK(cats[3] == Category::locomotion());
    CHECK(r.types_in(Category::vision()).size() == 6);
}

TEST_CASE("registration rejects duplicates, bad names, and dangling extensions") {
    Registry r = make_builtin_registry();
    CHECK(code_of([&] { r.register_type(TypeTag{"FovRestrictor", Category::vision(), {}, {}, 1}); }) ==
          ErrorCode::Duplicate);
    CHECK(code_of([&] { r.register_type(TypeTag{"bad name", Category::vision(), {}, {}, 1}); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([&] { r.register_type(TypeTag{"Ext", Category::vision(), {}, std::string("Nope"), 1}); }) ==
          ErrorCode::NotFound);
    const auto receipt = r.register_type(TypeTag{"CustomThing", Category{"Custom"}, {}, {}, 1});
    CHECK(receipt.category.name == "Custom");
    CHECK(r.list_categories().back().name == "Custom");
}

TEST_CASE("feature name validation") {
    const Registry r = make_builtin_registry();
    CHECK(r.validate_feature_name("NewFeature") == NameCheck::Ok);
    CHECK(r.validate_feature_name("FovRestrictor") == NameCheck::Duplicate);
    CHECK(r.validate_feature_name("9lives") == NameCheck::InvalidIdentifier);
    CHECK(r.validate_feature_name("") == NameCheck::InvalidIdentifier);
    CHECK(r.validate_feature_name("has-dash") == NameCheck::InvalidIdentifier);
}

TEST_CASE("complete_values fills defaults and enforces the schema") {
    const Registry r = make_builtin_registry();
    const TypeTag& fov = r.get(builtin::kFovRestrictor);
    const auto full = r.complete_values(fov, {{"fov_min", 45.0}});
    CHECK(full.at("fov_min").as_real() == 45.0);
    CHECK(full.at("fov_max").as_real() == 110.0);
    CHECK(full.size() == fov.fields.size());
    CHECK(r.complete_values(fov, {{"fov_min", 45}}).at("fov_min").as_real() == 45.0);
    CHECK(code_of([&] { (void)r.complete_values(fov, {{"bogus", 1.0}}); }) == ErrorCode::UnknownField);
    CHECK(code_of([&] { (void)r.complete_values(fov, {{"dynamic", 1.0}}); }) == ErrorCode::TypeMismatch);
    const TypeTag& rest = r.get(builtin::kRestFrames);
    CHECK(code_of([&] { (void)r.complete_values(rest, {{"model", EnumValue{"cape"}}}); }) == ErrorCode::TypeMismatch);
    CHECK(code_of([&] { (void)r.get("Missing"); }) == ErrorCode::NotFound);
}

TEST_CASE("toggle disables without losing values, extensions need their base") {
    const Registry r = make_builtin_registry();
    Scene scene;
    const EntityId id = scene.create_entity("Main Camera");
    SceneEntity cam = scene.entity(id);
    CHECK(available_extensions(r, cam).empty());
    CHECK(code_of([&] { (void)toggle_feature(r, cam, builtin::kCameraRotator, true); }) == ErrorCode::Conflict);
    cam = toggle_feature(r, cam, builtin::kCamera, true);
    const auto ext = available_extensions(r, cam);
    REQUIRE(ext.size() == 1);
    CHECK(ext[0]->identifier == builtin::kCameraRotator);

    cam = toggle_feature(r, cam, builtin::kFovRestrictor, true);
    PresetDoc p = create_preset(r, builtin::kFovRestrictor, "narrow", {{"fov_min", 40.0}});
    cam = apply_preset(r, cam, p);
    cam = toggle_feature(r, cam, builtin::kFovRestrictor, false);
    CHECK_FALSE(cam.attachment(builtin::kFovRestrictor)->enabled);
    CHECK(cam.active_features() == std::vector<std::string>{builtin::kCamera});
    cam = toggle_feature(r, cam, builtin::kFovRestrictor, true);
    CHECK(cam.attachment(builtin::kFovRestrictor)->values.at("fov_min").as_real() == 40.0);
    scene.replace(cam);
    scene.rename(id, "Renamed");
    CHECK(same_attachments(scene.entity(id), cam));
    CHECK(scene.entity(id).display_name == "Renamed");
}

TEST_CASE("entity ids are never reused") {
    Scene scene;
    const EntityId a = scene.create_entity("a");
    scene.remove(a);
    const EntityId b = scene.create_entity("a");
    CHECK(b.value != a.value);
    CHECK(scene.find(a) == nullptr);
    CHECK(code_of([&] { (void)scene.entity(a); }) == ErrorCode::NotFound);
}

TEST_CASE("preset round trip is exact") {
    const Registry r = make_builtin_registry();
    const PresetDoc doc = create_preset(r, builtin::kRestFrames, "hat",
                                        {{"model", EnumValue{"hat"}},
                                         {"offset_position", Vec3(0.1, 0.2 / 3.0, -1e-17)},
                                         {"offset_rotation", Quat(0.5, 0.5, 0.5, 0.5)}});
    const std::string text = serialize(doc);
    CHECK(text.back() == '\n');
    const PresetDoc back = deserialize(r, text);
    CHECK(back == doc);
    CHECK(serialize(back) == text);
    CHECK(preset_file_name(doc) == "RestFrames.hat.preset.json");
}

TEST_CASE("extract after apply is the identity on values and ignores entity names") {
    const Registry r = make_builtin_registry();
    const PresetDoc p = create_preset(r, builtin::kVisionSnapper, "quick", {{"hold", 0.35}});
    SceneEntity a;
    a.id = EntityId{1};
    a.display_name = "A";
    SceneEntity b;
    b.id = EntityId{77};
    b.display_name = "Something else entirely";
    a = attach(r, a, builtin::kVisionSnapper);
    b = attach(r, b, builtin::kVisionSnapper);
    const PresetDoc ea = extract_preset(r, apply_preset(r, a, p), builtin::kVisionSnapper, "quick");
    const PresetDoc eb = extract_preset(r, apply_preset(r, b, p), builtin::kVisionSnapper, "quick");
    CHECK(ea == p);
    CHECK(serialize(ea) == serialize(eb));
    CHECK(serialize(ea).find("Something") == std::string::npos);
}

TEST_CASE("schema versions: older documents drop fields, newer ones are rejected") {
    const Registry r = make_builtin_registry();
    nlohmann::json doc = to_json(create_preset(r, builtin::kPixelize, "p", {{"screen_height", 135}}));
    doc["schema_version"] = 2;
    CHECK(code_of([&] { (void)preset_from_json(r, doc); }) == ErrorCode::VersionUnsupported);

    Registry r2 = make_builtin_registry();
    r2.register_type(TypeTag{"Versioned", Category::vision(), {{"a", FieldType::Real, "", FieldValue(1.0), {}}}, {}, 2});
    nlohmann::json old = {{"preset_name", "o"},
                          {"target_type", "Versioned"},
                          {"schema_version", 1},
                          {"values", {{"a", 3.0}, {"gone", 9.0}}}};
    std::vector<std::string> warnings;
    const PresetDoc conformed = preset_from_json(r2, old, &warnings);
    CHECK(warnings.size() == 1);
    CHECK(conformed.schema_version == 2);
    CHECK(conformed.values.at("a").as_real() == 3.0);
    CHECK(conformed.values.count("gone") == 0);

    nlohmann::json unknown = old;
    unknown["target_type"] = "NoSuchType";
    CHECK(code_of([&] { (void)preset_from_json(r2, unknown); }) == ErrorCode::NotFound);
    CHECK_THROWS_AS((void)deserialize(r, "{not json"), Error);
}

TEST_CASE("preset library mirrors to disk") {
    const Registry r = make_builtin_registry();
    const auto dir = fresh_dir("library");
    {
        PresetLibrary lib(r, dir);
        lib.create_preset(builtin::kFovRestrictor, "a", {{"fov_min", 50.0}});
        lib.create_preset(builtin::kFovRestrictor, "b", {});
        lib.create_preset(builtin::kPixelize, "c", {});
        CHECK(lib.list_presets_for(builtin::kFovRestrictor).size() == 2);
        lib.remove(builtin::kFovRestrictor, "b");
        CHECK(code_of([&] { lib.remove(builtin::kFovRestrictor, "b"); }) == ErrorCode::NotFound);
        CHECK(code_of([&] { lib.create_preset(builtin::kPixelize, "c", {}); }) == ErrorCode::Duplicate);
    }
    CHECK(std::filesystem::exists(dir / "FovRestrictor.a.preset.json"));
    CHECK_FALSE(std::filesystem::exists(dir / "FovRestrictor.b.preset.json"));
    PresetLibrary reloaded(r, dir);
    reloaded.load_directory();
    CHECK(reloaded.all().size() == 2);
    CHECK(reloaded.get(builtin::kFovRestrictor, "a").values.at("fov_min").as_real() == 50.0);
}
