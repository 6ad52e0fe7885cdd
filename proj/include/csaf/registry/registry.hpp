#pragma once

#include "csaf/registry/field_value.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csaf::registry {

/// Feature category label. The four built-ins are always declared first, in this order.
struct Category {
    std::string name;
    bool operator==(const Category&) const = default;

    static Category experiment() { return {"Experiment"}; }
    static Category environment() { return {"Environment"}; }
    static Category vision() { return {"Vision"}; }
    static Category locomotion() { return {"Locomotion"}; }
};

struct FieldSpec {
    std::string name;
    FieldType type = FieldType::Real;
    std::string unit;
    FieldValue default_value;
    std::vector<std::string> enum_options; ///< only for FieldType::Enum
};

/// A registered feature type. `extends` names the type this one is an extension of.
struct TypeTag {
    std::string identifier;
    Category category;
    std::vector<FieldSpec> fields;
    std::optional<std::string> extends;
    int schema_version = 1;

    [[nodiscard]] const FieldSpec* field(std::string_view name) const;
    [[nodiscard]] bool is_extension() const { return extends.has_value(); }
};

struct Receipt {
    std::string identifier;
    Category category;
    std::size_t index = 0; ///< registration order
};

enum class NameCheck { Ok, InvalidIdentifier, Duplicate };

const char* to_string(NameCheck check);

bool is_valid_identifier(std::string_view name);

/// Checks a value against a field spec (type and enum membership). Integers are accepted for reals.
bool conforms(const FieldSpec& spec, const FieldValue& value);

/// Code-driven feature type registry. Built at startup, read-only afterwards.
class Registry {
  public:
    Registry();

    /// Declares a category; no-op when already declared. Returns its index in the stable order.
    std::size_t declare_category(const Category& category);

    Receipt register_type(TypeTag tag);

    [[nodiscard]] NameCheck validate_feature_name(std::string_view name) const;

    [[nodiscard]] const TypeTag* find(std::string_view identifier) const;
    /// Throws NotFound for unregistered identifiers.
    [[nodiscard]] const TypeTag& get(std::string_view identifier) const;

    [[nodiscard]] const std::vector<TypeTag>& types() const { return types_; }
    [[nodiscard]] std::vector<const TypeTag*> types_in(const Category& category) const;

    /// Categories that have at least one registered type, in declaration order.
    [[nodiscard]] std::vector<Category> list_categories() const;
    [[nodiscard]] const std::vector<Category>& declared_categories() const { return categories_; }

    /// Fills missing fields with schema defaults; throws UnknownField / TypeMismatch.
    [[nodiscard]] FieldMap complete_values(const TypeTag& type, const FieldMap& values) const;
    [[nodiscard]] FieldMap defaults(const TypeTag& type) const;

  private:
    std::vector<Category> categories_;
    std::vector<TypeTag> types_;
};

} // namespace csaf::registry
