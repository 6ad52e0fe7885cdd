#include "csaf/registry/registry.hpp"

#include "csaf/core/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace csaf::registry {

const FieldSpec* TypeTag::field(std::string_view name) const {
    for (const auto& f : fields)
        if (f.name == name) return &f;
    return nullptr;
}

const char* to_string(NameCheck check) {
    switch (check) {
    case NameCheck::Ok: return "ok";
    case NameCheck::InvalidIdentifier: return "invalid_identifier";
    case NameCheck::Duplicate: return "duplicate";
    }
    return "?";
}

bool is_valid_identifier(std::string_view name) {
    if (name.empty()) return false;
    const auto head = static_cast<unsigned char>(name.front());
    if (!(std::isalpha(head) || name.front() == '_')) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || c == '_';
    });
}

bool conforms(const FieldSpec& spec, const FieldValue& value) {
    if (spec.type == FieldType::Real && value.type() == FieldType::Integer) return true;
    if (value.type() != spec.type) return false;
    if (spec.type == FieldType::Enum)
        return std::find(spec.enum_options.begin(), spec.enum_options.end(), value.as_enum()) != spec.enum_options.end();
    if (spec.type == FieldType::Real) return std::isfinite(value.as_real());
    if (spec.type == FieldType::Vector3) return value.as_vector3().allFinite();
    if (spec.type == FieldType::Quaternion) return std::abs(value.as_quaternion().norm() - 1.0) < 1e-9;
    return true;
}

Registry::Registry() {
    for (const auto& c : {Category::experiment(), Category::environment(), Category::vision(), Category::locomotion()})
        declare_category(c);
}

std::size_t Registry::declare_category(const Category& category) {
    require(is_valid_identifier(category.name), ErrorCode::InvalidArgument,
            "category label '" + category.name + "' is not an identifier");
    const auto it = std::find(categories_.begin(), categories_.end(), category);
    if (it != categories_.end()) return static_cast<std::size_t>(it - categories_.begin());
    categories_.push_back(category);
    return categories_.size() - 1;
}

Receipt Registry::register_type(TypeTag tag) {
    switch (validate_feature_name(tag.identifier)) {
    case NameCheck::InvalidIdentifier:
        fail(ErrorCode::InvalidArgument, "'" + tag.identifier + "' is not a valid identifier");
    case NameCheck::Duplicate: fail(ErrorCode::Duplicate, "type '" + tag.identifier + "' is already registered");
    case NameCheck::Ok: break;
    }
    if (tag.extends) {
        require(find(*tag.extends) != nullptr, ErrorCode::NotFound,
                "type '" + tag.identifier + "' extends unregistered type '" + *tag.extends + "'");
    }
    require(tag.schema_version >= 1, ErrorCode::InvalidArgument, "schema_version must be >= 1");
    std::set<std::string, std::less<>> names;
    for (const auto& f : tag.fields) {
        require(is_valid_identifier(f.name), ErrorCode::InvalidArgument, "field '" + f.name + "' is not an identifier");
        require(names.insert(f.name).second, ErrorCode::Duplicate,
                "field '" + f.name + "' declared twice in '" + tag.identifier + "'");
        require(conforms(f, f.default_value), ErrorCode::TypeMismatch,
                "default of '" + tag.identifier + "." + f.name + "' does not match its type");
    }
    declare_category(tag.category);
    Receipt receipt{tag.identifier, tag.category, types_.size()};
    types_.push_back(std::move(tag));
    return receipt;
}

NameCheck Registry::validate_feature_name(std::string_view name) const {
    if (!is_valid_identifier(name)) return NameCheck::InvalidIdentifier;
    if (find(name) != nullptr) return NameCheck::Duplicate;
    return NameCheck::Ok;
}

const TypeTag* Registry::find(std::string_view identifier) const {
    for (const auto& t : types_)
        if (t.identifier == identifier) return &t;
    return nullptr;
}

const TypeTag& Registry::get(std::string_view identifier) const {
    const TypeTag* t = find(identifier);
    if (t == nullptr) fail(ErrorCode::NotFound, "unknown feature type '" + std::string(identifier) + "'");
    return *t;
}

std::vector<const TypeTag*> Registry::types_in(const Category& category) const {
    std::vector<const TypeTag*> out;
    for (const auto& t : types_)
        if (t.category == category) out.push_back(&t);
    return out;
}

std::vector<Category> Registry::list_categories() const {
    std::vector<Category> out;
    for (const auto& c : categories_) {
        const bool used = std::any_of(types_.begin(), types_.end(), [&](const TypeTag& t) { return t.category == c; });
        if (used) out.push_back(c);
    }
    return out;
}

FieldMap Registry::defaults(const TypeTag& type) const {
    FieldMap out;
    for (const auto& f : type.fields) out.emplace(f.name, f.default_value);
    return out;
}

FieldMap Registry::complete_values(const TypeTag& type, const FieldMap& values) const {
    FieldMap out = defaults(type);
    for (const auto& [name, value] : values) {
        const FieldSpec* spec = type.field(name);
        require(spec != nullptr, ErrorCode::UnknownField, "'" + type.identifier + "' has no field '" + name + "'");
        require(conforms(*spec, value), ErrorCode::TypeMismatch,
                "field '" + type.identifier + "." + name + "' expects " + to_string(spec->type) + ", got " +
                    to_string(value.type()) + " '" + describe(value) + "'");
        // integers given for real fields are stored as reals so round trips stay type-stable
        if (spec->type == FieldType::Real) {
            out[name] = FieldValue(value.as_real());
        } else {
            out[name] = value;
        }
    }
    return out;
}

} // namespace csaf::registry
