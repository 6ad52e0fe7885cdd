#include "csaf/registry/field_value.hpp"

#include "csaf/core/csv.hpp"
#include "csaf/core/error.hpp"

namespace csaf::registry {

const char* to_string(FieldType type) {
    switch (type) {
    case FieldType::Boolean: return "boolean";
    case FieldType::Integer: return "integer";
    case FieldType::Real: return "real";
    case FieldType::String: return "string";
    case FieldType::Enum: return "enum";
    case FieldType::Vector3: return "vector3";
    case FieldType::Quaternion: return "quaternion";
    case FieldType::PresetRef: return "preset_ref";
    }
    return "?";
}

FieldType field_type_from_string(std::string_view name) {
    for (auto t : {FieldType::Boolean, FieldType::Integer, FieldType::Real, FieldType::String, FieldType::Enum,
                   FieldType::Vector3, FieldType::Quaternion, FieldType::PresetRef})
        if (name == to_string(t)) return t;
    fail(ErrorCode::Parse, "unknown field type '" + std::string(name) + "'");
}

FieldType FieldValue::type() const {
    return static_cast<FieldType>(storage_.index());
}

template <typename T> const T& FieldValue::get() const {
    if (const T* p = std::get_if<T>(&storage_)) return *p;
    fail(ErrorCode::TypeMismatch, std::string("field value is ") + to_string(type()));
}

template const bool& FieldValue::get<bool>() const;
template const std::int64_t& FieldValue::get<std::int64_t>() const;
template const double& FieldValue::get<double>() const;
template const std::string& FieldValue::get<std::string>() const;
template const EnumValue& FieldValue::get<EnumValue>() const;
template const Vec3& FieldValue::get<Vec3>() const;
template const Quat& FieldValue::get<Quat>() const;
template const PresetRef& FieldValue::get<PresetRef>() const;

double FieldValue::as_real() const {
    if (const auto* i = std::get_if<std::int64_t>(&storage_)) return static_cast<double>(*i);
    return get<double>();
}

bool operator==(const FieldValue& a, const FieldValue& b) {
    if (a.storage_.index() != b.storage_.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.storage_);
            if constexpr (std::is_same_v<T, Vec3>) {
                return lhs == rhs;
            } else if constexpr (std::is_same_v<T, Quat>) {
                return lhs.coeffs() == rhs.coeffs();
            } else {
                return lhs == rhs;
            }
        },
        a.storage_);
}

std::string describe(const FieldValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return csv::format_number(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, EnumValue>) {
                return v.label;
            } else if constexpr (std::is_same_v<T, Vec3>) {
                return "(" + csv::format_number(v.x()) + ", " + csv::format_number(v.y()) + ", " +
                       csv::format_number(v.z()) + ")";
            } else if constexpr (std::is_same_v<T, Quat>) {
                return "(w " + csv::format_number(v.w()) + ", x " + csv::format_number(v.x()) + ", y " +
                       csv::format_number(v.y()) + ", z " + csv::format_number(v.z()) + ")";
            } else {
                return v.target_type + "." + v.preset_name;
            }
        },
        value.storage());
}

} // namespace csaf::registry
