#pragma once

#include "csaf/core/geometry.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace csaf::registry {

enum class FieldType { Boolean, Integer, Real, String, Enum, Vector3, Quaternion, PresetRef };

const char* to_string(FieldType type);
FieldType field_type_from_string(std::string_view name);

struct EnumValue {
    std::string label;
    bool operator==(const EnumValue&) const = default;
};

/// Reference to another preset by (target type, preset name). Resolution is left to the consumer.
struct PresetRef {
    std::string target_type;
    std::string preset_name;
    bool operator==(const PresetRef&) const = default;
};

/// Typed preset field value. Equality is exact (bitwise for reals), which is what round-trip checks need.
class FieldValue {
  public:
    using Storage = std::variant<bool, std::int64_t, double, std::string, EnumValue, Vec3, Quat, PresetRef>;

    FieldValue() : storage_(false) {}
    FieldValue(bool v) : storage_(v) {}
    FieldValue(int v) : storage_(std::int64_t{v}) {}
    FieldValue(std::int64_t v) : storage_(v) {}
    FieldValue(double v) : storage_(v) {}
    FieldValue(const char* v) : storage_(std::string(v)) {}
    FieldValue(std::string v) : storage_(std::move(v)) {}
    FieldValue(EnumValue v) : storage_(std::move(v)) {}
    FieldValue(const Vec3& v) : storage_(v) {}
    FieldValue(const Quat& v) : storage_(v) {}
    FieldValue(PresetRef v) : storage_(std::move(v)) {}

    [[nodiscard]] FieldType type() const;
    [[nodiscard]] const Storage& storage() const { return storage_; }

    [[nodiscard]] bool as_bool() const { return get<bool>(); }
    [[nodiscard]] std::int64_t as_integer() const { return get<std::int64_t>(); }
    /// Reals; integers are promoted.
    [[nodiscard]] double as_real() const;
    [[nodiscard]] const std::string& as_string() const { return get<std::string>(); }
    [[nodiscard]] const std::string& as_enum() const { return get<EnumValue>().label; }
    [[nodiscard]] const Vec3& as_vector3() const { return get<Vec3>(); }
    [[nodiscard]] const Quat& as_quaternion() const { return get<Quat>(); }
    [[nodiscard]] const PresetRef& as_preset_ref() const { return get<PresetRef>(); }

    friend bool operator==(const FieldValue& a, const FieldValue& b);

  private:
    template <typename T> const T& get() const;

    Storage storage_;
};

using FieldMap = std::map<std::string, FieldValue, std::less<>>;

std::string describe(const FieldValue& value);

} // namespace csaf::registry
