#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iotassure/catalog.hpp"
#include "iotassure/errors.hpp"
#include "iotassure/model.hpp"

namespace iotassure::detail {

using json = nlohmann::json;

struct StrictJson {
    json value;
    // (pointer of the enclosing object, repeated key); the last value wins.
    std::vector<std::pair<std::string, std::string>> duplicate_keys;
    std::optional<std::string> error;
    std::string error_location; // "line:col"
};

/// Total: syntax errors come back in `error`, never as exceptions.
StrictJson parse_json_strict(std::string_view text);

/// For reading our own machine documents back; throws FormatError.
json parse_json_or_throw(std::string_view text, std::string_view what);

/// Sorted keys, two-space indent, trailing newline, invalid UTF-8 replaced.
std::string dump_canonical(const json& j);

std::string pointer_append(std::string_view base, std::string_view token);
std::string pointer_append(std::string_view base, std::size_t index);

json value_to_json(const ParameterValue& v);
/// Reads a value of the shape `def` declares. Bare numbers take the
/// catalog unit. On failure returns nullopt and sets `why`.
std::optional<ParameterValue> value_from_json(const json& j, const ParameterDef& def,
                                              std::string& why);
/// Shape-agnostic reader for machine documents (plan bindings).
ParameterValue value_from_json_untyped(const json& j);

// Accessors for machine documents. All throw FormatError with the key name.
const json& member(const json& obj, std::string_view key);
std::string get_string(const json& obj, std::string_view key);
double get_number(const json& obj, std::string_view key);
bool get_bool(const json& obj, std::string_view key);
std::vector<std::string> get_string_list(const json& obj, std::string_view key);
const json& get_array(const json& obj, std::string_view key);

json string_list(const std::vector<std::string>& v);

/// Wraps an enum parser so a LookupError becomes FormatError.
template <typename F>
auto parse_enum(const json& obj, std::string_view key, F&& from_string) {
    const std::string s = get_string(obj, key);
    try {
        return from_string(s);
    } catch (const LookupError& e) {
        throw FormatError("field '" + std::string(key) + "': " + e.what());
    }
}

} // namespace iotassure::detail
