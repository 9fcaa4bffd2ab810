#include "iotassure/ingest.hpp"

#include <set>

#include "json_support.hpp"

namespace iotassure {
namespace {

using detail::json;
using detail::pointer_append;

const std::set<std::string, std::less<>> kTopLevelKeys{"schema_version", "name",
                                                       "knowledge_level", "components", "flows"};
const std::set<std::string, std::less<>> kComponentKeys{"id", "name", "kind", "params",
                                                        "knowledge_level"};
const std::set<std::string, std::less<>> kFlowKeys{
    "id",           "source",         "destination",        "connection_type",
    "protocol",     "protocol_version", "cipher_suite",     "key_length_bits",
    "encryption",   "data_integrity", "authentication",     "input_sanitization",
    "params"};

class Reader {
public:
    Reader(ParseMode mode, const ParameterCatalog& catalog, std::vector<ParseDiagnostic>& out)
        : mode_(mode), catalog_(catalog), diags_(out) {}

    bool failed() const { return failed_; }

    void error(std::string location, std::string message) {
        failed_ = true;
        diags_.push_back({IssueSeverity::Error, std::move(location), std::move(message)});
    }
    void warning(std::string location, std::string message) {
        diags_.push_back({IssueSeverity::Warning, std::move(location), std::move(message)});
    }

    void warn_unknown_keys(const json& obj, const std::set<std::string, std::less<>>& known,
                           const std::string& ptr) {
        for (const auto& [k, v] : obj.items()) {
            if (!known.contains(k)) {
                warning(pointer_append(ptr, k), "unknown field '" + k + "' ignored");
            }
        }
    }

    std::optional<std::string> string_field(const json& obj, const std::string& ptr,
                                            std::string_view key, bool required) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) {
                error(ptr, "missing required field '" + std::string(key) + "'");
            }
            return std::nullopt;
        }
        if (!it->is_string()) {
            error(pointer_append(ptr, key), "field '" + std::string(key) + "' must be a string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    std::optional<bool> bool_field(const json& obj, const std::string& ptr, std::string_view key) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return std::nullopt;
        }
        if (!it->is_boolean()) {
            error(pointer_append(ptr, key), "field '" + std::string(key) + "' must be a boolean");
            return std::nullopt;
        }
        return it->get<bool>();
    }

    std::optional<KnowledgeLevel> level_field(const json& obj, const std::string& ptr) {
        auto s = string_field(obj, ptr, "knowledge_level", false);
        if (!s) {
            return std::nullopt;
        }
        auto level = knowledge_level_from_string(*s);
        if (!level) {
            error(pointer_append(ptr, "knowledge_level"),
                  "unknown knowledge level '" + *s + "' (expected black, grey or white)");
        }
        return level;
    }

    ParameterMap params(const json& obj, const std::string& ptr) {
        ParameterMap out;
        auto it = obj.find("params");
        if (it == obj.end()) {
            return out;
        }
        const std::string pptr = pointer_append(ptr, "params");
        if (!it->is_object()) {
            error(pptr, "field 'params' must be an object");
            return out;
        }
        for (const auto& [id, value] : it->items()) {
            const std::string vptr = pointer_append(pptr, id);
            const ParameterDef* d = catalog_.find(id);
            if (d == nullptr) {
                if (mode_ == ParseMode::Strict) {
                    error(vptr, "unknown parameter id '" + id + "'");
                } else {
                    warning(vptr, "unknown parameter id '" + id + "' dropped");
                }
                continue;
            }
            std::string why;
            if (auto v = detail::value_from_json(value, *d, why)) {
                out.emplace(id, std::move(*v));
            } else {
                error(vptr, "malformed value for '" + id + "': " + why);
            }
        }
        return out;
    }

    std::optional<Component> component(const json& obj, const std::string& ptr) {
        if (!obj.is_object()) {
            error(ptr, "component must be an object");
            return std::nullopt;
        }
        warn_unknown_keys(obj, kComponentKeys, ptr);
        Component c;
        auto id = string_field(obj, ptr, "id", true);
        if (id && id->empty()) {
            error(pointer_append(ptr, "id"), "component id must not be empty");
        }
        c.id = id.value_or("");
        c.name = string_field(obj, ptr, "name", false).value_or(c.id);
        if (auto kind = string_field(obj, ptr, "kind", true)) {
            if (auto k = component_kind_from_string(*kind)) {
                c.kind = *k;
            } else {
                error(pointer_append(ptr, "kind"), "unknown component kind '" + *kind + "'");
            }
        }
        c.knowledge_override = level_field(obj, ptr);
        c.params = params(obj, ptr);
        return c;
    }

    std::optional<DataFlow> flow(const json& obj, const std::string& ptr) {
        if (!obj.is_object()) {
            error(ptr, "flow must be an object");
            return std::nullopt;
        }
        warn_unknown_keys(obj, kFlowKeys, ptr);
        DataFlow f;
        auto id = string_field(obj, ptr, "id", true);
        if (id && id->empty()) {
            error(pointer_append(ptr, "id"), "flow id must not be empty");
        }
        f.id = id.value_or("");
        f.source = string_field(obj, ptr, "source", true).value_or("");
        f.destination = string_field(obj, ptr, "destination", true).value_or("");
        if (auto ct = string_field(obj, ptr, "connection_type", true)) {
            if (auto c = connection_type_from_string(*ct)) {
                f.connection_type = *c;
            } else {
                error(pointer_append(ptr, "connection_type"),
                      "unknown connection type '" + *ct + "' (expected wired, wireless or logical)");
            }
        }
        f.protocol = string_field(obj, ptr, "protocol", false);
        f.protocol_version = string_field(obj, ptr, "protocol_version", false);
        f.cipher_suite = string_field(obj, ptr, "cipher_suite", false);
        if (auto it = obj.find("key_length_bits"); it != obj.end()) {
            if (it->is_number_unsigned()) {
                const auto bits = it->get<std::uint64_t>();
                if (bits > static_cast<std::uint64_t>(INT64_MAX)) {
                    error(pointer_append(ptr, "key_length_bits"), "key length out of range");
                } else {
                    f.key_length_bits = static_cast<std::int64_t>(bits);
                }
            } else {
                error(pointer_append(ptr, "key_length_bits"),
                      "field 'key_length_bits' must be a non-negative integer");
            }
        }
        f.encryption = bool_field(obj, ptr, "encryption");
        f.data_integrity = bool_field(obj, ptr, "data_integrity");
        f.authentication = bool_field(obj, ptr, "authentication");
        f.input_sanitization = bool_field(obj, ptr, "input_sanitization");
        f.params = params(obj, ptr);
        return f;
    }

private:
    ParseMode mode_;
    const ParameterCatalog& catalog_;
    std::vector<ParseDiagnostic>& diags_;
    bool failed_ = false;
};

} // namespace

ParseResult parse_model(std::string_view text, ParseMode mode, const ParameterCatalog& catalog) {
    ParseResult result;
    Reader r(mode, catalog, result.diagnostics);

    detail::StrictJson parsed = detail::parse_json_strict(text);
    if (parsed.error) {
        r.error(parsed.error_location, "malformed document: " + *parsed.error);
        return result;
    }
    for (const auto& [ptr, key] : parsed.duplicate_keys) {
        r.warning(pointer_append(ptr, key), "duplicate key '" + key + "'; last value wins");
    }
    const json& doc = parsed.value;
    if (!doc.is_object()) {
        r.error("", "malformed document: top level must be an object");
        return result;
    }
    r.warn_unknown_keys(doc, kTopLevelKeys, "");

    SystemModel model;
    if (auto it = doc.find("schema_version"); it == doc.end()) {
        r.error("", "missing required field 'schema_version'");
    } else if (!it->is_string() || it->get<std::string>() != kSchemaVersion) {
        r.error("/schema_version", "unsupported schema version " + it->dump() + " (expected \"" +
                                       std::string(kSchemaVersion) + "\")");
    }
    model.name = r.string_field(doc, "", "name", true).value_or("");
    model.knowledge_level = r.level_field(doc, "").value_or(KnowledgeLevel::WhiteBox);

    auto read_list = [&](std::string_view key, auto&& read_one, auto& out) {
        auto it = doc.find(key);
        if (it == doc.end()) {
            return;
        }
        const std::string ptr = pointer_append("", key);
        if (!it->is_array()) {
            r.error(ptr, "field '" + std::string(key) + "' must be a list");
            return;
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (auto item = read_one((*it)[i], pointer_append(ptr, i))) {
                out.push_back(std::move(*item));
            }
        }
    };
    read_list(
        "components", [&](const json& j, const std::string& p) { return r.component(j, p); },
        model.components);
    read_list(
        "flows", [&](const json& j, const std::string& p) { return r.flow(j, p); }, model.flows);

    if (r.failed()) {
        return result;
    }
    for (const ValidationIssue& issue : validate_model(model, catalog)) {
        if (issue.severity == IssueSeverity::Error) {
            r.error(issue.location, issue.message);
        } else {
            r.warning(issue.location, issue.message);
        }
    }
    if (!r.failed()) {
        result.model = canonicalize(std::move(model));
    }
    return result;
}

std::string serialize_model(const SystemModel& model) {
    const SystemModel m = canonicalize(model);
    json components = json::array();
    for (const Component& c : m.components) {
        json params = json::object();
        for (const auto& [id, v] : c.params) {
            params[id] = detail::value_to_json(v);
        }
        json entry{{"id", c.id},
                   {"name", c.name},
                   {"kind", std::string(to_string(c.kind))},
                   {"params", std::move(params)}};
        if (c.knowledge_override) {
            entry["knowledge_level"] = std::string(to_string(*c.knowledge_override));
        }
        components.push_back(std::move(entry));
    }
    json flows = json::array();
    for (const DataFlow& f : m.flows) {
        json entry{{"id", f.id},
                   {"source", f.source},
                   {"destination", f.destination},
                   {"connection_type", std::string(to_string(f.connection_type))}};
        auto put = [&](std::string_view key, const auto& opt) {
            if (opt) {
                entry[std::string(key)] = *opt;
            }
        };
        put("protocol", f.protocol);
        put("protocol_version", f.protocol_version);
        put("cipher_suite", f.cipher_suite);
        put("key_length_bits", f.key_length_bits);
        put("encryption", f.encryption);
        put("data_integrity", f.data_integrity);
        put("authentication", f.authentication);
        put("input_sanitization", f.input_sanitization);
        if (!f.params.empty()) {
            json params = json::object();
            for (const auto& [id, v] : f.params) {
                params[id] = detail::value_to_json(v);
            }
            entry["params"] = std::move(params);
        }
        flows.push_back(std::move(entry));
    }
    return detail::dump_canonical(json{{"schema_version", m.schema_version},
                                       {"name", m.name},
                                       {"knowledge_level", std::string(to_string(m.knowledge_level))},
                                       {"components", std::move(components)},
                                       {"flows", std::move(flows)}});
}

} // namespace iotassure
