#include "iotassure/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "iotassure/errors.hpp"
#include "json_support.hpp"

namespace iotassure {
namespace {

// Flow fields that already carry these parameters; flow.params may not.
const std::set<std::string, std::less<>> kFlowFieldParams{
    std::string(param::kConnectionType), std::string(param::kProtocolVersion),
    std::string(param::kNetworkProtocols),
    std::string(param::kEncryption),     std::string(param::kDataIntegrity),
    std::string(param::kAuthentication), std::string(param::kInputSanitization),
};

class IssueSink {
public:
    void error(std::string code, std::string location, std::string message) {
        issues_.push_back({IssueSeverity::Error, std::move(code), std::move(location),
                           std::move(message)});
    }
    void warning(std::string code, std::string location, std::string message) {
        issues_.push_back({IssueSeverity::Warning, std::move(code), std::move(location),
                           std::move(message)});
    }
    std::vector<ValidationIssue> take() {
        std::sort(issues_.begin(), issues_.end());
        return std::move(issues_);
    }

private:
    std::vector<ValidationIssue> issues_;
};

void check_params(const ParameterMap& params, ComponentKind kind, const std::string& owner,
                  const ParameterCatalog& catalog, IssueSink& sink) {
    for (const auto& [id, value] : params) {
        const std::string loc = owner + "/params/" + id;
        const ParameterDef* d = catalog.find(id);
        if (d == nullptr) {
            sink.error("unknown_parameter", loc, "unknown parameter id '" + id + "'");
            continue;
        }
        if (!matches_shape(value, *d)) {
            std::string expected(to_string(d->shape));
            if (d->shape == ValueShape::Quantity) {
                expected += " in " + d->unit;
            }
            sink.error("malformed_value", loc,
                       "parameter '" + id + "' expects a " + expected + " value");
        }
        if (!d->applicability.contains(catalog.resolve(kind))) {
            sink.warning("non_applicable_parameter", loc,
                         "parameter '" + id + "' is not applicable to " +
                             std::string(to_string(kind)));
        }
    }
}

} // namespace

std::string_view to_string(IssueSeverity s) {
    return s == IssueSeverity::Error ? "error" : "warning";
}

IssueSeverity issue_severity_from_string(std::string_view s) {
    if (s == "error") {
        return IssueSeverity::Error;
    }
    if (s == "warning") {
        return IssueSeverity::Warning;
    }
    throw LookupError("unknown issue severity '" + std::string(s) + "'");
}

std::vector<ValidationIssue> validate_model(const SystemModel& model,
                                            const ParameterCatalog& catalog) {
    IssueSink sink;

    std::map<std::string, int> component_ids;
    for (const Component& c : model.components) {
        ++component_ids[c.id];
    }
    std::map<std::string, int> flow_ids;
    for (const DataFlow& f : model.flows) {
        ++flow_ids[f.id];
    }
    for (const auto& [id, count] : component_ids) {
        if (id.empty()) {
            sink.error("empty_id", "components", "component with empty id");
        }
        if (count > 1) {
            sink.error("duplicate_component_id", "component:" + id,
                       "component id '" + id + "' appears " + std::to_string(count) + " times");
        }
        if (flow_ids.contains(id)) {
            sink.error("id_collision", "component:" + id,
                       "id '" + id + "' names both a component and a flow");
        }
    }
    for (const auto& [id, count] : flow_ids) {
        if (id.empty()) {
            sink.error("empty_id", "flows", "flow with empty id");
        }
        if (count > 1) {
            sink.error("duplicate_flow_id", "flow:" + id,
                       "flow id '" + id + "' appears " + std::to_string(count) + " times");
        }
    }

    for (const Component& c : model.components) {
        check_params(c.params, c.kind, "component:" + c.id, catalog, sink);
    }

    for (const DataFlow& f : model.flows) {
        const std::string loc = "flow:" + f.id;
        if (f.source == f.destination) {
            sink.error("self_loop", loc,
                       "flow '" + f.id + "' has the same source and destination '" + f.source +
                           "'");
        }
        for (const auto* end : {&f.source, &f.destination}) {
            if (!component_ids.contains(*end)) {
                sink.error("dangling_endpoint", loc,
                           "flow '" + f.id + "' references missing component '" + *end + "'");
            }
        }
        if (f.key_length_bits && *f.key_length_bits < 0) {
            sink.error("malformed_value", loc + "/key_length_bits",
                       "flow '" + f.id + "' has a negative key length");
        }
        for (const auto& [id, value] : f.params) {
            if (kFlowFieldParams.contains(id)) {
                sink.error("flow_field_parameter", loc + "/params/" + id,
                           "parameter '" + id + "' must use the dedicated flow field");
            }
        }
        check_params(f.params, ComponentKind::NetworkProtocol, loc, catalog, sink);
    }
    return sink.take();
}

bool has_errors(std::span<const ValidationIssue> issues) {
    return std::any_of(issues.begin(), issues.end(),
                       [](const ValidationIssue& i) { return i.severity == IssueSeverity::Error; });
}

std::string render_issues(const std::string& model_name, std::span<const ValidationIssue> issues,
                          OutputFormat format) {
    if (format == OutputFormat::Machine) {
        using detail::json;
        json list = json::array();
        for (const auto& i : issues) {
            list.push_back({{"severity", std::string(to_string(i.severity))},
                            {"code", i.code},
                            {"location", i.location},
                            {"message", i.message}});
        }
        return detail::dump_canonical(json{{"model", model_name}, {"issues", std::move(list)}});
    }
    std::string out = "Validation of '" + model_name + "': ";
    if (issues.empty()) {
        return out + "no issues\n";
    }
    out += std::to_string(issues.size()) + " issue(s)\n";
    for (const auto& i : issues) {
        out += "  " + std::string(i.severity == IssueSeverity::Error ? "ERROR  " : "WARNING") +
               " " + i.location + ": " + i.message + "\n";
    }
    return out;
}

std::vector<ValidationIssue> parse_issues(std::string_view machine_text) {
    using namespace detail;
    const json doc = parse_json_or_throw(machine_text, "validation document");
    std::vector<ValidationIssue> out;
    for (const json& e : get_array(doc, "issues")) {
        out.push_back({parse_enum(e, "severity", issue_severity_from_string), get_string(e, "code"),
                       get_string(e, "location"), get_string(e, "message")});
    }
    return out;
}

} // namespace iotassure
