#include "iotassure/model.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "iotassure/catalog.hpp"
#include "iotassure/errors.hpp"

namespace iotassure {
namespace {

template <typename Enum, std::size_t N>
struct Spelling {
    std::array<std::pair<Enum, std::string_view>, N> table;

    std::string_view name(Enum e) const {
        for (const auto& [k, v] : table) {
            if (k == e) {
                return v;
            }
        }
        return "?";
    }

    std::optional<Enum> find(std::string_view s) const {
        for (const auto& [k, v] : table) {
            if (v == s) {
                return k;
            }
        }
        return std::nullopt;
    }
};

constexpr Spelling<ComponentKind, 8> kKindNames{{{
    {ComponentKind::SmartDeviceSensor, "smart_device_sensor"},
    {ComponentKind::NetworkProtocol, "network_protocol"},
    {ComponentKind::Gateway, "gateway"},
    {ComponentKind::CloudServer, "cloud_server"},
    {ComponentKind::SmartServiceBackend, "smart_service_backend"},
    {ComponentKind::UserInterface, "user_interface"},
    {ComponentKind::AnalysisActuator, "analysis_actuator"},
    {ComponentKind::DataAnalytics, "data_analytics"},
}}};

constexpr Spelling<ComponentKind, 8> kKindLabels{{{
    {ComponentKind::SmartDeviceSensor, "SD&S"},
    {ComponentKind::NetworkProtocol, "N&P"},
    {ComponentKind::Gateway, "G"},
    {ComponentKind::CloudServer, "C&S"},
    {ComponentKind::SmartServiceBackend, "SS&BS"},
    {ComponentKind::UserInterface, "UI"},
    {ComponentKind::AnalysisActuator, "A/A"},
    {ComponentKind::DataAnalytics, "BDA"},
}}};

constexpr Spelling<KnowledgeLevel, 3> kLevelNames{{{
    {KnowledgeLevel::BlackBox, "black"},
    {KnowledgeLevel::GreyBox, "grey"},
    {KnowledgeLevel::WhiteBox, "white"},
}}};

constexpr Spelling<ConnectionType, 3> kConnectionNames{{{
    {ConnectionType::Wired, "wired"},
    {ConnectionType::Wireless, "wireless"},
    {ConnectionType::Logical, "logical"},
}}};

constexpr Spelling<Severity, 3> kSeverityNames{{{
    {Severity::Low, "low"},
    {Severity::Medium, "medium"},
    {Severity::High, "high"},
}}};

constexpr Spelling<OutputFormat, 2> kFormatNames{{{
    {OutputFormat::Machine, "machine"},
    {OutputFormat::Human, "human"},
}}};

constexpr Spelling<TargetType, 2> kTargetNames{{{
    {TargetType::Component, "component"},
    {TargetType::Flow, "flow"},
}}};

template <typename Enum, std::size_t N>
Enum require(const Spelling<Enum, N>& sp, std::string_view s, std::string_view what) {
    if (auto e = sp.find(s)) {
        return *e;
    }
    throw LookupError("unknown " + std::string(what) + " '" + std::string(s) + "'");
}

template <typename T>
void sort_by_id(std::vector<T>& v) {
    std::stable_sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.id < b.id; });
}

} // namespace

std::string_view to_string(ComponentKind k) { return kKindNames.name(k); }
std::optional<ComponentKind> component_kind_from_string(std::string_view s) {
    return kKindNames.find(s);
}
std::string_view short_label(ComponentKind k) { return kKindLabels.name(k); }

std::string_view to_string(KnowledgeLevel k) { return kLevelNames.name(k); }
std::optional<KnowledgeLevel> knowledge_level_from_string(std::string_view s) {
    return kLevelNames.find(s);
}

std::string_view to_string(ConnectionType c) { return kConnectionNames.name(c); }
std::optional<ConnectionType> connection_type_from_string(std::string_view s) {
    return kConnectionNames.find(s);
}

std::string_view to_string(Severity s) { return kSeverityNames.name(s); }
Severity severity_from_string(std::string_view s) { return require(kSeverityNames, s, "severity"); }

std::string_view to_string(OutputFormat f) { return kFormatNames.name(f); }
OutputFormat output_format_from_string(std::string_view s) {
    return require(kFormatNames, s, "output format");
}

std::string_view to_string(TargetType t) { return kTargetNames.name(t); }
TargetType target_type_from_string(std::string_view s) {
    return require(kTargetNames, s, "target type");
}

std::string describe(const ParameterValue& v) {
    struct Visitor {
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(const StringList& l) const {
            std::string out;
            for (std::size_t i = 0; i < l.size(); ++i) {
                out += (i ? ", " : "") + l[i];
            }
            return "[" + out + "]";
        }
        std::string operator()(const Quantity& q) const {
            std::ostringstream os;
            os << q.value;
            if (!q.unit.empty()) {
                os << ' ' << q.unit;
            }
            return os.str();
        }
    };
    return std::visit(Visitor{}, v);
}

const ParameterValue* Component::find(std::string_view param_id) const {
    auto it = params.find(param_id);
    return it == params.end() ? nullptr : &it->second;
}

ParameterMap flow_parameters(const DataFlow& flow) {
    ParameterMap out = flow.params;
    out[std::string(param::kConnectionType)] = std::string(to_string(flow.connection_type));
    if (flow.protocol) {
        out[std::string(param::kNetworkProtocols)] = StringList{*flow.protocol};
    }
    if (flow.protocol_version) {
        out[std::string(param::kProtocolVersion)] = StringList{*flow.protocol_version};
    }
    const std::pair<std::string_view, const std::optional<bool>*> flags[] = {
        {param::kEncryption, &flow.encryption},
        {param::kDataIntegrity, &flow.data_integrity},
        {param::kAuthentication, &flow.authentication},
        {param::kInputSanitization, &flow.input_sanitization},
    };
    for (const auto& [id, flag] : flags) {
        if (flag->has_value()) {
            out[std::string(id)] = **flag;
        }
    }
    return out;
}

const Component* SystemModel::find_component(std::string_view id) const {
    auto it = std::find_if(components.begin(), components.end(),
                           [&](const Component& c) { return c.id == id; });
    return it == components.end() ? nullptr : &*it;
}

const DataFlow* SystemModel::find_flow(std::string_view id) const {
    auto it = std::find_if(flows.begin(), flows.end(), [&](const DataFlow& f) { return f.id == id; });
    return it == flows.end() ? nullptr : &*it;
}

SystemModel canonicalize(SystemModel model) {
    sort_by_id(model.components);
    sort_by_id(model.flows);
    return model;
}

} // namespace iotassure
