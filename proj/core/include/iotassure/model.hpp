#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iotassure/types.hpp"

namespace iotassure {

// Six canonical kinds carry a column in the applicability matrix. The two
// alias kinds have none and resolve to a canonical kind through the catalog.
enum class ComponentKind {
    SmartDeviceSensor,
    NetworkProtocol,
    Gateway,
    CloudServer,
    SmartServiceBackend,
    UserInterface,
    AnalysisActuator,
    DataAnalytics,
};

inline constexpr std::array<ComponentKind, 6> kCanonicalKinds{
    ComponentKind::SmartDeviceSensor, ComponentKind::NetworkProtocol, ComponentKind::Gateway,
    ComponentKind::CloudServer,       ComponentKind::SmartServiceBackend,
    ComponentKind::UserInterface,
};

inline constexpr std::array<ComponentKind, 8> kAllKinds{
    ComponentKind::SmartDeviceSensor,   ComponentKind::NetworkProtocol,
    ComponentKind::Gateway,             ComponentKind::CloudServer,
    ComponentKind::SmartServiceBackend, ComponentKind::UserInterface,
    ComponentKind::AnalysisActuator,    ComponentKind::DataAnalytics,
};

constexpr bool is_canonical(ComponentKind k) {
    return k != ComponentKind::AnalysisActuator && k != ComponentKind::DataAnalytics;
}

/// Interchange spelling, e.g. "smart_device_sensor".
std::string_view to_string(ComponentKind k);
std::optional<ComponentKind> component_kind_from_string(std::string_view s);
/// Column label used in reports: "SD&S", "N&P", "G", "C&S", "SS&BS", "UI".
std::string_view short_label(ComponentKind k);

/// Ordered by how much the tester knows: BlackBox < GreyBox < WhiteBox.
enum class KnowledgeLevel { BlackBox, GreyBox, WhiteBox };

std::string_view to_string(KnowledgeLevel k);
std::optional<KnowledgeLevel> knowledge_level_from_string(std::string_view s);

enum class ConnectionType { Wired, Wireless, Logical };

std::string_view to_string(ConnectionType c);
std::optional<ConnectionType> connection_type_from_string(std::string_view s);

struct Quantity {
    double value = 0.0;
    std::string unit;

    bool operator==(const Quantity&) const = default;
};

using StringList = std::vector<std::string>;
using ParameterValue = std::variant<bool, std::string, StringList, Quantity>;
using ParameterMap = std::map<std::string, ParameterValue, std::less<>>;

/// Single-line rendering for human output.
std::string describe(const ParameterValue& v);

struct Component {
    std::string id;
    std::string name;
    ComponentKind kind = ComponentKind::SmartDeviceSensor;
    // Can only narrow the model-wide level; see redact_model.
    std::optional<KnowledgeLevel> knowledge_override;
    ParameterMap params;

    const ParameterValue* find(std::string_view param_id) const;
    bool has(std::string_view param_id) const { return find(param_id) != nullptr; }

    bool operator==(const Component&) const = default;
};

struct DataFlow {
    std::string id;
    std::string source;
    std::string destination;
    ConnectionType connection_type = ConnectionType::Wired;
    std::optional<std::string> protocol;
    std::optional<std::string> protocol_version;
    std::optional<std::string> cipher_suite;
    std::optional<std::int64_t> key_length_bits;
    std::optional<bool> encryption;
    std::optional<bool> data_integrity;
    std::optional<bool> authentication;
    std::optional<bool> input_sanitization;
    // Network-protocol parameters without a dedicated field (administration,
    // update_process, performance rows).
    ParameterMap params;

    bool touches(std::string_view component_id) const {
        return source == component_id || destination == component_id;
    }

    bool operator==(const DataFlow&) const = default;
};

/// Catalog-keyed view of a flow as a network-protocol pseudo-component.
/// connection_type, network_protocols (from `protocol`), protocol_version and
/// the four security flags are synthesised from the dedicated fields.
ParameterMap flow_parameters(const DataFlow& flow);

struct SystemModel {
    std::string name;
    std::string schema_version = "1";
    KnowledgeLevel knowledge_level = KnowledgeLevel::WhiteBox;
    std::vector<Component> components;
    std::vector<DataFlow> flows;

    const Component* find_component(std::string_view id) const;
    const DataFlow* find_flow(std::string_view id) const;

    bool operator==(const SystemModel&) const = default;
};

/// Components and flows sorted by id; the order parse_model produces.
SystemModel canonicalize(SystemModel model);

} // namespace iotassure
