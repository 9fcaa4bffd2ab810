#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "iotassure/model.hpp"

namespace iotassure {

namespace param {
// Network properties
inline constexpr std::string_view kHardwareInterface = "hardware_interface";
inline constexpr std::string_view kConnectionType = "connection_type";
inline constexpr std::string_view kIpAddress = "ip_address";
inline constexpr std::string_view kMacAddress = "mac_address";
inline constexpr std::string_view kNetworkProtocols = "network_protocols";
inline constexpr std::string_view kProtocolVersion = "protocol_version";
inline constexpr std::string_view kPairingProcess = "pairing_process";
// Hardware properties
inline constexpr std::string_view kSecureKeyStore = "secure_key_store";
inline constexpr std::string_view kDataStorage = "data_storage";
inline constexpr std::string_view kPowerConsumption = "power_consumption";
inline constexpr std::string_view kElectromagneticEmission = "electromagnetic_emission";
// Software and operating system properties
inline constexpr std::string_view kOperatingSystem = "operating_system";
inline constexpr std::string_view kFirmwareVersion = "firmware_version";
inline constexpr std::string_view kSoftwareApis = "software_apis";
inline constexpr std::string_view kSoftwareVersions = "software_versions";
inline constexpr std::string_view kInterfaces = "interfaces";
inline constexpr std::string_view kAdministration = "administration";
inline constexpr std::string_view kUpdateProcess = "update_process";
inline constexpr std::string_view kResetFunctionality = "reset_functionality";
inline constexpr std::string_view kSharedResources = "shared_resources";
// Security properties
inline constexpr std::string_view kEncryption = "encryption";
inline constexpr std::string_view kDataIntegrity = "data_integrity";
inline constexpr std::string_view kAuthentication = "authentication";
inline constexpr std::string_view kInputSanitization = "input_sanitization";
// Performance properties
inline constexpr std::string_view kBandwidth = "bandwidth";
inline constexpr std::string_view kThroughput = "throughput";
inline constexpr std::string_view kLatency = "latency";
inline constexpr std::string_view kErrorRate = "error_rate";
// Extensions: pentest-tool inputs with no matrix row
inline constexpr std::string_view kHostNames = "host_names";
inline constexpr std::string_view kNetworkAddress = "network_address";
inline constexpr std::string_view kWebUrls = "web_urls";
inline constexpr std::string_view kOpenPorts = "open_ports";
} // namespace param

enum class ParameterCategory {
    NetworkProperties,
    HardwareProperties,
    SoftwareOsProperties,
    SecurityProperties,
    PerformanceProperties,
};

enum class Priority { Low, Medium, High };

/// Who can learn a parameter's value: anyone, a network-level observer, or
/// only an insider. Drives knowledge-level redaction.
enum class Observability { Public, NetworkObservable, Internal };

enum class ValueShape { Boolean, String, StringList, Quantity };

std::string_view to_string(ParameterCategory c);
ParameterCategory parameter_category_from_string(std::string_view s);
std::string_view to_string(Priority p);
Priority priority_from_string(std::string_view s);
std::string_view to_string(Observability o);
Observability observability_from_string(std::string_view s);
std::string_view to_string(ValueShape v);
ValueShape value_shape_from_string(std::string_view s);

/// Completeness weights: High=3, Medium=2, Low=1.
constexpr double priority_weight(Priority p) {
    switch (p) {
    case Priority::High: return 3.0;
    case Priority::Medium: return 2.0;
    case Priority::Low: return 1.0;
    }
    return 0.0;
}

using KindSet = std::set<ComponentKind>;

struct ParameterDef {
    std::string id;
    std::string display_name;
    ParameterCategory category = ParameterCategory::NetworkProperties;
    std::string description;
    KindSet applicability; // canonical kinds only
    Priority priority = Priority::Medium;
    Observability observability = Observability::Internal;
    ValueShape shape = ValueShape::String;
    std::string unit; // Quantity shape only
    bool extension = false;

    bool operator==(const ParameterDef&) const = default;
};

bool matches_shape(const ParameterValue& value, const ParameterDef& def);

/// Immutable after construction. The constructor enforces unique ids,
/// non-empty canonical applicability, units on quantity parameters and
/// alias targets that are canonical.
class ParameterCatalog {
public:
    ParameterCatalog(std::string version, std::vector<ParameterDef> parameters,
                     std::map<ComponentKind, ComponentKind> aliases);

    const std::string& version() const { return version_; }
    const std::vector<ParameterDef>& parameters() const { return parameters_; }
    const std::map<ComponentKind, ComponentKind>& aliases() const { return aliases_; }

    const ParameterDef* find(std::string_view id) const;
    /// Throws LookupError for an unknown id.
    const ParameterDef& at(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }

    ComponentKind resolve(ComponentKind kind) const;
    /// Throws LookupError for an unknown id.
    bool is_applicable(std::string_view id, ComponentKind kind) const;
    /// In catalog order.
    std::vector<const ParameterDef*> applicable_to(ComponentKind kind,
                                                   bool include_extensions = false) const;
    std::size_t table_parameter_count() const;

    bool operator==(const ParameterCatalog& other) const {
        return version_ == other.version_ && parameters_ == other.parameters_ &&
               aliases_ == other.aliases_;
    }

private:
    std::string version_;
    std::vector<ParameterDef> parameters_;
    std::map<ComponentKind, ComponentKind> aliases_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Built-in catalog: the 28 matrix parameters followed by the four
/// flagged extensions. Every priority defaults to Medium.
const ParameterCatalog& parameter_catalog();

/// Against the built-in catalog.
bool is_applicable(std::string_view param_id, ComponentKind kind);

/// Catalog documents (the CLI's catalog export and --catalog input).
/// A loaded catalog must keep every built-in parameter id, since the
/// analyses bind to them; priorities, applicability and additions are free.
std::string serialize_catalog(const ParameterCatalog& catalog);
ParameterCatalog parse_catalog(std::string_view text);

} // namespace iotassure
