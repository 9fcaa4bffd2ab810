#include "iotassure/catalog.hpp"

#include <algorithm>

#include "iotassure/errors.hpp"
#include "json_support.hpp"

namespace iotassure {
namespace {

using K = ComponentKind;
using C = ParameterCategory;
using O = Observability;
using S = ValueShape;

const KindSet kSDS{K::SmartDeviceSensor};
const KindSet kNP{K::NetworkProtocol};
const KindSet kAll{K::SmartDeviceSensor, K::NetworkProtocol,     K::Gateway,
                   K::CloudServer,       K::SmartServiceBackend, K::UserInterface};
// The recurring "device-like" column pattern: SD&S, G, C&S, SS&BS.
const KindSet kHosts{K::SmartDeviceSensor, K::Gateway, K::CloudServer, K::SmartServiceBackend};
const KindSet kPerf{K::NetworkProtocol, K::Gateway, K::CloudServer};

ParameterDef def(std::string_view id, std::string name, C category, std::string description,
                 KindSet applicability, O observability, S shape, std::string unit = {}) {
    ParameterDef d;
    d.id = std::string(id);
    d.display_name = std::move(name);
    d.category = category;
    d.description = std::move(description);
    d.applicability = std::move(applicability);
    d.priority = Priority::Medium;
    d.observability = observability;
    d.shape = shape;
    d.unit = std::move(unit);
    return d;
}

ParameterDef ext(std::string_view id, std::string name, std::string description,
                 KindSet applicability, S shape) {
    ParameterDef d = def(id, std::move(name), C::NetworkProperties, std::move(description),
                         std::move(applicability), O::NetworkObservable, shape);
    d.extension = true;
    return d;
}

std::vector<ParameterDef> builtin_parameters() {
    namespace p = param;
    std::vector<ParameterDef> v;
    v.reserve(32);

    // Network properties
    v.push_back(def(p::kHardwareInterface, "Hardware interface", C::NetworkProperties,
                    "Physical and logical interfaces the component exposes, such as network "
                    "ports or USB.",
                    kHosts, O::NetworkObservable, S::StringList));
    v.push_back(def(p::kConnectionType, "Connection type", C::NetworkProperties,
                    "Wired (Ethernet) or wireless (WiFi, Bluetooth, NFC) attachment.",
                    {K::SmartDeviceSensor, K::NetworkProtocol, K::Gateway, K::CloudServer,
                     K::SmartServiceBackend},
                    O::Public, S::String));
    v.push_back(def(p::kIpAddress, "IP address", C::NetworkProperties,
                    "IPv4 and IPv6 addresses.", kHosts, O::NetworkObservable, S::StringList));
    v.push_back(def(p::kMacAddress, "MAC address", C::NetworkProperties,
                    "Link-layer hardware addresses.", kHosts, O::NetworkObservable,
                    S::StringList));
    v.push_back(def(p::kNetworkProtocols, "Network protocols", C::NetworkProperties,
                    "Network protocols the component supports.", kHosts, O::NetworkObservable,
                    S::StringList));
    v.push_back(def(p::kProtocolVersion, "Protocol version", C::NetworkProperties,
                    "Versions of the protocols in use, e.g. TLS 1.3.",
                    {K::SmartDeviceSensor, K::NetworkProtocol, K::Gateway}, O::NetworkObservable,
                    S::StringList));
    v.push_back(def(p::kPairingProcess, "Pairing process", C::NetworkProperties,
                    "How the component establishes connections to peers.", kHosts, O::Internal,
                    S::String));

    // Hardware properties
    v.push_back(def(p::kSecureKeyStore, "Secure key store", C::HardwareProperties,
                    "Whether key material is held in dedicated protected hardware.", kHosts, O::Internal,
                    S::Boolean));
    v.push_back(def(p::kDataStorage, "Data storage", C::HardwareProperties,
                    "Whether the component persists data locally.", kHosts, O::Internal,
                    S::Boolean));
    v.push_back(def(p::kPowerConsumption, "Power consumption", C::HardwareProperties,
                    "Electrical power draw.", kSDS, O::Internal, S::Quantity, "W"));
    v.push_back(def(p::kElectromagneticEmission, "Electromagnetic emission",
                    C::HardwareProperties, "Radiated electromagnetic emission level.", kSDS,
                    O::Internal, S::Quantity, "dBuV/m"));

    // Software and operating system properties
    v.push_back(def(p::kOperatingSystem, "Operating system", C::SoftwareOsProperties,
                    "Operating system and version, e.g. Debian 12.", kHosts, O::Internal,
                    S::String));
    v.push_back(def(p::kFirmwareVersion, "Firmware version", C::SoftwareOsProperties,
                    "Installed firmware version.", {K::SmartDeviceSensor, K::Gateway},
                    O::Internal, S::String));
    v.push_back(def(p::kSoftwareApis, "Software APIs", C::SoftwareOsProperties,
                    "APIs the component offers.",
                    {K::SmartDeviceSensor, K::CloudServer, K::SmartServiceBackend,
                     K::UserInterface},
                    O::Internal, S::StringList));
    v.push_back(def(p::kSoftwareVersions, "Software versions", C::SoftwareOsProperties,
                    "Other software packages and their versions.", kHosts, O::Internal,
                    S::StringList));
    v.push_back(def(p::kInterfaces, "Interfaces", C::SoftwareOsProperties,
                    "User-facing entry points such as graphical or command-line UIs.",
                    {K::SmartDeviceSensor, K::CloudServer, K::SmartServiceBackend,
                     K::UserInterface},
                    O::Internal, S::StringList));
    v.push_back(def(p::kAdministration, "Administration", C::SoftwareOsProperties,
                    "How the component is maintained, e.g. remote access.", kAll, O::Internal,
                    S::String));
    v.push_back(def(p::kUpdateProcess, "Update process", C::SoftwareOsProperties,
                    "How software and firmware updates are delivered, e.g. over the air.", kAll,
                    O::Internal, S::String));
    v.push_back(def(p::kResetFunctionality, "Reset functionality", C::SoftwareOsProperties,
                    "How the component returns to factory settings.", kHosts, O::Internal,
                    S::String));
    v.push_back(def(p::kSharedResources, "Shared resources", C::SoftwareOsProperties,
                    "Whether the host runs workloads for other tenants.",
                    {K::Gateway, K::CloudServer, K::SmartServiceBackend}, O::Internal,
                    S::Boolean));

    // Security properties
    v.push_back(def(p::kEncryption, "Encryption", C::SecurityProperties,
                    "Whether the channel is encrypted end to end.", kNP, O::Internal,
                    S::Boolean));
    v.push_back(def(p::kDataIntegrity, "Data integrity", C::SecurityProperties,
                    "Whether the connection protects data integrity.", kNP, O::Internal,
                    S::Boolean));
    v.push_back(def(p::kAuthentication, "Authentication", C::SecurityProperties,
                    "Whether peers or users must authenticate.",
                    {K::NetworkProtocol, K::UserInterface}, O::Internal, S::Boolean));
    v.push_back(def(p::kInputSanitization, "Input sanitization", C::SecurityProperties,
                    "Whether user input is validated and escaped.",
                    {K::NetworkProtocol, K::UserInterface}, O::Internal, S::Boolean));

    // Performance properties
    v.push_back(def(p::kBandwidth, "Bandwidth", C::PerformanceProperties,
                    "Maximum transfer rate.", kPerf, O::Internal, S::Quantity, "bit/s"));
    v.push_back(def(p::kThroughput, "Throughput", C::PerformanceProperties,
                    "Observed transfer rate.", kPerf, O::Internal, S::Quantity, "bit/s"));
    v.push_back(def(p::kLatency, "Latency", C::PerformanceProperties,
                    "Delay from sending a packet to its arrival.", kPerf, O::Internal,
                    S::Quantity, "ms"));
    v.push_back(def(p::kErrorRate, "Error rate", C::PerformanceProperties,
                    "Corrupted bits as a share of bits sent.", kPerf, O::Internal, S::Quantity,
                    "%"));

    // Pentest-tool inputs without a matrix row
    v.push_back(ext(p::kHostNames, "Host names", "DNS names under which the component is reachable.",
                    kHosts, S::StringList));
    v.push_back(ext(p::kNetworkAddress, "Network address",
                    "Address range of the component's network in CIDR notation.", kHosts,
                    S::String));
    v.push_back(ext(p::kWebUrls, "Web URLs", "Web endpoints served by the component.",
                    {K::SmartDeviceSensor, K::Gateway, K::CloudServer, K::SmartServiceBackend,
                     K::UserInterface},
                    S::StringList));
    v.push_back(ext(p::kOpenPorts, "Open ports", "Listening ports, e.g. \"443/tcp\".", kHosts,
                    S::StringList));
    return v;
}

constexpr std::array<std::pair<ParameterCategory, std::string_view>, 5> kCategoryNames{{
    {C::NetworkProperties, "network"},
    {C::HardwareProperties, "hardware"},
    {C::SoftwareOsProperties, "software_os"},
    {C::SecurityProperties, "security"},
    {C::PerformanceProperties, "performance"},
}};
constexpr std::array<std::pair<Priority, std::string_view>, 3> kPriorityNames{{
    {Priority::Low, "low"},
    {Priority::Medium, "medium"},
    {Priority::High, "high"},
}};
constexpr std::array<std::pair<Observability, std::string_view>, 3> kObservabilityNames{{
    {O::Public, "public"},
    {O::NetworkObservable, "network_observable"},
    {O::Internal, "internal"},
}};
constexpr std::array<std::pair<ValueShape, std::string_view>, 4> kShapeNames{{
    {S::Boolean, "boolean"},
    {S::String, "string"},
    {S::StringList, "string_list"},
    {S::Quantity, "quantity"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& t, E e) {
    for (const auto& [k, v] : t) {
        if (k == e) {
            return v;
        }
    }
    return "?";
}

template <typename E, std::size_t N>
E value_of(const std::array<std::pair<E, std::string_view>, N>& t, std::string_view s,
           std::string_view what) {
    for (const auto& [k, v] : t) {
        if (v == s) {
            return k;
        }
    }
    throw LookupError("unknown " + std::string(what) + " '" + std::string(s) + "'");
}

} // namespace

std::string_view to_string(ParameterCategory c) { return name_of(kCategoryNames, c); }
ParameterCategory parameter_category_from_string(std::string_view s) {
    return value_of(kCategoryNames, s, "parameter category");
}
std::string_view to_string(Priority p) { return name_of(kPriorityNames, p); }
Priority priority_from_string(std::string_view s) { return value_of(kPriorityNames, s, "priority"); }
std::string_view to_string(Observability o) { return name_of(kObservabilityNames, o); }
Observability observability_from_string(std::string_view s) {
    return value_of(kObservabilityNames, s, "observability class");
}
std::string_view to_string(ValueShape v) { return name_of(kShapeNames, v); }
ValueShape value_shape_from_string(std::string_view s) {
    return value_of(kShapeNames, s, "value shape");
}

bool matches_shape(const ParameterValue& value, const ParameterDef& def) {
    switch (def.shape) {
    case S::Boolean: return std::holds_alternative<bool>(value);
    case S::String: return std::holds_alternative<std::string>(value);
    case S::StringList: return std::holds_alternative<StringList>(value);
    case S::Quantity: {
        const auto* q = std::get_if<Quantity>(&value);
        return q != nullptr && q->unit == def.unit;
    }
    }
    return false;
}

ParameterCatalog::ParameterCatalog(std::string version, std::vector<ParameterDef> parameters,
                                   std::map<ComponentKind, ComponentKind> aliases)
    : version_(std::move(version)), parameters_(std::move(parameters)),
      aliases_(std::move(aliases)) {
    for (std::size_t i = 0; i < parameters_.size(); ++i) {
        const ParameterDef& d = parameters_[i];
        if (d.id.empty()) {
            throw ConfigError("catalog parameter with empty id");
        }
        if (!index_.emplace(d.id, i).second) {
            throw ConfigError("duplicate catalog parameter id '" + d.id + "'");
        }
        if (d.applicability.empty()) {
            throw ConfigError("parameter '" + d.id + "' applies to no component kind");
        }
        for (ComponentKind k : d.applicability) {
            if (!is_canonical(k)) {
                throw ConfigError("parameter '" + d.id + "' lists alias kind '" +
                                  std::string(to_string(k)) + "' in its applicability");
            }
        }
        if (d.shape == S::Quantity && d.unit.empty()) {
            throw ConfigError("quantity parameter '" + d.id + "' declares no unit");
        }
    }
    for (ComponentKind k : kAllKinds) {
        if (is_canonical(k)) {
            if (aliases_.contains(k)) {
                throw ConfigError("canonical kind '" + std::string(to_string(k)) +
                                  "' cannot be aliased");
            }
            continue;
        }
        auto it = aliases_.find(k);
        if (it == aliases_.end()) {
            throw ConfigError("alias kind '" + std::string(to_string(k)) + "' has no mapping");
        }
        if (!is_canonical(it->second)) {
            throw ConfigError("alias kind '" + std::string(to_string(k)) +
                              "' must map to a canonical kind");
        }
    }
}

const ParameterDef* ParameterCatalog::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &parameters_[it->second];
}

const ParameterDef& ParameterCatalog::at(std::string_view id) const {
    if (const ParameterDef* d = find(id)) {
        return *d;
    }
    throw LookupError("unknown parameter id '" + std::string(id) + "'");
}

ComponentKind ParameterCatalog::resolve(ComponentKind kind) const {
    if (is_canonical(kind)) {
        return kind;
    }
    return aliases_.at(kind);
}

bool ParameterCatalog::is_applicable(std::string_view id, ComponentKind kind) const {
    return at(id).applicability.contains(resolve(kind));
}

std::vector<const ParameterDef*> ParameterCatalog::applicable_to(ComponentKind kind,
                                                                 bool include_extensions) const {
    const ComponentKind canonical = resolve(kind);
    std::vector<const ParameterDef*> out;
    for (const ParameterDef& d : parameters_) {
        if ((include_extensions || !d.extension) && d.applicability.contains(canonical)) {
            out.push_back(&d);
        }
    }
    return out;
}

std::size_t ParameterCatalog::table_parameter_count() const {
    return static_cast<std::size_t>(std::count_if(parameters_.begin(), parameters_.end(),
                                                  [](const ParameterDef& d) { return !d.extension; }));
}

const ParameterCatalog& parameter_catalog() {
    static const ParameterCatalog catalog(
        "builtin-1", builtin_parameters(),
        {{K::AnalysisActuator, K::SmartDeviceSensor}, {K::DataAnalytics, K::SmartServiceBackend}});
    return catalog;
}

bool is_applicable(std::string_view param_id, ComponentKind kind) {
    return parameter_catalog().is_applicable(param_id, kind);
}

std::string serialize_catalog(const ParameterCatalog& catalog) {
    using detail::json;
    json params = json::array();
    for (const ParameterDef& d : catalog.parameters()) {
        json kinds = json::array();
        for (ComponentKind k : kAllKinds) {
            if (d.applicability.contains(k)) {
                kinds.push_back(std::string(to_string(k)));
            }
        }
        json entry{
            {"id", d.id},
            {"name", d.display_name},
            {"category", std::string(to_string(d.category))},
            {"description", d.description},
            {"applicability", std::move(kinds)},
            {"priority", std::string(to_string(d.priority))},
            {"observability", std::string(to_string(d.observability))},
            {"shape", std::string(to_string(d.shape))},
            {"extension", d.extension},
        };
        if (d.shape == S::Quantity) {
            entry["unit"] = d.unit;
        }
        params.push_back(std::move(entry));
    }
    json aliases = json::object();
    for (const auto& [from, to] : catalog.aliases()) {
        aliases[std::string(to_string(from))] = std::string(to_string(to));
    }
    return detail::dump_canonical(
        json{{"version", catalog.version()}, {"aliases", aliases}, {"parameters", params}});
}

ParameterCatalog parse_catalog(std::string_view text) {
    using namespace detail;
    const json doc = parse_json_or_throw(text, "catalog");
    auto kind_of = [](const std::string& s) {
        auto k = component_kind_from_string(s);
        if (!k) {
            throw FormatError("unknown component kind '" + s + "'");
        }
        return *k;
    };

    std::vector<ParameterDef> defs;
    for (const json& e : get_array(doc, "parameters")) {
        ParameterDef d;
        d.id = get_string(e, "id");
        d.display_name = get_string(e, "name");
        d.category = parse_enum(e, "category", parameter_category_from_string);
        d.description = e.contains("description") ? get_string(e, "description") : std::string{};
        for (const std::string& k : get_string_list(e, "applicability")) {
            d.applicability.insert(kind_of(k));
        }
        d.priority = parse_enum(e, "priority", priority_from_string);
        d.observability = parse_enum(e, "observability", observability_from_string);
        d.shape = parse_enum(e, "shape", value_shape_from_string);
        if (e.contains("unit")) {
            d.unit = get_string(e, "unit");
        }
        d.extension = e.contains("extension") && get_bool(e, "extension");
        defs.push_back(std::move(d));
    }

    std::map<ComponentKind, ComponentKind> aliases = parameter_catalog().aliases();
    if (doc.contains("aliases")) {
        const json& a = member(doc, "aliases");
        if (!a.is_object()) {
            throw FormatError("field 'aliases' must be an object");
        }
        for (const auto& [from, to] : a.items()) {
            if (!to.is_string()) {
                throw FormatError("alias targets must be strings");
            }
            aliases[kind_of(from)] = kind_of(to.get<std::string>());
        }
    }

    ParameterCatalog catalog(doc.contains("version") ? get_string(doc, "version") : "custom",
                             std::move(defs), std::move(aliases));
    for (const ParameterDef& builtin : parameter_catalog().parameters()) {
        const ParameterDef* d = catalog.find(builtin.id);
        if (d == nullptr) {
            throw ConfigError("catalog drops built-in parameter '" + builtin.id + "'");
        }
        if (d->shape != builtin.shape) {
            throw ConfigError("catalog changes the value shape of '" + builtin.id + "'");
        }
    }
    return catalog;
}

} // namespace iotassure
