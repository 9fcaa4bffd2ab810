#include "generator.hpp"

#include <algorithm>
#include <array>

namespace iotassure::testing {
namespace {

// Mix of ASCII, JSON escapes and multi-byte UTF-8.
constexpr std::array<std::string_view, 20> kAtoms{
    "a", "b", "Z", "0", "7", "-", "_", ".", " ", "/",
    "\"", "\\", "\n", "\t", "\xc3\xa9", "\xe6\x97\xa5", "\xf0\x9f\x94\x92", "TLS", "v1", "\x01",
};

constexpr std::array<std::string_view, 6> kFlowParams{
    param::kAdministration, param::kUpdateProcess, param::kBandwidth,
    param::kThroughput,     param::kLatency,       param::kErrorRate,
};

} // namespace

std::string ModelGenerator::text(int max_len) {
    std::string s;
    const int n = uniform(0, max_len);
    for (int i = 0; i < n; ++i) {
        s += kAtoms[static_cast<std::size_t>(uniform(0, kAtoms.size() - 1))];
    }
    return s;
}

std::optional<bool> ModelGenerator::tristate() {
    switch (uniform(0, 2)) {
    case 0: return std::nullopt;
    case 1: return false;
    default: return true;
    }
}

ParameterValue ModelGenerator::value(const ParameterDef& def) {
    switch (def.shape) {
    case ValueShape::Boolean: return chance(0.5);
    case ValueShape::String: return text();
    case ValueShape::StringList: {
        StringList l;
        const int n = uniform(0, 3);
        for (int i = 0; i < n; ++i) {
            l.push_back(text(6));
        }
        return l;
    }
    case ValueShape::Quantity: {
        double v = 0.0;
        switch (uniform(0, 2)) {
        case 0: v = uniform(0, 100000); break;
        case 1: v = std::uniform_real_distribution<double>(0.0, 1e9)(rng_); break;
        default: v = std::uniform_real_distribution<double>(-1.0, 1.0)(rng_); break;
        }
        return Quantity{v, def.unit};
    }
    }
    return false;
}

Component ModelGenerator::component(std::string id) {
    const ParameterCatalog& catalog = parameter_catalog();
    Component c;
    c.id = std::move(id);
    c.name = text();
    c.kind = kAllKinds[static_cast<std::size_t>(uniform(0, kAllKinds.size() - 1))];
    if (options_.overrides && chance(0.2)) {
        c.knowledge_override = static_cast<KnowledgeLevel>(uniform(0, 2));
    }
    for (const ParameterDef& def : catalog.parameters()) {
        const bool applicable = def.applicability.contains(catalog.resolve(c.kind));
        const double p = applicable ? options_.param_density
                                    : (options_.non_applicable ? options_.param_density / 8 : 0.0);
        if (chance(p)) {
            c.params.emplace(def.id, value(def));
        }
    }
    return c;
}

DataFlow ModelGenerator::flow(std::string id, std::string source, std::string destination) {
    DataFlow f;
    f.id = std::move(id);
    f.source = std::move(source);
    f.destination = std::move(destination);
    f.connection_type = static_cast<ConnectionType>(uniform(0, 2));
    static constexpr std::array<std::string_view, 8> kVersions{
        "TLS 1.3", "TLS 1.2", "tls1.0", "SSLv3", "DTLS 1.2", "MQTT 5", "v2", "TLS 1.1"};
    static constexpr std::array<std::string_view, 8> kSuites{
        "TLS_AES_128_GCM_SHA256", "ECDHE-RSA-SHA1", "AES-GCM",   "RC4-MD5",
        "DES-CBC3-SHA",           "aes-ccm",        "chacha20", "TLS_RSA_WITH_3DES_EDE_CBC_SHA"};
    if (chance(0.5)) {
        f.protocol = text(6);
    }
    if (chance(0.5)) {
        f.protocol_version = chance(0.7) ? std::string(kVersions[uniform(0, 7)]) : text(6);
    }
    if (chance(0.5)) {
        f.cipher_suite = chance(0.7) ? std::string(kSuites[uniform(0, 7)]) : text(8);
    }
    if (chance(0.5)) {
        f.key_length_bits = chance(0.8) ? uniform(0, 512) : std::int64_t{1} << uniform(0, 62);
    }
    f.encryption = tristate();
    f.data_integrity = tristate();
    f.authentication = tristate();
    f.input_sanitization = tristate();
    for (std::string_view p : kFlowParams) {
        if (chance(options_.param_density / 2)) {
            f.params.emplace(std::string(p), value(parameter_catalog().at(p)));
        }
    }
    return f;
}

SystemModel ModelGenerator::model() {
    SystemModel m;
    m.name = text();
    m.knowledge_level = static_cast<KnowledgeLevel>(uniform(0, 2));
    const int nc = uniform(0, options_.max_components);
    for (int i = 0; i < nc; ++i) {
        m.components.push_back(component("c" + std::to_string(i) + "-" + text(3)));
    }
    if (nc >= 2) {
        const int nf = uniform(0, options_.max_flows);
        for (int i = 0; i < nf; ++i) {
            const int s = uniform(0, nc - 1);
            int d = uniform(0, nc - 2);
            if (d >= s) {
                ++d;
            }
            m.flows.push_back(flow("f" + std::to_string(i) + "-" + text(3), m.components[s].id,
                                   m.components[d].id));
        }
    }
    shuffle(m.components);
    shuffle(m.flows);
    return m;
}

} // namespace iotassure::testing
