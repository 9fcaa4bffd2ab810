#include "iotassure/crypto.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "iotassure/errors.hpp"
#include "json_support.hpp"

namespace iotassure {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

constexpr std::array<std::pair<CryptoFindingClass, std::string_view>, 4> kClassNames{{
    {CryptoFindingClass::DeprecatedProtocol, "deprecated-protocol"},
    {CryptoFindingClass::BrokenPrimitive, "broken-primitive"},
    {CryptoFindingClass::WeakKey, "weak-key"},
    {CryptoFindingClass::Misconfiguration, "misconfiguration"},
}};

std::vector<PolicyEntry> entries(std::initializer_list<std::pair<const char*, const char*>> l) {
    std::vector<PolicyEntry> out;
    for (const auto& [v, n] : l) {
        out.push_back({v, n});
    }
    return out;
}

void check_primitive_matches(const DataFlow& flow, const std::vector<PolicyEntry>& list,
                             CryptoFindingClass cls, Severity severity,
                             std::vector<CryptoFinding>& out) {
    const std::string& suite = *flow.cipher_suite;
    for (const PolicyEntry& e : list) {
        const auto hits = find_primitive(suite, e.value);
        if (!hits.empty()) {
            out.push_back({flow.id, cls, suite.substr(hits.front(), e.value.size()), e.value,
                           severity});
        }
    }
}

void check_protocol_matches(const DataFlow& flow, const std::vector<PolicyEntry>& list,
                            CryptoFindingClass cls, Severity severity,
                            std::vector<CryptoFinding>& out) {
    const std::string norm = normalize_protocol(*flow.protocol_version);
    for (const PolicyEntry& e : list) {
        if (normalize_protocol(e.value) == norm) {
            out.push_back({flow.id, cls, *flow.protocol_version, e.value, severity});
        }
    }
}

} // namespace

std::string_view to_string(CryptoFindingClass c) {
    for (const auto& [k, v] : kClassNames) {
        if (k == c) {
            return v;
        }
    }
    return "?";
}

CryptoFindingClass crypto_finding_class_from_string(std::string_view s) {
    for (const auto& [k, v] : kClassNames) {
        if (v == s) {
            return k;
        }
    }
    throw LookupError("unknown crypto finding class '" + std::string(s) + "'");
}

void CryptoPolicy::validate() const {
    if (min_key_length_bits <= 0) {
        throw ConfigError("minimum key length must be positive");
    }
    for (const PolicyEntry& w : warn) {
        if (w.value.empty()) {
            throw ConfigError("empty warn-list entry");
        }
        for (const PolicyEntry& d : protocol_deny) {
            if (normalize_protocol(d.value) == normalize_protocol(w.value)) {
                throw ConfigError("'" + w.value + "' is on both the deny and the warn list");
            }
        }
        for (const PolicyEntry& d : primitive_deny) {
            if (lower(d.value) == lower(w.value)) {
                throw ConfigError("'" + w.value + "' is on both the deny and the warn list");
            }
        }
    }
    for (const auto* list : {&protocol_deny, &primitive_deny, &software_deny}) {
        for (const PolicyEntry& e : *list) {
            if (e.value.empty()) {
                throw ConfigError("empty deny-list entry");
            }
        }
    }
}

CryptoPolicy default_policy() {
    CryptoPolicy p;
    p.version = "builtin-1";
    p.protocol_deny = entries({
        {"SSLv2", "SSL 2.0 is prohibited (RFC 6176)."},
        {"SSLv3", "POODLE padding-oracle attack on the SSL 3.0 fallback (Moeller, Duong, "
                  "Kotowicz 2014); prohibited by RFC 7568."},
        {"TLS 1.0", "Deprecated by RFC 8996."},
        {"TLS 1.1", "Deprecated by RFC 8996."},
    });
    p.primitive_deny = entries({
        {"SHA-1", "Practical collisions (Stevens et al., CRYPTO 2017) and chosen-prefix "
                  "collisions (Leurent, Peyrin 2019)."},
        {"SHA1", "Practical collisions (Stevens et al., CRYPTO 2017) and chosen-prefix "
                 "collisions (Leurent, Peyrin 2019)."},
        {"MD5", "Practical collision and chosen-prefix attacks."},
        {"OCB2", "Authenticity and confidentiality attacks on OCB2 (Inoue, Iwata, Minematsu, "
                 "Poettering 2019)."},
        {"RC4", "Keystream biases; prohibited in TLS by RFC 7465."},
        {"DES", "56-bit key space is exhaustively searchable."},
        {"3DES", "64-bit block size enables Sweet32 birthday attacks."},
    });
    p.software_deny = entries({
        {"Windows XP", "Vendor support ended."},
        {"Windows Vista", "Vendor support ended."},
        {"Windows 7", "Vendor support ended."},
        {"Windows Server 2003", "Vendor support ended."},
        {"Windows Server 2008", "Vendor support ended."},
        {"OpenSSL 0.9", "Release series end of life."},
        {"OpenSSL 1.0", "Release series end of life."},
    });
    p.min_key_length_bits = 128;
    return p;
}

std::string normalize_protocol(std::string_view version) {
    std::string out;
    for (unsigned char c : version) {
        if (!std::isspace(c)) {
            out += static_cast<char>(std::tolower(c));
        }
    }
    return out;
}

std::vector<std::size_t> find_primitive(std::string_view text, std::string_view entry) {
    std::vector<std::size_t> hits;
    if (entry.empty() || entry.size() > text.size()) {
        return hits;
    }
    const std::string hay = lower(text);
    const std::string needle = lower(entry);
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + 1)) {
        const std::size_t end = pos + needle.size();
        if (end == hay.size() || !is_digit(hay[end])) {
            hits.push_back(pos);
        }
    }
    return hits;
}

bool matches_primitive(std::string_view text, std::string_view entry) {
    return !find_primitive(text, entry).empty();
}

std::vector<CryptoFinding> analyze_crypto(const SystemModel& model, const CryptoPolicy& policy) {
    std::vector<CryptoFinding> out;
    for (const DataFlow& flow : model.flows) {
        if (flow.protocol_version) {
            check_protocol_matches(flow, policy.protocol_deny,
                                   CryptoFindingClass::DeprecatedProtocol, Severity::High, out);
            check_protocol_matches(flow, policy.warn, CryptoFindingClass::Misconfiguration,
                                   Severity::Low, out);
        }
        if (flow.cipher_suite) {
            check_primitive_matches(flow, policy.primitive_deny,
                                    CryptoFindingClass::BrokenPrimitive, Severity::High, out);
            check_primitive_matches(flow, policy.warn, CryptoFindingClass::Misconfiguration,
                                    Severity::Low, out);
        }
        if (flow.key_length_bits && *flow.key_length_bits < policy.min_key_length_bits) {
            out.push_back({flow.id, CryptoFindingClass::WeakKey,
                           std::to_string(*flow.key_length_bits),
                           "min_key_length_bits=" + std::to_string(policy.min_key_length_bits),
                           Severity::Medium});
        }
    }
    auto key = [](const CryptoFinding& f) {
        return std::tie(f.flow_id, f.finding_class, f.matched_value, f.policy_entry);
    };
    std::sort(out.begin(), out.end(),
              [&](const CryptoFinding& a, const CryptoFinding& b) { return key(a) < key(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string serialize_policy(const CryptoPolicy& policy) {
    using detail::json;
    auto list = [](const std::vector<PolicyEntry>& v) {
        json out = json::array();
        for (const auto& e : v) {
            out.push_back({{"value", e.value}, {"note", e.note}});
        }
        return out;
    };
    return detail::dump_canonical(json{{"version", policy.version},
                                       {"protocol_deny", list(policy.protocol_deny)},
                                       {"primitive_deny", list(policy.primitive_deny)},
                                       {"warn", list(policy.warn)},
                                       {"software_deny", list(policy.software_deny)},
                                       {"min_key_length_bits", policy.min_key_length_bits}});
}

CryptoPolicy parse_policy(std::string_view text) {
    using namespace detail;
    const json doc = parse_json_or_throw(text, "policy");
    auto list = [&](std::string_view key) {
        std::vector<PolicyEntry> out;
        if (!doc.contains(key)) {
            return out;
        }
        for (const json& e : get_array(doc, key)) {
            if (e.is_string()) {
                out.push_back({e.get<std::string>(), ""});
            } else {
                out.push_back({get_string(e, "value"),
                               e.contains("note") ? get_string(e, "note") : std::string{}});
            }
        }
        return out;
    };
    CryptoPolicy p;
    p.version = doc.contains("version") ? get_string(doc, "version") : "custom";
    p.protocol_deny = list("protocol_deny");
    p.primitive_deny = list("primitive_deny");
    p.warn = list("warn");
    p.software_deny = list("software_deny");
    const json& min = member(doc, "min_key_length_bits");
    if (!min.is_number_integer()) {
        throw FormatError("field 'min_key_length_bits' must be an integer");
    }
    p.min_key_length_bits = min.get<std::int64_t>();
    p.validate();
    return p;
}

std::string render_crypto_findings(const std::string& model_name,
                                   const std::vector<CryptoFinding>& findings,
                                   OutputFormat format) {
    using detail::json;
    if (format == OutputFormat::Machine) {
        json list = json::array();
        for (const auto& f : findings) {
            list.push_back({{"flow", f.flow_id},
                            {"class", std::string(to_string(f.finding_class))},
                            {"matched_value", f.matched_value},
                            {"policy_entry", f.policy_entry},
                            {"severity", std::string(to_string(f.severity))}});
        }
        return detail::dump_canonical(json{{"model", model_name}, {"findings", std::move(list)}});
    }
    std::string out = "Crypto configuration audit of '" + model_name + "': " +
                      std::to_string(findings.size()) + " finding(s)\n";
    for (const auto& f : findings) {
        std::string sev(to_string(f.severity));
        std::transform(sev.begin(), sev.end(), sev.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        out += "  [" + sev + "] flow " + f.flow_id + ": " + std::string(to_string(f.finding_class)) +
               " '" + f.matched_value + "' (policy: " + f.policy_entry + ")\n";
    }
    return out;
}

std::vector<CryptoFinding> parse_crypto_findings(std::string_view machine_text) {
    using namespace detail;
    const json doc = parse_json_or_throw(machine_text, "crypto findings");
    std::vector<CryptoFinding> out;
    for (const json& e : get_array(doc, "findings")) {
        out.push_back({get_string(e, "flow"),
                       parse_enum(e, "class", crypto_finding_class_from_string),
                       get_string(e, "matched_value"), get_string(e, "policy_entry"),
                       parse_enum(e, "severity", severity_from_string)});
    }
    return out;
}

} // namespace iotassure
