#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "iotassure/model.hpp"
#include "iotassure/types.hpp"

namespace iotassure {

struct PolicyEntry {
    std::string value;
    std::string note;

    bool operator==(const PolicyEntry&) const = default;
};

struct CryptoPolicy {
    std::string version;
    std::vector<PolicyEntry> protocol_deny;  // exact match after normalisation
    std::vector<PolicyEntry> primitive_deny; // bounded substring match
    std::vector<PolicyEntry> warn;           // allowed but flagged, either field
    std::vector<PolicyEntry> software_deny;  // outdated OS / software, used by the threat engine
    std::int64_t min_key_length_bits = 128;

    /// Throws ConfigError when deny and warn lists overlap or the minimum
    /// key length is not positive.
    void validate() const;

    bool operator==(const CryptoPolicy&) const = default;
};

enum class CryptoFindingClass { DeprecatedProtocol, BrokenPrimitive, WeakKey, Misconfiguration };

std::string_view to_string(CryptoFindingClass c);
CryptoFindingClass crypto_finding_class_from_string(std::string_view s);

struct CryptoFinding {
    std::string flow_id;
    CryptoFindingClass finding_class = CryptoFindingClass::Misconfiguration;
    std::string matched_value; // as written in the flow
    std::string policy_entry;
    Severity severity = Severity::Low;

    bool operator==(const CryptoFinding&) const = default;
};

CryptoPolicy default_policy();

/// Lowercase with whitespace removed; "TLS 1.0" and "tls1.0" compare equal.
std::string normalize_protocol(std::string_view version);

/// Case-insensitive occurrences of `entry` in `text` that are not followed
/// by a digit, so "SHA1" does not fire inside "SHA128" and "SHA-1" does not
/// fire inside "SHA-128". Returns match offsets.
std::vector<std::size_t> find_primitive(std::string_view text, std::string_view entry);
bool matches_primitive(std::string_view text, std::string_view entry);

/// Checks protocol_version, cipher_suite and key_length_bits on every flow.
/// Unset fields produce nothing. Sorted by flow id, class, matched value.
std::vector<CryptoFinding> analyze_crypto(const SystemModel& model,
                                          const CryptoPolicy& policy = default_policy());

std::string serialize_policy(const CryptoPolicy& policy);
/// Throws FormatError on malformed input and ConfigError on invariant breaks.
CryptoPolicy parse_policy(std::string_view text);

std::string render_crypto_findings(const std::string& model_name,
                                   const std::vector<CryptoFinding>& findings,
                                   OutputFormat format);
std::vector<CryptoFinding> parse_crypto_findings(std::string_view machine_text);

} // namespace iotassure
