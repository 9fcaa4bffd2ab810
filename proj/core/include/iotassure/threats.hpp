#pragma once

#include <array>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iotassure/catalog.hpp"
#include "iotassure/crypto.hpp"
#include "iotassure/model.hpp"
#include "iotassure/types.hpp"

namespace iotassure {

enum class StrideCategory {
    Spoofing,
    Tampering,
    Repudiation,
    InformationDisclosure,
    DenialOfService,
    ElevationOfPrivilege,
};

struct StrideInfo {
    StrideCategory category;
    std::string_view id;   // "information_disclosure"
    std::string_view name; // "Information disclosure"
    std::string_view definition;
};

const std::array<StrideInfo, 6>& stride_categories();
std::string_view to_string(StrideCategory c);
StrideCategory stride_category_from_string(std::string_view s);

/// Predicate over a target's parameter values.
///
/// Parameter tests read the catalog-keyed view of the target (component
/// params, or flow_parameters() for flows). NotTrue holds on false and on
/// absence; absence marks the result as resting on missing metadata.
struct Guard {
    enum class Op {
        Always,
        All,
        Any,
        Not,
        IsTrue,
        IsFalse,
        NotTrue,
        IsSet,
        IsUnset,
        Denylisted,            // value matches the policy's software deny list
        IncidentFlowsDisagree, // component only: incident flows differ on any listed flag
    };

    Op op = Op::Always;
    std::vector<std::string> params;
    std::vector<Guard> children;

    static Guard always() { return {}; }
    static Guard all(std::vector<Guard> gs) { return {Op::All, {}, std::move(gs)}; }
    static Guard any(std::vector<Guard> gs) { return {Op::Any, {}, std::move(gs)}; }
    static Guard negate(Guard g) { return {Op::Not, {}, {std::move(g)}}; }
    static Guard test(Op op, std::string_view param) { return {op, {std::string(param)}, {}}; }
    static Guard incident_flows_disagree(std::vector<std::string> flags) {
        return {Op::IncidentFlowsDisagree, std::move(flags), {}};
    }

    /// Every parameter id the guard reads, recursively.
    std::set<std::string> referenced_params() const;

    bool operator==(const Guard&) const = default;
};

std::string_view to_string(Guard::Op op);
Guard::Op guard_op_from_string(std::string_view s);

struct RuleTarget {
    KindSet kinds; // canonical kinds; aliases resolve before matching
    bool flows = false;

    bool operator==(const RuleTarget&) const = default;
};

struct ThreatRule {
    std::string id;
    RuleTarget target;
    Guard guard;
    std::vector<StrideCategory> categories;
    std::string rationale;
    Severity severity = Severity::Medium;

    bool operator==(const ThreatRule&) const = default;
};

struct ThreatFinding {
    std::string id; // "<rule>:<target>:<category>"
    std::string target;
    TargetType target_type = TargetType::Component;
    StrideCategory category = StrideCategory::Spoofing;
    std::string rule_id;
    Severity severity = Severity::Low;
    std::string rationale;
    bool missing_metadata = false;

    bool operator==(const ThreatFinding&) const = default;
};

inline constexpr std::string_view kMissingMetadataMarker = "due to missing metadata";
inline constexpr std::string_view kExposureCandidateMarker = "exposure candidate";

/// R1..R10.
std::vector<ThreatRule> default_ruleset();

/// Throws ConfigError when a rule reads an unknown parameter, produces no
/// category, has an empty target or duplicates another rule id.
void check_ruleset(std::span<const ThreatRule> rules,
                   const ParameterCatalog& catalog = parameter_catalog());

/// One finding per produced category of each rule whose target matches and
/// whose guard holds. Sorted by (target, category, rule id).
std::vector<ThreatFinding> enumerate_threats(const SystemModel& model,
                                             std::span<const ThreatRule> rules,
                                             const CryptoPolicy& policy = default_policy(),
                                             const ParameterCatalog& catalog = parameter_catalog());

std::string serialize_ruleset(std::span<const ThreatRule> rules);
/// Throws FormatError on malformed input.
std::vector<ThreatRule> parse_ruleset(std::string_view text);

std::string render_threats(const std::string& model_name, std::span<const ThreatFinding> findings,
                           OutputFormat format);
std::vector<ThreatFinding> parse_threats(std::string_view machine_text);

} // namespace iotassure
