#include "iotassure/threats.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "iotassure/errors.hpp"
#include "json_support.hpp"

namespace iotassure {
namespace {

using K = ComponentKind;
using Op = Guard::Op;

constexpr std::array<StrideInfo, 6> kStride{{
    {StrideCategory::Spoofing, "spoofing", "Spoofing identity",
     "Pretending to be some other principal, e.g. by replaying or forging credentials."},
    {StrideCategory::Tampering, "tampering", "Tampering with data",
     "Unauthorised modification of stored, processed or transmitted data."},
    {StrideCategory::Repudiation, "repudiation", "Repudiation",
     "A principal denies having performed an action and the system cannot prove otherwise."},
    {StrideCategory::InformationDisclosure, "information_disclosure", "Information disclosure",
     "Data becomes readable by unauthorised users."},
    {StrideCategory::DenialOfService, "denial_of_service", "Denial of service",
     "Degrading or removing the availability of a service for legitimate users."},
    {StrideCategory::ElevationOfPrivilege, "elevation_of_privilege", "Elevation of privilege",
     "Obtaining rights beyond those granted, up to full control of the system."},
}};

constexpr std::array<std::pair<Op, std::string_view>, 11> kOpNames{{
    {Op::Always, "always"},
    {Op::All, "all"},
    {Op::Any, "any"},
    {Op::Not, "not"},
    {Op::IsTrue, "is_true"},
    {Op::IsFalse, "is_false"},
    {Op::NotTrue, "not_true"},
    {Op::IsSet, "is_set"},
    {Op::IsUnset, "is_unset"},
    {Op::Denylisted, "denylisted"},
    {Op::IncidentFlowsDisagree, "incident_flows_disagree"},
}};

bool is_param_test(Op op) {
    switch (op) {
    case Op::IsTrue:
    case Op::IsFalse:
    case Op::NotTrue:
    case Op::IsSet:
    case Op::IsUnset:
    case Op::Denylisted: return true;
    default: return false;
    }
}

bool is_bool_test(Op op) { return op == Op::IsTrue || op == Op::IsFalse || op == Op::NotTrue; }

struct Eval {
    bool holds = false;
    std::set<std::string> missing; // absent parameters the outcome rests on
};

class Evaluator {
public:
    Evaluator(const SystemModel& model, const CryptoPolicy& policy)
        : model_(model), policy_(policy) {}

    Eval eval(const Guard& g, const ParameterMap& view, const Component* component) const {
        switch (g.op) {
        case Op::Always: return {true, {}};
        case Op::All: {
            Eval out{true, {}};
            for (const Guard& c : g.children) {
                Eval e = eval(c, view, component);
                if (!e.holds) {
                    return {false, {}};
                }
                out.missing.insert(e.missing.begin(), e.missing.end());
            }
            return out;
        }
        case Op::Any: {
            Eval out{false, {}};
            bool definite = false;
            for (const Guard& c : g.children) {
                Eval e = eval(c, view, component);
                if (e.holds) {
                    out.holds = true;
                    definite = definite || e.missing.empty();
                    out.missing.insert(e.missing.begin(), e.missing.end());
                }
            }
            if (definite) {
                out.missing.clear();
            }
            return out;
        }
        case Op::Not: {
            Eval e = eval(g.children.front(), view, component);
            e.holds = !e.holds;
            return e;
        }
        case Op::IncidentFlowsDisagree: return disagree(g.params, component);
        default: return test(g.op, g.params.front(), view);
        }
    }

private:
    Eval test(Op op, const std::string& id, const ParameterMap& view) const {
        auto it = view.find(id);
        if (op == Op::IsSet) {
            return {it != view.end(), {}};
        }
        if (op == Op::IsUnset) {
            return {it == view.end(), {}};
        }
        if (it == view.end()) {
            // Unknown counts as unprotected: NotTrue fires, the others do not.
            return {op == Op::NotTrue, {id}};
        }
        const ParameterValue& v = it->second;
        if (op == Op::Denylisted) {
            return {denylisted(v), {}};
        }
        const bool* b = std::get_if<bool>(&v);
        const bool value = b != nullptr && *b;
        switch (op) {
        case Op::IsTrue: return {value, {}};
        case Op::IsFalse: return {b != nullptr && !*b, {}};
        case Op::NotTrue: return {!value, {}};
        default: return {false, {}};
        }
    }

    bool denylisted(const ParameterValue& v) const {
        auto hit = [&](const std::string& s) {
            return std::any_of(policy_.software_deny.begin(), policy_.software_deny.end(),
                               [&](const PolicyEntry& e) { return matches_primitive(s, e.value); });
        };
        if (const auto* s = std::get_if<std::string>(&v)) {
            return hit(*s);
        }
        if (const auto* l = std::get_if<StringList>(&v)) {
            return std::any_of(l->begin(), l->end(), hit);
        }
        return false;
    }

    Eval disagree(const std::vector<std::string>& flags, const Component* component) const {
        if (component == nullptr) {
            return {false, {}};
        }
        Eval out;
        for (const std::string& flag : flags) {
            bool seen_true = false;
            bool seen_false = false;
            for (const DataFlow& f : model_.flows) {
                if (!f.touches(component->id)) {
                    continue;
                }
                const ParameterMap view = flow_parameters(f);
                auto it = view.find(flag);
                const bool* b = it == view.end() ? nullptr : std::get_if<bool>(&it->second);
                if (b == nullptr) {
                    out.missing.insert(flag);
                }
                (b != nullptr && *b ? seen_true : seen_false) = true;
            }
            out.holds = out.holds || (seen_true && seen_false);
        }
        if (!out.holds) {
            out.missing.clear();
        }
        return out;
    }

    const SystemModel& model_;
    const CryptoPolicy& policy_;
};

ThreatRule rule(std::string id, RuleTarget target, Guard guard,
                std::vector<StrideCategory> categories, Severity severity, std::string rationale) {
    return {std::move(id), std::move(target), std::move(guard), std::move(categories),
            std::move(rationale), severity};
}

void check_guard(const Guard& g, const std::string& rule_id, const ParameterCatalog& catalog) {
    auto fail = [&](const std::string& why) {
        throw ConfigError("rule '" + rule_id + "': " + why);
    };
    switch (g.op) {
    case Op::Always:
        if (!g.params.empty() || !g.children.empty()) {
            fail("'always' takes no operands");
        }
        return;
    case Op::All:
    case Op::Any:
        if (g.children.empty()) {
            fail("'" + std::string(to_string(g.op)) + "' needs at least one operand");
        }
        break;
    case Op::Not:
        if (g.children.size() != 1) {
            fail("'not' takes exactly one operand");
        }
        break;
    case Op::IncidentFlowsDisagree:
        if (g.params.empty()) {
            fail("'incident_flows_disagree' needs at least one flag");
        }
        break;
    default:
        if (g.params.size() != 1) {
            fail("'" + std::string(to_string(g.op)) + "' takes exactly one parameter");
        }
        break;
    }
    for (const std::string& p : g.params) {
        const ParameterDef* d = catalog.find(p);
        if (d == nullptr) {
            fail("guard references unknown parameter id '" + p + "'");
        }
        const bool needs_bool = is_bool_test(g.op) || g.op == Op::IncidentFlowsDisagree;
        if (needs_bool && d->shape != ValueShape::Boolean) {
            fail("parameter '" + p + "' is not boolean");
        }
        if (g.op == Op::Denylisted && d->shape != ValueShape::String &&
            d->shape != ValueShape::StringList) {
            fail("parameter '" + p + "' is not textual");
        }
    }
    for (const Guard& c : g.children) {
        check_guard(c, rule_id, catalog);
    }
}

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& v : s) {
        out += (out.empty() ? "" : ", ") + v;
    }
    return out;
}

detail::json guard_to_json(const Guard& g) {
    using detail::json;
    json out{{"op", std::string(to_string(g.op))}};
    if (is_param_test(g.op)) {
        out["param"] = g.params.front();
    } else if (!g.params.empty()) {
        out["params"] = detail::string_list(g.params);
    }
    if (!g.children.empty()) {
        json of = json::array();
        for (const Guard& c : g.children) {
            of.push_back(guard_to_json(c));
        }
        out["of"] = std::move(of);
    }
    return out;
}

Guard guard_from_json(const detail::json& j, std::size_t depth = 0) {
    using namespace detail;
    if (depth > 64) {
        throw FormatError("guard nesting too deep");
    }
    Guard g;
    g.op = parse_enum(j, "op", guard_op_from_string);
    if (j.contains("param")) {
        g.params.push_back(get_string(j, "param"));
    }
    if (j.contains("params")) {
        for (auto& p : get_string_list(j, "params")) {
            g.params.push_back(std::move(p));
        }
    }
    if (j.contains("of")) {
        for (const json& c : get_array(j, "of")) {
            g.children.push_back(guard_from_json(c, depth + 1));
        }
    }
    return g;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

} // namespace

const std::array<StrideInfo, 6>& stride_categories() { return kStride; }

std::string_view to_string(StrideCategory c) {
    return kStride[static_cast<std::size_t>(c)].id;
}

StrideCategory stride_category_from_string(std::string_view s) {
    for (const auto& info : kStride) {
        if (info.id == s) {
            return info.category;
        }
    }
    throw LookupError("unknown STRIDE category '" + std::string(s) + "'");
}

std::string_view to_string(Guard::Op op) {
    for (const auto& [k, v] : kOpNames) {
        if (k == op) {
            return v;
        }
    }
    return "?";
}

Guard::Op guard_op_from_string(std::string_view s) {
    for (const auto& [k, v] : kOpNames) {
        if (v == s) {
            return k;
        }
    }
    throw LookupError("unknown guard operator '" + std::string(s) + "'");
}

std::set<std::string> Guard::referenced_params() const {
    std::set<std::string> out(params.begin(), params.end());
    for (const Guard& c : children) {
        auto sub = c.referenced_params();
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

std::vector<ThreatRule> default_ruleset() {
    namespace p = param;
    using SC = StrideCategory;
    const RuleTarget flows{{}, true};
    const KindSet hosts{K::SmartDeviceSensor, K::Gateway, K::CloudServer, K::SmartServiceBackend};

    std::vector<ThreatRule> rules;
    rules.push_back(rule("R1", flows, Guard::test(Op::NotTrue, p::kEncryption),
                         {SC::InformationDisclosure, SC::Tampering}, Severity::High,
                         "Plaintext traffic: an attacker who controls the network can read, "
                         "drop, replay and forge messages on this channel."));
    rules.push_back(rule("R2", flows, Guard::test(Op::NotTrue, p::kAuthentication),
                         {SC::Spoofing}, Severity::High,
                         "Without authentication a peer can present another party's identity "
                         "on this channel."));
    rules.push_back(rule("R3", flows, Guard::test(Op::NotTrue, p::kDataIntegrity),
                         {SC::Tampering}, Severity::Medium,
                         "Without integrity protection data in transit can be modified "
                         "undetected."));
    rules.push_back(rule("R4", RuleTarget{{K::UserInterface}, true},
                         Guard::test(Op::NotTrue, p::kInputSanitization),
                         {SC::Tampering, SC::ElevationOfPrivilege}, Severity::High,
                         "User-supplied input is passed on unvalidated, enabling injection."));
    rules.push_back(rule("R5", flows, Guard::test(Op::NotTrue, p::kAuthentication),
                         {SC::Repudiation}, Severity::Medium,
                         "Peers on an unauthenticated channel can deny having sent a message; "
                         "no audit trail can be tied to an identity."));
    rules.push_back(rule("R6", RuleTarget{{K::CloudServer, K::SmartServiceBackend}, false},
                         Guard::always(), {SC::DenialOfService}, Severity::Medium,
                         "Cloud and back-end services are denial-of-service targets "
                         "(exposure candidate)."));
    rules.push_back(rule("R7", RuleTarget{hosts, false},
                         Guard::any({Guard::test(Op::Denylisted, p::kOperatingSystem),
                                     Guard::test(Op::Denylisted, p::kSoftwareVersions)}),
                         {SC::ElevationOfPrivilege}, Severity::High,
                         "Software listed as end-of-life or vulnerable; public exploits may "
                         "grant elevated access."));
    rules.push_back(rule("R8", RuleTarget{{K::Gateway, K::CloudServer, K::SmartServiceBackend}, false},
                         Guard::test(Op::IsTrue, p::kSharedResources),
                         {SC::InformationDisclosure}, Severity::Medium,
                         "Co-located workloads share this host; isolation failures can leak "
                         "data between them."));
    rules.push_back(rule("R9", RuleTarget{hosts, false},
                         Guard::all({Guard::test(Op::IsTrue, p::kDataStorage),
                                     Guard::test(Op::NotTrue, p::kSecureKeyStore)}),
                         {SC::InformationDisclosure}, Severity::Medium,
                         "Data is stored locally without a secure key store protecting the "
                         "keys."));
    rules.push_back(rule("R10", RuleTarget{{K::Gateway}, false},
                         Guard::incident_flows_disagree({std::string(p::kEncryption),
                                                         std::string(p::kAuthentication)}),
                         {SC::Tampering, SC::InformationDisclosure}, Severity::Medium,
                         "Gateway bridges channels with unequal protection; traffic can be "
                         "attacked on the weaker side."));
    return rules;
}

void check_ruleset(std::span<const ThreatRule> rules, const ParameterCatalog& catalog) {
    std::set<std::string> ids;
    for (const ThreatRule& r : rules) {
        if (r.id.empty()) {
            throw ConfigError("rule with empty id");
        }
        if (!ids.insert(r.id).second) {
            throw ConfigError("duplicate rule id '" + r.id + "'");
        }
        if (r.categories.empty()) {
            throw ConfigError("rule '" + r.id + "' produces no STRIDE category");
        }
        if (r.target.kinds.empty() && !r.target.flows) {
            throw ConfigError("rule '" + r.id + "' targets nothing");
        }
        for (ComponentKind k : r.target.kinds) {
            if (!is_canonical(k)) {
                throw ConfigError("rule '" + r.id + "' targets alias kind '" +
                                  std::string(to_string(k)) + "'");
            }
        }
        check_guard(r.guard, r.id, catalog);
    }
}

std::vector<ThreatFinding> enumerate_threats(const SystemModel& model,
                                             std::span<const ThreatRule> rules,
                                             const CryptoPolicy& policy,
                                             const ParameterCatalog& catalog) {
    check_ruleset(rules, catalog);
    const Evaluator evaluator(model, policy);
    std::vector<ThreatFinding> out;

    auto emit = [&](const ThreatRule& r, const std::string& target, TargetType type,
                    const Eval& e) {
        std::string rationale = r.rationale;
        if (!e.missing.empty()) {
            rationale += " (" + std::string(kMissingMetadataMarker) + ": " + join(e.missing) + ")";
        }
        std::vector<StrideCategory> cats = r.categories;
        std::sort(cats.begin(), cats.end());
        cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
        for (StrideCategory c : cats) {
            out.push_back({r.id + ":" + target + ":" + std::string(to_string(c)), target, type, c,
                           r.id, r.severity, rationale, !e.missing.empty()});
        }
    };

    for (const Component& c : model.components) {
        const ComponentKind kind = catalog.resolve(c.kind);
        for (const ThreatRule& r : rules) {
            if (!r.target.kinds.contains(kind)) {
                continue;
            }
            if (Eval e = evaluator.eval(r.guard, c.params, &c); e.holds) {
                emit(r, c.id, TargetType::Component, e);
            }
        }
    }
    for (const DataFlow& f : model.flows) {
        const ParameterMap view = flow_parameters(f);
        for (const ThreatRule& r : rules) {
            if (!r.target.flows) {
                continue;
            }
            if (Eval e = evaluator.eval(r.guard, view, nullptr); e.holds) {
                emit(r, f.id, TargetType::Flow, e);
            }
        }
    }

    auto key = [](const ThreatFinding& f) { return std::tie(f.target, f.category, f.rule_id); };
    std::sort(out.begin(), out.end(),
              [&](const ThreatFinding& a, const ThreatFinding& b) { return key(a) < key(b); });
    return out;
}

std::string serialize_ruleset(std::span<const ThreatRule> rules) {
    using detail::json;
    json list = json::array();
    for (const ThreatRule& r : rules) {
        json kinds = json::array();
        for (ComponentKind k : r.target.kinds) {
            kinds.push_back(std::string(to_string(k)));
        }
        json cats = json::array();
        for (StrideCategory c : r.categories) {
            cats.push_back(std::string(to_string(c)));
        }
        list.push_back({{"id", r.id},
                        {"target", {{"kinds", std::move(kinds)}, {"flows", r.target.flows}}},
                        {"guard", guard_to_json(r.guard)},
                        {"categories", std::move(cats)},
                        {"severity", std::string(to_string(r.severity))},
                        {"rationale", r.rationale}});
    }
    return detail::dump_canonical(json{{"rules", std::move(list)}});
}

std::vector<ThreatRule> parse_ruleset(std::string_view text) {
    using namespace detail;
    const json doc = parse_json_or_throw(text, "ruleset");
    std::vector<ThreatRule> out;
    for (const json& e : get_array(doc, "rules")) {
        ThreatRule r;
        r.id = get_string(e, "id");
        const json& target = member(e, "target");
        if (target.contains("kinds")) {
            for (const std::string& k : get_string_list(target, "kinds")) {
                auto kind = component_kind_from_string(k);
                if (!kind) {
                    throw FormatError("rule '" + r.id + "': unknown component kind '" + k + "'");
                }
                r.target.kinds.insert(*kind);
            }
        }
        r.target.flows = target.contains("flows") && get_bool(target, "flows");
        r.guard = guard_from_json(member(e, "guard"));
        for (const std::string& c : get_string_list(e, "categories")) {
            try {
                r.categories.push_back(stride_category_from_string(c));
            } catch (const LookupError& ex) {
                throw FormatError("rule '" + r.id + "': " + ex.what());
            }
        }
        r.severity = parse_enum(e, "severity", severity_from_string);
        r.rationale = e.contains("rationale") ? get_string(e, "rationale") : std::string{};
        out.push_back(std::move(r));
    }
    return out;
}

std::string render_threats(const std::string& model_name, std::span<const ThreatFinding> findings,
                           OutputFormat format) {
    using detail::json;
    if (format == OutputFormat::Machine) {
        json list = json::array();
        for (const auto& f : findings) {
            list.push_back({{"id", f.id},
                            {"target", f.target},
                            {"target_type", std::string(to_string(f.target_type))},
                            {"category", std::string(to_string(f.category))},
                            {"rule", f.rule_id},
                            {"severity", std::string(to_string(f.severity))},
                            {"rationale", f.rationale},
                            {"missing_metadata", f.missing_metadata}});
        }
        return detail::dump_canonical(json{{"model", model_name}, {"findings", std::move(list)}});
    }
    std::string out = "STRIDE threats for '" + model_name + "': " +
                      std::to_string(findings.size()) + " finding(s)\n";
    for (const auto& f : findings) {
        out += "  [" + upper(to_string(f.severity)) + "] " + std::string(to_string(f.target_type)) +
               " " + f.target + ": " +
               std::string(kStride[static_cast<std::size_t>(f.category)].name) + " (" + f.rule_id +
               ") - " + f.rationale + "\n";
    }
    return out;
}

std::vector<ThreatFinding> parse_threats(std::string_view machine_text) {
    using namespace detail;
    const json doc = parse_json_or_throw(machine_text, "threat findings");
    std::vector<ThreatFinding> out;
    for (const json& e : get_array(doc, "findings")) {
        out.push_back({get_string(e, "id"), get_string(e, "target"),
                       parse_enum(e, "target_type", target_type_from_string),
                       parse_enum(e, "category", stride_category_from_string),
                       get_string(e, "rule"), parse_enum(e, "severity", severity_from_string),
                       get_string(e, "rationale"), get_bool(e, "missing_metadata")});
    }
    return out;
}

} // namespace iotassure
