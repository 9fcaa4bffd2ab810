#include "iotassure/planner.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "iotassure/errors.hpp"
#include "json_support.hpp"

namespace iotassure {
namespace {

using K = ComponentKind;

constexpr std::array<ToolClassInfo, 6> kTools{{
    {ToolClass::NetworkScanner, "network_scanner",
     "Host and port discovery over single addresses or ranges; reports services and operating "
     "systems.",
     "Nmap"},
    {ToolClass::ExploitFramework, "exploit_framework",
     "Selects and runs known exploits and auxiliary modules against identified software.",
     "Metasploit"},
    {ToolClass::SqlInjection, "sql_injection",
     "Detects database back ends behind web endpoints and automates SQL injection.", "Sqlmap"},
    {ToolClass::SubdomainDiscovery, "subdomain_discovery",
     "Enumerates subdomains of the target's DNS names.", "Subfinder"},
    {ToolClass::InfoGathering, "info_gathering",
     "Collects whois records, uptime, e-mail addresses and subdomains about a host.", "DMitry"},
    {ToolClass::WebScanner, "web_scanner",
     "Crawls web applications and scans for common web vulnerabilities.", "Burp Suite"},
}};

std::vector<std::string> ids(std::initializer_list<std::string_view> l) {
    return {l.begin(), l.end()};
}

bool visible(Observability o, KnowledgeLevel level) {
    switch (level) {
    case KnowledgeLevel::WhiteBox: return true;
    case KnowledgeLevel::GreyBox: return o != Observability::Internal;
    case KnowledgeLevel::BlackBox: return o == Observability::Public;
    }
    return false;
}

ParameterMap filter(const ParameterMap& params, KnowledgeLevel level,
                    const ParameterCatalog& catalog) {
    ParameterMap out;
    for (const auto& [id, v] : params) {
        const ParameterDef* d = catalog.find(id);
        if (visible(d ? d->observability : Observability::Internal, level)) {
            out.emplace(id, v);
        }
    }
    return out;
}

TestTask make_task(const DispatchRule& rule, const std::string& target, const ParameterMap& view) {
    TestTask t;
    t.phase = rule.phase;
    t.tool = rule.tool;
    t.target = target;
    t.target_type = rule.target;
    t.id = std::string(to_string(rule.phase)) + "-" + std::string(to_string(rule.tool)) + "-" +
           target;
    for (const std::string& input : rule.required) {
        auto it = view.find(input);
        if (it == view.end()) {
            t.bindings.emplace(input, std::nullopt);
            t.missing.push_back(input);
        } else {
            t.bindings.emplace(input, it->second);
        }
    }
    t.status = t.missing.empty() ? TaskStatus::Ready : TaskStatus::Blocked;
    return t;
}

bool triggered(const DispatchRule& rule, const ParameterMap& view) {
    return std::any_of(rule.triggers.begin(), rule.triggers.end(),
                       [&](const std::string& id) { return view.contains(id); });
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

} // namespace

const std::array<ToolClassInfo, 6>& tool_classes() { return kTools; }

std::string_view to_string(ToolClass t) { return kTools[static_cast<std::size_t>(t)].id; }

ToolClass tool_class_from_string(std::string_view s) {
    for (const auto& info : kTools) {
        if (info.id == s) {
            return info.tool;
        }
    }
    throw LookupError("unknown tool class '" + std::string(s) + "'");
}

std::string_view to_string(TaskStatus s) { return s == TaskStatus::Ready ? "ready" : "blocked"; }

// A task stays in the plan, Blocked, when any single required input is removed.
const std::vector<DispatchRule>& dispatch_table() {
    namespace p = param;
    using P = Phase;
    using T = ToolClass;
    constexpr auto C = TargetType::Component;
    static const std::vector<DispatchRule> table{
        {P::Reconnaissance, T::InfoGathering, C, {}, phase_inputs(P::Reconnaissance),
         phase_inputs(P::Reconnaissance)},
        {P::Reconnaissance, T::SubdomainDiscovery, C, {}, ids({p::kHostNames, p::kNetworkAddress}),
         ids({p::kHostNames})},
        {P::Reconnaissance, T::NetworkScanner, C, {}, ids({p::kIpAddress, p::kNetworkAddress}),
         ids({p::kIpAddress})},
        {P::Scanning, T::NetworkScanner, C, {},
         ids({p::kIpAddress, p::kOpenPorts, p::kHardwareInterface}),
         ids({p::kIpAddress, p::kHardwareInterface, p::kOpenPorts})},
        {P::Scanning, T::WebScanner, C, {}, ids({p::kWebUrls, p::kOpenPorts}), ids({p::kWebUrls})},
        {P::GainingAccess, T::ExploitFramework, C, {}, all_phase_inputs(),
         phase_inputs(P::GainingAccess)},
        {P::GainingAccess, T::SqlInjection, C, {K::CloudServer, K::SmartServiceBackend},
         ids({p::kWebUrls}), ids({p::kSoftwareVersions})},
        {P::GainingAccess, T::ExploitFramework, TargetType::Flow, {},
         ids({p::kNetworkProtocols, p::kProtocolVersion}), ids({p::kProtocolVersion})},
    };
    return table;
}

KnowledgeLevel effective_level(const Component& component, KnowledgeLevel level) {
    return component.knowledge_override ? std::min(level, *component.knowledge_override) : level;
}

SystemModel redact_model(const SystemModel& model, KnowledgeLevel level,
                         const ParameterCatalog& catalog) {
    SystemModel out = model;
    for (Component& c : out.components) {
        c.params = filter(c.params, effective_level(c, level), catalog);
    }
    for (DataFlow& f : out.flows) {
        if (!visible(Observability::NetworkObservable, level)) {
            f.protocol.reset();
            f.protocol_version.reset();
            f.cipher_suite.reset();
            f.key_length_bits.reset();
        }
        if (!visible(Observability::Internal, level)) {
            f.encryption.reset();
            f.data_integrity.reset();
            f.authentication.reset();
            f.input_sanitization.reset();
        }
        f.params = filter(f.params, level, catalog);
    }
    return out;
}

TestPlan compile_plan(const SystemModel& model, std::span<const Phase> phases,
                      const ParameterCatalog& catalog) {
    for (Phase p : phases) {
        if (!is_automatable(p)) {
            throw UnsupportedPhaseError("phase '" + std::string(to_string(p)) +
                                        "' cannot be planned; only reconnaissance, scanning "
                                        "and gaining_access are supported");
        }
    }
    TestPlan plan;
    plan.model_name = model.name;
    plan.knowledge_level = model.knowledge_level;
    for (Phase p : kAutomatablePhases) {
        if (std::find(phases.begin(), phases.end(), p) != phases.end()) {
            plan.phases.push_back(p);
        }
    }

    const SystemModel redacted = redact_model(model, model.knowledge_level, catalog);
    for (const DispatchRule& rule : dispatch_table()) {
        if (std::find(plan.phases.begin(), plan.phases.end(), rule.phase) == plan.phases.end()) {
            continue;
        }
        if (rule.target == TargetType::Component) {
            for (const Component& c : redacted.components) {
                if (!rule.kinds.empty() && !rule.kinds.contains(catalog.resolve(c.kind))) {
                    continue;
                }
                if (triggered(rule, c.params)) {
                    plan.tasks.push_back(make_task(rule, c.id, c.params));
                }
            }
        } else {
            for (const DataFlow& f : redacted.flows) {
                const ParameterMap view = flow_parameters(f);
                if (triggered(rule, view)) {
                    plan.tasks.push_back(make_task(rule, f.id, view));
                }
            }
        }
    }
    auto key = [](const TestTask& t) { return std::tie(t.phase, t.target, t.tool, t.target_type); };
    std::sort(plan.tasks.begin(), plan.tasks.end(),
              [&](const TestTask& a, const TestTask& b) { return key(a) < key(b); });
    return plan;
}

TestPlan compile_plan(const SystemModel& model, const ParameterCatalog& catalog) {
    return compile_plan(model, kAutomatablePhases, catalog);
}

std::string render_plan(const TestPlan& plan, OutputFormat format) {
    using detail::json;
    if (format == OutputFormat::Machine) {
        json phases = json::array();
        for (Phase p : plan.phases) {
            phases.push_back(std::string(to_string(p)));
        }
        json tasks = json::array();
        for (const TestTask& t : plan.tasks) {
            json bindings = json::object();
            for (const auto& [id, v] : t.bindings) {
                bindings[id] = v ? detail::value_to_json(*v) : json(nullptr);
            }
            tasks.push_back({{"id", t.id},
                             {"phase", std::string(to_string(t.phase))},
                             {"target", t.target},
                             {"target_type", std::string(to_string(t.target_type))},
                             {"tool_class", std::string(to_string(t.tool))},
                             {"bindings", std::move(bindings)},
                             {"status", std::string(to_string(t.status))},
                             {"missing", detail::string_list(t.missing)}});
        }
        return detail::dump_canonical(
            json{{"model", plan.model_name},
                 {"knowledge_level", std::string(to_string(plan.knowledge_level))},
                 {"phases", std::move(phases)},
                 {"tasks", std::move(tasks)}});
    }

    std::string out = "Penetration test plan for '" + plan.model_name + "' (knowledge: " +
                      std::string(to_string(plan.knowledge_level)) + "-box)\n";
    for (Phase p : plan.phases) {
        out += "== " + std::string(to_string(p)) + " ==\n";
        bool any = false;
        for (const TestTask& t : plan.tasks) {
            if (t.phase != p) {
                continue;
            }
            any = true;
            out += std::string(t.status == TaskStatus::Ready ? "  [READY]   " : "  [BLOCKED] ") +
                   t.id + "  (" + std::string(to_string(t.tool)) + " on " +
                   std::string(to_string(t.target_type)) + " " + t.target + ")\n";
            for (const auto& [id, v] : t.bindings) {
                out += "      " + id + " = " + (v ? describe(*v) : std::string("MISSING")) + "\n";
            }
            if (!t.missing.empty()) {
                out += "      missing:";
                for (const auto& m : t.missing) {
                    out += " " + m;
                }
                out += "\n";
            }
        }
        if (!any) {
            out += "  (no tasks)\n";
        }
    }
    std::size_t ready = 0;
    for (const TestTask& t : plan.tasks) {
        ready += t.status == TaskStatus::Ready ? 1 : 0;
    }
    out += std::to_string(plan.tasks.size()) + " task(s): " + std::to_string(ready) + " " +
           upper("ready") + ", " + std::to_string(plan.tasks.size() - ready) + " BLOCKED\n";
    return out;
}

std::string render_plan(const TestPlan& plan, std::string_view format_id) {
    return render_plan(plan, output_format_from_string(format_id));
}

TestPlan parse_plan(std::string_view machine_text) {
    using namespace detail;
    const json doc = parse_json_or_throw(machine_text, "test plan");
    TestPlan plan;
    plan.model_name = get_string(doc, "model");
    {
        const std::string level = get_string(doc, "knowledge_level");
        auto k = knowledge_level_from_string(level);
        if (!k) {
            throw FormatError("unknown knowledge level '" + level + "'");
        }
        plan.knowledge_level = *k;
    }
    for (const std::string& p : get_string_list(doc, "phases")) {
        try {
            plan.phases.push_back(phase_from_string(p));
        } catch (const LookupError& e) {
            throw FormatError(e.what());
        }
    }
    for (const json& e : get_array(doc, "tasks")) {
        TestTask t;
        t.id = get_string(e, "id");
        t.phase = parse_enum(e, "phase", phase_from_string);
        t.target = get_string(e, "target");
        t.target_type = parse_enum(e, "target_type", target_type_from_string);
        t.tool = parse_enum(e, "tool_class", tool_class_from_string);
        const json& bindings = member(e, "bindings");
        if (!bindings.is_object()) {
            throw FormatError("field 'bindings' must be an object");
        }
        for (const auto& [id, v] : bindings.items()) {
            t.bindings.emplace(id, v.is_null() ? std::nullopt
                                               : std::optional(value_from_json_untyped(v)));
        }
        const std::string status = get_string(e, "status");
        if (status == "ready") {
            t.status = TaskStatus::Ready;
        } else if (status == "blocked") {
            t.status = TaskStatus::Blocked;
        } else {
            throw FormatError("unknown task status '" + status + "'");
        }
        t.missing = get_string_list(e, "missing");
        plan.tasks.push_back(std::move(t));
    }
    return plan;
}

} // namespace iotassure
