#include "iotassure/completeness.hpp"

#include <algorithm>
#include <cstdio>

#include "json_support.hpp"

namespace iotassure {
namespace {

ComponentCoverage score(std::string id, TargetType type, ComponentKind kind,
                        const ParameterMap& params, const ParameterCatalog& catalog) {
    ComponentCoverage cov;
    cov.target_id = std::move(id);
    cov.target_type = type;
    double total = 0.0;
    double have = 0.0;
    for (const ParameterDef* d : catalog.applicable_to(kind)) {
        const double w = priority_weight(d->priority);
        cov.applicable.push_back(d->id);
        total += w;
        if (params.contains(d->id)) {
            cov.present.push_back(d->id);
            have += w;
        } else {
            cov.missing.push_back(d->id);
        }
    }
    cov.score = total > 0.0 ? have / total : 1.0;
    return cov;
}

std::string fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + v[i];
    }
    return out;
}

} // namespace

ComponentCoverage score_component(const Component& component, const ParameterCatalog& catalog) {
    return score(component.id, TargetType::Component, component.kind, component.params, catalog);
}

ComponentCoverage score_flow(const DataFlow& flow, const ParameterCatalog& catalog) {
    return score(flow.id, TargetType::Flow, ComponentKind::NetworkProtocol, flow_parameters(flow),
                 catalog);
}

std::vector<PhaseReadiness> phase_readiness(const SystemModel& model, Phase phase) {
    const auto& required = phase_inputs(phase);
    std::vector<const Component*> ordered;
    for (const Component& c : model.components) {
        ordered.push_back(&c);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const Component* a, const Component* b) { return a->id < b->id; });

    std::vector<PhaseReadiness> out;
    for (const Component* c : ordered) {
        PhaseReadiness r;
        r.component_id = c->id;
        r.phase = phase;
        r.required = required;
        for (const auto& id : required) {
            if (c->has(id)) {
                r.satisfied.push_back(id);
            }
        }
        r.readiness = static_cast<double>(r.satisfied.size()) / static_cast<double>(required.size());
        out.push_back(std::move(r));
    }
    return out;
}

CompletenessReport completeness_report(const SystemModel& model, const ParameterCatalog& catalog) {
    const SystemModel m = canonicalize(model);
    CompletenessReport report;
    report.model_name = m.name;

    double total = 0.0;
    double have = 0.0;
    auto accumulate = [&](const ComponentCoverage& cov) {
        for (const auto& id : cov.applicable) {
            total += priority_weight(catalog.at(id).priority);
        }
        for (const auto& id : cov.present) {
            have += priority_weight(catalog.at(id).priority);
        }
    };
    for (const Component& c : m.components) {
        report.coverage.push_back(score_component(c, catalog));
        accumulate(report.coverage.back());
    }
    for (const DataFlow& f : m.flows) {
        report.coverage.push_back(score_flow(f, catalog));
        accumulate(report.coverage.back());
    }
    // Applicable-weight-weighted mean of the per-target scores.
    report.overall_score = total > 0.0 ? have / total : 1.0;

    std::vector<std::vector<PhaseReadiness>> per_phase;
    for (Phase p : kAutomatablePhases) {
        per_phase.push_back(phase_readiness(m, p));
    }
    for (std::size_t i = 0; i < m.components.size(); ++i) {
        for (auto& phase_rows : per_phase) {
            report.readiness.push_back(std::move(phase_rows[i]));
        }
    }
    return report;
}

std::string render_completeness(const CompletenessReport& report, OutputFormat format) {
    using detail::json;
    using detail::string_list;
    if (format == OutputFormat::Machine) {
        json coverage = json::array();
        for (const auto& c : report.coverage) {
            coverage.push_back({{"target", c.target_id},
                                {"target_type", std::string(to_string(c.target_type))},
                                {"applicable", string_list(c.applicable)},
                                {"present", string_list(c.present)},
                                {"missing", string_list(c.missing)},
                                {"score", c.score}});
        }
        json readiness = json::array();
        for (const auto& r : report.readiness) {
            readiness.push_back({{"component", r.component_id},
                                 {"phase", std::string(to_string(r.phase))},
                                 {"required", string_list(r.required)},
                                 {"satisfied", string_list(r.satisfied)},
                                 {"readiness", r.readiness}});
        }
        return detail::dump_canonical(json{{"model", report.model_name},
                                           {"overall_score", report.overall_score},
                                           {"coverage", std::move(coverage)},
                                           {"readiness", std::move(readiness)}});
    }

    std::string out = "Metadata completeness for '" + report.model_name +
                      "': overall " + fixed(report.overall_score * 100.0, 1) + "%\n";
    for (const auto& c : report.coverage) {
        out += "  " + std::string(to_string(c.target_type)) + " " + c.target_id + ": " +
               fixed(c.score * 100.0, 1) + "% (" + std::to_string(c.present.size()) + "/" +
               std::to_string(c.applicable.size()) + ")\n";
        if (!c.missing.empty()) {
            out += "    missing: " + join(c.missing) + "\n";
        }
    }
    if (!report.readiness.empty()) {
        out += "Pentest phase readiness:\n";
        for (const auto& r : report.readiness) {
            out += "  " + r.component_id + " " + std::string(to_string(r.phase)) + ": " +
                   fixed(r.readiness * 100.0, 0) + "% (" + std::to_string(r.satisfied.size()) + "/" +
                   std::to_string(r.required.size()) + ")\n";
        }
    }
    return out;
}

CompletenessReport parse_completeness(std::string_view machine_text) {
    using namespace detail;
    const json doc = parse_json_or_throw(machine_text, "completeness report");
    CompletenessReport report;
    report.model_name = get_string(doc, "model");
    report.overall_score = get_number(doc, "overall_score");
    for (const json& e : get_array(doc, "coverage")) {
        ComponentCoverage c;
        c.target_id = get_string(e, "target");
        c.target_type = parse_enum(e, "target_type", target_type_from_string);
        c.applicable = get_string_list(e, "applicable");
        c.present = get_string_list(e, "present");
        c.missing = get_string_list(e, "missing");
        c.score = get_number(e, "score");
        report.coverage.push_back(std::move(c));
    }
    for (const json& e : get_array(doc, "readiness")) {
        PhaseReadiness r;
        r.component_id = get_string(e, "component");
        r.phase = parse_enum(e, "phase", phase_from_string);
        r.required = get_string_list(e, "required");
        r.satisfied = get_string_list(e, "satisfied");
        r.readiness = get_number(e, "readiness");
        report.readiness.push_back(std::move(r));
    }
    return report;
}

} // namespace iotassure
