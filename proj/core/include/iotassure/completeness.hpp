#pragma once

#include <string>
#include <vector>

#include "iotassure/catalog.hpp"
#include "iotassure/model.hpp"
#include "iotassure/phases.hpp"

namespace iotassure {

struct ComponentCoverage {
    std::string target_id;
    TargetType target_type = TargetType::Component;
    std::vector<std::string> applicable; // catalog order
    std::vector<std::string> present;
    std::vector<std::string> missing;
    double score = 1.0;

    bool operator==(const ComponentCoverage&) const = default;
};

struct PhaseReadiness {
    std::string component_id;
    Phase phase = Phase::Reconnaissance;
    std::vector<std::string> required;
    std::vector<std::string> satisfied;
    double readiness = 0.0;

    bool operator==(const PhaseReadiness&) const = default;
};

struct CompletenessReport {
    std::string model_name;
    std::vector<ComponentCoverage> coverage; // components by id, then flows by id
    std::vector<PhaseReadiness> readiness;   // by component id, then phase
    double overall_score = 1.0;

    bool operator==(const CompletenessReport&) const = default;
};

/// Coverage counts matrix parameters only; the extension parameters feed
/// phase readiness instead. Flows are scored as network-protocol
/// pseudo-components.
ComponentCoverage score_component(const Component& component,
                                  const ParameterCatalog& catalog = parameter_catalog());
ComponentCoverage score_flow(const DataFlow& flow,
                             const ParameterCatalog& catalog = parameter_catalog());

CompletenessReport completeness_report(const SystemModel& model,
                                       const ParameterCatalog& catalog = parameter_catalog());

/// Throws UnsupportedPhaseError for non-automatable phases.
std::vector<PhaseReadiness> phase_readiness(const SystemModel& model, Phase phase);

std::string render_completeness(const CompletenessReport& report, OutputFormat format);
CompletenessReport parse_completeness(std::string_view machine_text);

} // namespace iotassure
