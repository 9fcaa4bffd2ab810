#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iotassure/catalog.hpp"
#include "iotassure/model.hpp"
#include "iotassure/phases.hpp"

namespace iotassure {

enum class ToolClass {
    NetworkScanner,
    ExploitFramework,
    SqlInjection,
    SubdomainDiscovery,
    InfoGathering,
    WebScanner,
};

struct ToolClassInfo {
    ToolClass tool;
    std::string_view id;
    std::string_view description;
    std::string_view representative; // a well-known tool of the class
};

const std::array<ToolClassInfo, 6>& tool_classes();
std::string_view to_string(ToolClass t);
ToolClass tool_class_from_string(std::string_view s);

enum class TaskStatus { Ready, Blocked };

std::string_view to_string(TaskStatus s);

/// One row of the dispatch table. A target gets the task when its resolved
/// kind passes `kinds` (empty = any; ignored for flows) and at least one
/// trigger parameter is visible after redaction. `required` is what the
/// task binds.
struct DispatchRule {
    Phase phase;
    ToolClass tool;
    TargetType target;
    KindSet kinds;
    std::vector<std::string> triggers;
    std::vector<std::string> required;
};

const std::vector<DispatchRule>& dispatch_table();

struct TestTask {
    std::string id; // "<phase>-<tool_class>-<target_id>"
    Phase phase = Phase::Reconnaissance;
    std::string target;
    TargetType target_type = TargetType::Component;
    ToolClass tool = ToolClass::InfoGathering;
    std::map<std::string, std::optional<ParameterValue>> bindings; // nullopt = MISSING
    TaskStatus status = TaskStatus::Blocked;
    std::vector<std::string> missing;

    bool operator==(const TestTask&) const = default;
};

struct TestPlan {
    std::string model_name;
    KnowledgeLevel knowledge_level = KnowledgeLevel::WhiteBox;
    std::vector<Phase> phases;
    std::vector<TestTask> tasks; // grouped by phase, then target id, then tool

    bool operator==(const TestPlan&) const = default;
};

/// Effective level of a component: the narrower of `level` and its override.
KnowledgeLevel effective_level(const Component& component, KnowledgeLevel level);

/// Keeps what an attacker at `level` could know. BlackBox retains ids,
/// names, kinds, topology and Public parameters; GreyBox adds
/// NetworkObservable ones; WhiteBox keeps everything.
SystemModel redact_model(const SystemModel& model, KnowledgeLevel level,
                         const ParameterCatalog& catalog = parameter_catalog());

/// Redacts at the model's knowledge level and emits tasks per the dispatch
/// table. Tasks with missing bindings are Blocked, not dropped. Throws
/// UnsupportedPhaseError for phases beyond Gaining Access.
TestPlan compile_plan(const SystemModel& model, std::span<const Phase> phases,
                      const ParameterCatalog& catalog = parameter_catalog());
TestPlan compile_plan(const SystemModel& model,
                      const ParameterCatalog& catalog = parameter_catalog());

std::string render_plan(const TestPlan& plan, OutputFormat format);
/// format_id is "machine" or "human"; throws LookupError otherwise.
std::string render_plan(const TestPlan& plan, std::string_view format_id);
/// Reads the machine format back; throws FormatError.
TestPlan parse_plan(std::string_view machine_text);

} // namespace iotassure
