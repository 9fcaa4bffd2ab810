#pragma once

#include <span>
#include <string>
#include <vector>

#include "iotassure/catalog.hpp"
#include "iotassure/model.hpp"

namespace iotassure {

enum class IssueSeverity { Error, Warning };

std::string_view to_string(IssueSeverity s);
IssueSeverity issue_severity_from_string(std::string_view s);

struct ValidationIssue {
    IssueSeverity severity = IssueSeverity::Error;
    std::string code;
    std::string location; // "component:<id>/params/<param>", "flow:<id>", ...
    std::string message;

    auto operator<=>(const ValidationIssue&) const = default;
};

/// Structural checks. Errors: duplicate or colliding ids, dangling or
/// self-referencing flows, unknown parameter ids, malformed values.
/// Warnings: parameters set on a kind the matrix does not mark.
/// The result is sorted, so permuting the input lists does not change it.
std::vector<ValidationIssue> validate_model(const SystemModel& model,
                                            const ParameterCatalog& catalog = parameter_catalog());

bool has_errors(std::span<const ValidationIssue> issues);

std::string render_issues(const std::string& model_name, std::span<const ValidationIssue> issues,
                          OutputFormat format);
std::vector<ValidationIssue> parse_issues(std::string_view machine_text);

} // namespace iotassure
