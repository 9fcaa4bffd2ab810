#pragma once

#include <string_view>

namespace iotassure {

/// Shared by threat and crypto findings so one threshold gates both.
enum class Severity { Low, Medium, High };

enum class OutputFormat { Machine, Human };

enum class TargetType { Component, Flow };

std::string_view to_string(Severity s);
Severity severity_from_string(std::string_view s);

std::string_view to_string(OutputFormat f);
OutputFormat output_format_from_string(std::string_view s);

std::string_view to_string(TargetType t);
TargetType target_type_from_string(std::string_view s);

} // namespace iotassure
