#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iotassure/catalog.hpp"
#include "iotassure/model.hpp"
#include "iotassure/validate.hpp"

namespace iotassure {

inline constexpr std::string_view kSchemaVersion = "1";

/// Strict turns unknown parameter ids into errors; Lax downgrades them to
/// warnings and drops the value.
enum class ParseMode { Strict, Lax };

struct ParseDiagnostic {
    IssueSeverity severity = IssueSeverity::Error;
    std::string location; // JSON pointer, "line:col", or a validation location
    std::string message;

    bool operator==(const ParseDiagnostic&) const = default;
};

struct ParseResult {
    std::optional<SystemModel> model; // empty iff any diagnostic is an error
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

/// Never throws on bad input. A returned model is canonical (lists sorted
/// by id) and passes validate_model without errors.
ParseResult parse_model(std::string_view text, ParseMode mode = ParseMode::Strict,
                        const ParameterCatalog& catalog = parameter_catalog());

/// Canonical document: sorted keys, components and flows sorted by id,
/// two-space indent, trailing newline. Unset optional fields are omitted.
std::string serialize_model(const SystemModel& model);

} // namespace iotassure
