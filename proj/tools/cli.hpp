#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "iotassure/ingest.hpp"
#include "iotassure/model.hpp"
#include "iotassure/phases.hpp"
#include "iotassure/types.hpp"

namespace iotassure::cli {

enum class Command { Validate, Coverage, Threats, Analyze, Plan, Report, Catalog };

std::string_view to_string(Command c);
std::optional<Command> command_from_string(std::string_view s);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1; // findings at or above the threshold
inline constexpr int kExitInvalid = 2;  // unreadable or invalid model, usage error

struct RunConfig {
    Command command = Command::Validate;
    std::optional<std::filesystem::path> model_path; // not needed for `catalog`
    OutputFormat format = OutputFormat::Human;
    std::optional<std::filesystem::path> out_path;
    ParseMode parse_mode = ParseMode::Strict;
    std::optional<KnowledgeLevel> knowledge;
    std::optional<std::filesystem::path> ruleset_path;
    std::optional<std::filesystem::path> policy_path;
    std::optional<std::filesystem::path> catalog_path;
    Severity fail_on = Severity::High;
    std::vector<Phase> phases{kAutomatablePhases.begin(), kAutomatablePhases.end()};
};

/// Runs one command. Documents go to `out` (or out_path), diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace iotassure::cli
