#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iotassure/catalog.hpp"
#include "iotassure/completeness.hpp"
#include "iotassure/crypto.hpp"
#include "iotassure/errors.hpp"
#include "iotassure/planner.hpp"
#include "iotassure/threats.hpp"
#include "iotassure/validate.hpp"

namespace iotassure::cli {
namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommands{{
    {Command::Validate, "validate"},
    {Command::Coverage, "coverage"},
    {Command::Threats, "threats"},
    {Command::Analyze, "analyze"},
    {Command::Plan, "plan"},
    {Command::Report, "report"},
    {Command::Catalog, "catalog"},
}};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path, std::string_view what) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw UsageError(std::string(what) + " '" + path.string() + "' does not exist");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + std::string(what) + " '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Configuration {
    ParameterCatalog catalog = parameter_catalog();
    std::vector<ThreatRule> rules = default_ruleset();
    CryptoPolicy policy = default_policy();
};

Configuration load_configuration(const RunConfig& config) {
    Configuration c;
    if (config.catalog_path) {
        c.catalog = parse_catalog(read_file(*config.catalog_path, "catalog file"));
    }
    if (config.ruleset_path) {
        c.rules = parse_ruleset(read_file(*config.ruleset_path, "ruleset file"));
    }
    check_ruleset(c.rules, c.catalog);
    if (config.policy_path) {
        c.policy = parse_policy(read_file(*config.policy_path, "policy file"));
    }
    c.policy.validate();
    return c;
}

struct Output {
    std::string text;
    bool gated = false; // findings at or above the threshold
};

template <typename Findings>
bool any_at_or_above(const Findings& findings, Severity threshold) {
    return std::any_of(findings.begin(), findings.end(),
                       [&](const auto& f) { return f.severity >= threshold; });
}

std::string catalog_human(const Configuration& c) {
    std::ostringstream os;
    os << "Parameter catalog " << c.catalog.version() << " (" << c.catalog.table_parameter_count()
       << " matrix parameters, " << c.catalog.parameters().size() - c.catalog.table_parameter_count()
       << " extensions)\n";
    os << "  " << std::string(26, ' ');
    for (ComponentKind k : kCanonicalKinds) {
        std::string label(short_label(k));
        os << label << std::string(7 - label.size(), ' ');
    }
    os << "priority  observability\n";
    for (const ParameterDef& d : c.catalog.parameters()) {
        std::string id = d.id + (d.extension ? "*" : "");
        os << "  " << id << std::string(id.size() < 26 ? 26 - id.size() : 1, ' ');
        for (ComponentKind k : kCanonicalKinds) {
            os << (d.applicability.contains(k) ? "x      " : ".      ");
        }
        std::string prio(to_string(d.priority));
        os << prio << std::string(10 - prio.size(), ' ') << to_string(d.observability) << "\n";
    }
    os << "  (* extension parameter)\n";
    os << "Alias kinds:";
    for (const auto& [from, to] : c.catalog.aliases()) {
        os << " " << to_string(from) << "->" << to_string(to);
    }
    os << "\nThreat rules:\n";
    for (const ThreatRule& r : c.rules) {
        os << "  " << r.id << " [" << to_string(r.severity) << "]";
        for (StrideCategory cat : r.categories) {
            os << " " << to_string(cat);
        }
        os << " - " << r.rationale << "\n";
    }
    os << "Crypto policy " << c.policy.version << ": minimum key length "
       << c.policy.min_key_length_bits << " bits\n";
    auto list = [&](std::string_view name, const std::vector<PolicyEntry>& v) {
        os << "  " << name << ":";
        for (const auto& e : v) {
            os << " '" << e.value << "'";
        }
        os << "\n";
    };
    list("deprecated protocols", c.policy.protocol_deny);
    list("broken primitives", c.policy.primitive_deny);
    list("warn", c.policy.warn);
    list("outdated software", c.policy.software_deny);
    return os.str();
}

Output run_command(const RunConfig& config, const Configuration& c, const SystemModel& model) {
    const OutputFormat fmt = config.format;
    switch (config.command) {
    case Command::Validate:
        return {render_issues(model.name, validate_model(model, c.catalog), fmt), false};
    case Command::Coverage:
        return {render_completeness(completeness_report(model, c.catalog), fmt), false};
    case Command::Threats: {
        const auto findings = enumerate_threats(model, c.rules, c.policy, c.catalog);
        return {render_threats(model.name, findings, fmt), any_at_or_above(findings, config.fail_on)};
    }
    case Command::Analyze: {
        const auto findings = analyze_crypto(model, c.policy);
        return {render_crypto_findings(model.name, findings, fmt),
                any_at_or_above(findings, config.fail_on)};
    }
    case Command::Plan:
        return {render_plan(compile_plan(model, config.phases, c.catalog), fmt), false};
    case Command::Report: {
        static constexpr std::array<std::pair<Command, std::string_view>, 5> kSections{{
            {Command::Validate, "validation"},
            {Command::Coverage, "coverage"},
            {Command::Threats, "threats"},
            {Command::Analyze, "analysis"},
            {Command::Plan, "plan"},
        }};
        Output out;
        json doc{{"model", model.name}};
        for (const auto& [cmd, key] : kSections) {
            RunConfig sub = config;
            sub.command = cmd;
            Output part = run_command(sub, c, model);
            out.gated = out.gated || part.gated;
            if (fmt == OutputFormat::Machine) {
                doc[std::string(key)] = json::parse(part.text);
            } else {
                out.text += part.text + "\n";
            }
        }
        if (fmt == OutputFormat::Machine) {
            out.text = doc.dump(2) + "\n";
        }
        return out;
    }
    case Command::Catalog: break;
    }
    return {};
}

} // namespace

std::string_view to_string(Command c) {
    for (const auto& [k, v] : kCommands) {
        if (k == c) {
            return v;
        }
    }
    return "?";
}

std::optional<Command> command_from_string(std::string_view s) {
    for (const auto& [k, v] : kCommands) {
        if (v == s) {
            return k;
        }
    }
    return std::nullopt;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const Configuration c = load_configuration(config);
        Output result;
        if (config.command == Command::Catalog) {
            if (config.format == OutputFormat::Machine) {
                json doc{{"catalog", json::parse(serialize_catalog(c.catalog))},
                         {"ruleset", json::parse(serialize_ruleset(c.rules))},
                         {"policy", json::parse(serialize_policy(c.policy))}};
                result.text = doc.dump(2) + "\n";
            } else {
                result.text = catalog_human(c);
            }
        } else {
            if (!config.model_path) {
                throw UsageError("command '" + std::string(to_string(config.command)) +
                                 "' needs --model <path>");
            }
            const std::string text = read_file(*config.model_path, "model file");
            ParseResult parsed = parse_model(text, config.parse_mode, c.catalog);
            for (const ParseDiagnostic& d : parsed.diagnostics) {
                err << config.model_path->string() << ": " << to_string(d.severity) << ": "
                    << (d.location.empty() ? "/" : d.location) << ": " << d.message << "\n";
            }
            if (!parsed.ok()) {
                err << "error: invalid model '" << config.model_path->string() << "'\n";
                return kExitInvalid;
            }
            SystemModel model = std::move(*parsed.model);
            if (config.knowledge) {
                model.knowledge_level = *config.knowledge;
            }
            result = run_command(config, c, model);
        }

        if (config.out_path) {
            std::ofstream file(*config.out_path, std::ios::binary | std::ios::trunc);
            if (!file || !(file << result.text)) {
                throw UsageError("cannot write '" + config.out_path->string() + "'");
            }
        } else {
            out << result.text;
        }
        return result.gated ? kExitFindings : kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << "\n";
    } catch (const UnsupportedPhaseError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitInvalid;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Model-driven security assurance for IoT/IIoT system models"};
    app.name("iotassure");

    std::string command;
    std::string model, format = "human", out_path, knowledge, ruleset, policy, catalog;
    std::string fail_on = "high", phases;
    bool lax = false;

    std::vector<std::string> command_names;
    for (const auto& [k, v] : kCommands) {
        command_names.emplace_back(v);
    }
    app.add_option("command", command, "validate | coverage | threats | analyze | plan | report | catalog")
        ->required()
        ->check(CLI::IsMember(command_names));
    app.add_option("--model", model, "System model file (JSON)");
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"machine", "human"}));
    app.add_option("--out", out_path, "Write the document to this file instead of stdout");
    app.add_flag("--lax", lax, "Downgrade unknown parameter ids to warnings");
    app.add_option("--knowledge", knowledge, "Override the model's knowledge level")
        ->check(CLI::IsMember({"black", "grey", "white"}));
    app.add_option("--ruleset", ruleset, "Threat ruleset file replacing the built-in rules");
    app.add_option("--policy", policy, "Crypto policy file replacing the built-in policy");
    app.add_option("--catalog", catalog, "Parameter catalog file replacing the built-in catalog");
    app.add_option("--fail-on", fail_on, "Exit 1 when a finding at or above this severity exists")
        ->check(CLI::IsMember({"high", "medium", "low"}));
    app.add_option("--phases", phases, "Comma-separated subset of recon,scan,access");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitInvalid;
    }

    RunConfig config;
    config.command = *command_from_string(command);
    if (!model.empty()) {
        config.model_path = model;
    }
    config.format = output_format_from_string(format);
    if (!out_path.empty()) {
        config.out_path = out_path;
    }
    config.parse_mode = lax ? ParseMode::Lax : ParseMode::Strict;
    if (!knowledge.empty()) {
        config.knowledge = knowledge_level_from_string(knowledge);
    }
    if (!ruleset.empty()) {
        config.ruleset_path = ruleset;
    }
    if (!policy.empty()) {
        config.policy_path = policy;
    }
    if (!catalog.empty()) {
        config.catalog_path = catalog;
    }
    config.fail_on = severity_from_string(fail_on);
    if (!phases.empty()) {
        config.phases.clear();
        std::stringstream ss(phases);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                const Phase p = phase_from_string(item);
                if (!is_automatable(p)) {
                    err << "error: phase '" << item
                        << "' is not supported; only recon, scan and access can be planned\n";
                    return kExitInvalid;
                }
                config.phases.push_back(p);
            } catch (const LookupError& e) {
                err << "usage error: " << e.what() << "\n";
                return kExitInvalid;
            }
        }
    }
    return run(config, out, err);
}

} // namespace iotassure::cli
