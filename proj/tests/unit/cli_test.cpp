#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "iotassure/completeness.hpp"
#include "iotassure/crypto.hpp"
#include "iotassure/planner.hpp"
#include "iotassure/threats.hpp"
#include "iotassure/validate.hpp"

namespace iotassure {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures{IOTASSURE_FIXTURE_DIR};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "iotassure");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(std::string_view name) {
    return (kFixtures / name).string();
}

TEST(Cli, ValidateOnValidModel) {
    const auto r = invoke({"validate", "--model", fixture("valid.json")});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
}

TEST(Cli, ThreatExitCodes) {
    EXPECT_EQ(invoke({"threats", "--model", fixture("valid.json")}).code, cli::kExitOk);
    EXPECT_EQ(invoke({"threats", "--model", fixture("finding.json")}).code, cli::kExitFindings);
    const auto bad = invoke({"threats", "--model", fixture("invalid.json")});
    EXPECT_EQ(bad.code, cli::kExitInvalid);
    EXPECT_NE(bad.err.find("f-ghost"), std::string::npos);
}

TEST(Cli, ThresholdGatesBothAnalyses) {
    // three_components has Medium-only findings on components and High on f1.
    EXPECT_EQ(invoke({"analyze", "--model", fixture("finding.json"), "--fail-on", "high"}).code,
              cli::kExitFindings);
    EXPECT_EQ(invoke({"threats", "--model", fixture("valid.json"), "--fail-on", "low"}).code,
              cli::kExitOk);
}

TEST(Cli, MalformedDocument) {
    const fs::path tmp = fs::temp_directory_path() / "iotassure_cli_malformed.json";
    std::ofstream(tmp) << "{ \"schema_version\": \"1\", ";
    const auto r = invoke({"plan", "--model", tmp.string()});
    EXPECT_EQ(r.code, cli::kExitInvalid);
    EXPECT_FALSE(r.err.empty());
    fs::remove(tmp);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"plan"}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"plan", "--model", fixture("missing.json")}).code, cli::kExitInvalid);
    EXPECT_EQ(invoke({"plan", "--model", fixture("valid.json"), "--format", "xml"}).code,
              cli::kExitInvalid);
    EXPECT_EQ(invoke({"plan", "--model", fixture("valid.json"), "--phases", "recon,cover"}).code,
              cli::kExitInvalid);
    EXPECT_EQ(invoke({"threats", "--model", fixture("valid.json"), "--ruleset",
                      fixture("nope.json")})
                  .code,
              cli::kExitInvalid);
    EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}

TEST(Cli, MachineOutputsReparse) {
    const std::string model = fixture("finding.json");
    const auto m = [&](std::string cmd) {
        return invoke({cmd, "--model", model, "--format", "machine"}).out;
    };
    EXPECT_NO_THROW(parse_issues(m("validate")));
    EXPECT_NO_THROW(parse_completeness(m("coverage")));
    EXPECT_FALSE(parse_threats(m("threats")).empty());
    EXPECT_EQ(parse_crypto_findings(m("analyze")).size(), 3u);
    EXPECT_NO_THROW(parse_plan(m("plan")));
    EXPECT_NO_THROW(nlohmann::json::parse(m("report")));
    EXPECT_EQ(m("report"), m("report"));
}

TEST(Cli, ReportEqualsIndividualCommands) {
    for (auto name : {"valid.json", "finding.json", "three_components.json"}) {
        const std::string model = fixture(name);
        const auto run = [&](std::string cmd) {
            return nlohmann::json::parse(invoke({cmd, "--model", model, "--format", "machine"}).out);
        };
        const auto report = run("report");
        EXPECT_EQ(report.at("validation"), run("validate"));
        EXPECT_EQ(report.at("coverage"), run("coverage"));
        EXPECT_EQ(report.at("threats"), run("threats"));
        EXPECT_EQ(report.at("analysis"), run("analyze"));
        EXPECT_EQ(report.at("plan"), run("plan"));
    }
}

TEST(Cli, KnowledgeOverrideAndPhases) {
    const auto r = invoke({"plan", "--model", fixture("valid.json"), "--format", "machine",
                           "--knowledge", "black", "--phases", "recon"});
    ASSERT_EQ(r.code, cli::kExitOk);
    const TestPlan p = parse_plan(r.out);
    EXPECT_EQ(p.knowledge_level, KnowledgeLevel::BlackBox);
    EXPECT_EQ(p.phases, std::vector<Phase>{Phase::Reconnaissance});
    EXPECT_TRUE(p.tasks.empty());
}

TEST(Cli, OutFileAndCatalogExport) {
    const fs::path tmp = fs::temp_directory_path() / "iotassure_cli_catalog.json";
    const auto r = invoke({"catalog", "--format", "machine", "--out", tmp.string()});
    ASSERT_EQ(r.code, cli::kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(tmp);
    const auto doc = nlohmann::json::parse(in);
    EXPECT_EQ(parse_catalog(doc.at("catalog").dump()), parameter_catalog());
    EXPECT_EQ(parse_ruleset(doc.at("ruleset").dump()), default_ruleset());
    EXPECT_EQ(parse_policy(doc.at("policy").dump()), default_policy());
    fs::remove(tmp);
    EXPECT_EQ(invoke({"catalog"}).code, cli::kExitOk);
}

TEST(Cli, OverrideFiles) {
    const fs::path policy = fs::temp_directory_path() / "iotassure_cli_policy.json";
    std::ofstream(policy) << R"({"version":"lenient","protocol_deny":[],"primitive_deny":[],
        "warn":[],"min_key_length_bits":64})";
    EXPECT_EQ(invoke({"analyze", "--model", fixture("finding.json"), "--policy", policy.string()})
                  .code,
              cli::kExitOk);
    std::ofstream(policy) << "{ broken";
    EXPECT_EQ(invoke({"analyze", "--model", fixture("finding.json"), "--policy", policy.string()})
                  .code,
              cli::kExitInvalid);
    fs::remove(policy);

    const fs::path rules = fs::temp_directory_path() / "iotassure_cli_rules.json";
    std::ofstream(rules) << R"({"rules":[]})";
    EXPECT_EQ(invoke({"threats", "--model", fixture("finding.json"), "--ruleset", rules.string()})
                  .code,
              cli::kExitOk);
    fs::remove(rules);
}

TEST(Cli, LaxModeAcceptsUnknownParameters) {
    const fs::path tmp = fs::temp_directory_path() / "iotassure_cli_lax.json";
    std::ofstream(tmp) << R"({"schema_version":"1","name":"x",
        "components":[{"id":"a","kind":"gateway","params":{"future_param":1}}]})";
    EXPECT_EQ(invoke({"validate", "--model", tmp.string()}).code, cli::kExitInvalid);
    const auto lax = invoke({"validate", "--model", tmp.string(), "--lax"});
    EXPECT_EQ(lax.code, cli::kExitOk);
    EXPECT_NE(lax.err.find("future_param"), std::string::npos);
    fs::remove(tmp);
}

} // namespace
} // namespace iotassure
