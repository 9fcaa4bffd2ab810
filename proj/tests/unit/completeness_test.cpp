#include <gtest/gtest.h>

#include <cmath>

#include "generator.hpp"
#include "iotassure/completeness.hpp"
#include "iotassure/errors.hpp"
#include "matrix_fixture.hpp"

namespace iotassure {
namespace {

std::size_t column(ComponentKind k) {
    const ComponentKind canonical = parameter_catalog().resolve(k);
    for (std::size_t i = 0; i < kCanonicalKinds.size(); ++i) {
        if (kCanonicalKinds[i] == canonical) {
            return i;
        }
    }
    return 0;
}

// Direct count against the fixture: |present| / |applicable|.
double oracle_score(ComponentKind kind, const ParameterMap& params) {
    int applicable = 0;
    int present = 0;
    for (const auto& row : testing::kApplicabilityMatrix) {
        if (row.cells[column(kind)] == 'x') {
            ++applicable;
            present += params.contains(row.param) ? 1 : 0;
        }
    }
    return applicable == 0 ? 1.0 : static_cast<double>(present) / applicable;
}

Component sensor(ParameterMap params = {}) {
    return Component{"s", "s", ComponentKind::SmartDeviceSensor, std::nullopt, std::move(params)};
}

TEST(Completeness, NothingSetScoresZero) {
    EXPECT_EQ(score_component(sensor()).score, 0.0);
}

TEST(Completeness, AllApplicableSetScoresOne) {
    testing::ModelGenerator gen(1);
    Component c = sensor();
    for (const ParameterDef* d : parameter_catalog().applicable_to(c.kind)) {
        c.params.emplace(d->id, gen.value(*d));
    }
    const auto cov = score_component(c);
    EXPECT_EQ(cov.applicable.size(), 19u);
    EXPECT_EQ(cov.score, 1.0);
    EXPECT_TRUE(cov.missing.empty());
}

TEST(Completeness, SingleParameterOnSensor) {
    const auto cov = score_component(sensor({{"ip_address", StringList{"10.0.0.1"}}}));
    EXPECT_EQ(cov.score, 1.0 / 19.0);
    EXPECT_NEAR(cov.score, 0.0526, 5e-5);
}

TEST(Completeness, ExtensionsDoNotCountTowardCoverage) {
    const auto cov = score_component(sensor({{"host_names", StringList{"h"}}}));
    EXPECT_EQ(cov.score, 0.0);
}

TEST(Completeness, FlowScoredAsNetworkProtocol) {
    DataFlow f;
    f.id = "f";
    f.source = "a";
    f.destination = "b";
    f.encryption = true;
    f.protocol_version = "TLS 1.3";
    const auto cov = score_flow(f);
    EXPECT_EQ(cov.target_type, TargetType::Flow);
    EXPECT_EQ(cov.applicable.size(), 12u);
    // connection_type is always present on a flow.
    EXPECT_EQ(cov.present.size(), 3u);
    EXPECT_EQ(cov.score, 3.0 / 12.0);
}

TEST(Completeness, ReadinessExamples) {
    SystemModel m;
    m.components.push_back(sensor({{"ip_address", StringList{"10.0.0.1"}},
                                   {"hardware_interface", StringList{"eth0"}}}));
    const auto recon = phase_readiness(m, Phase::Reconnaissance);
    ASSERT_EQ(recon.size(), 1u);
    EXPECT_EQ(recon[0].required.size(), 4u);
    EXPECT_EQ(recon[0].readiness, 0.5);

    m.components[0].params = {{"operating_system", std::string("Linux")},
                              {"software_versions", StringList{"nginx 1.25"}},
                              {"protocol_version", StringList{"TLS 1.3"}}};
    EXPECT_EQ(phase_readiness(m, Phase::GainingAccess)[0].readiness, 1.0);

    m.components[0].params.clear();
    for (Phase p : kAutomatablePhases) {
        EXPECT_EQ(phase_readiness(m, p)[0].readiness, 0.0);
    }
    EXPECT_THROW(phase_readiness(m, Phase::CoveringTracks), UnsupportedPhaseError);
}

TEST(Completeness, PhaseInputsResolveToCatalog) {
    for (Phase p : kAutomatablePhases) {
        for (const std::string& id : phase_inputs(p)) {
            EXPECT_TRUE(parameter_catalog().contains(id)) << id;
        }
    }
}

TEST(Completeness, MatchesFixtureOracleOnRandomComponents) {
    testing::ModelGenerator gen(31, {.non_applicable = true});
    for (int i = 0; i < 500; ++i) {
        const Component c = gen.component("c");
        const auto cov = score_component(c);
        EXPECT_EQ(cov.score, oracle_score(c.kind, c.params));
        EXPECT_EQ(cov.present.size() + cov.missing.size(), cov.applicable.size());
    }
}

TEST(Completeness, BoundsAndMonotonicity) {
    testing::ModelGenerator gen(32);
    for (int i = 0; i < 200; ++i) {
        SystemModel m = gen.model();
        const auto before = completeness_report(m);
        if (m.components.empty()) {
            EXPECT_EQ(before.overall_score, before.coverage.empty() ? 1.0 : before.overall_score);
            continue;
        }
        Component& c = m.components[static_cast<std::size_t>(gen.uniform(0, m.components.size() - 1))];
        const auto& defs = parameter_catalog().parameters();
        const ParameterDef& d = defs[static_cast<std::size_t>(gen.uniform(0, defs.size() - 1))];
        c.params.emplace(d.id, gen.value(d));
        const auto after = completeness_report(m);
        ASSERT_EQ(before.coverage.size(), after.coverage.size());
        for (std::size_t k = 0; k < before.coverage.size(); ++k) {
            EXPECT_GE(after.coverage[k].score, before.coverage[k].score);
            EXPECT_GE(after.coverage[k].score, 0.0);
            EXPECT_LE(after.coverage[k].score, 1.0);
        }
        for (std::size_t k = 0; k < before.readiness.size(); ++k) {
            EXPECT_GE(after.readiness[k].readiness, before.readiness[k].readiness);
        }
        EXPECT_GE(after.overall_score, before.overall_score);
        EXPECT_LE(after.overall_score, 1.0);
    }
}

TEST(Completeness, OverallIsApplicabilityWeightedMean) {
    testing::ModelGenerator gen(33);
    for (int i = 0; i < 100; ++i) {
        const auto r = completeness_report(gen.model());
        double num = 0;
        double den = 0;
        for (const auto& c : r.coverage) {
            num += c.score * static_cast<double>(c.applicable.size());
            den += static_cast<double>(c.applicable.size());
        }
        EXPECT_NEAR(r.overall_score, den == 0 ? 1.0 : num / den, 1e-12);
    }
}

TEST(Completeness, PrioritiesWeightTheScore) {
    std::vector<ParameterDef> defs = parameter_catalog().parameters();
    for (ParameterDef& d : defs) {
        if (d.id == "ip_address") {
            d.priority = Priority::High;
        } else if (d.id == "mac_address") {
            d.priority = Priority::Low;
        }
    }
    const ParameterCatalog cat("weighted", defs, parameter_catalog().aliases());
    // 17 Medium (2) + 1 High (3) + 1 Low (1) = 38.
    EXPECT_DOUBLE_EQ(score_component(sensor({{"ip_address", StringList{}}}), cat).score, 3.0 / 38.0);
    EXPECT_DOUBLE_EQ(score_component(sensor({{"mac_address", StringList{}}}), cat).score, 1.0 / 38.0);
}

TEST(Completeness, MachineRenderingReparses) {
    testing::ModelGenerator gen(34);
    for (int i = 0; i < 20; ++i) {
        const auto r = completeness_report(gen.model());
        EXPECT_EQ(parse_completeness(render_completeness(r, OutputFormat::Machine)), r);
    }
}

} // namespace
} // namespace iotassure
