#include <gtest/gtest.h>

#include <algorithm>

#include "generator.hpp"
#include "iotassure/ingest.hpp"

namespace iotassure {
namespace {

bool mentions(const ParseResult& r, std::string_view text) {
    return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const ParseDiagnostic& d) {
        return d.message.find(text) != std::string::npos;
    });
}

TEST(Ingest, MinimalDocument) {
    const auto r = parse_model(R"({"schema_version":"1","name":"m",
        "components":[{"id":"s","kind":"smart_device_sensor","params":{}}]})");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.model->components.size(), 1u);
    EXPECT_TRUE(r.model->flows.empty());
    EXPECT_EQ(r.model->components[0].name, "s");
    EXPECT_EQ(r.model->knowledge_level, KnowledgeLevel::WhiteBox);
}

TEST(Ingest, DanglingFlowNamesFlowId) {
    const auto r = parse_model(R"({"schema_version":"1","name":"m",
        "components":[{"id":"s","kind":"gateway"}],
        "flows":[{"id":"flow-77","source":"ghost","destination":"s","connection_type":"wired"}]})");
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(mentions(r, "flow-77"));
}

TEST(Ingest, UnknownKind) {
    const auto r = parse_model(R"({"schema_version":"1","name":"m",
        "components":[{"id":"q","kind":"Quantum"}]})");
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(mentions(r, "unknown component kind"));
}

TEST(Ingest, SchemaVersion) {
    EXPECT_TRUE(mentions(parse_model(R"({"schema_version":"2","name":"m"})"),
                         "unsupported schema version"));
    EXPECT_FALSE(parse_model(R"({"name":"m"})").ok());
}

TEST(Ingest, MalformedDocumentHasLocation) {
    const auto r = parse_model("{\n  \"name\": \"m\",\n  oops\n}");
    ASSERT_FALSE(r.ok());
    ASSERT_FALSE(r.diagnostics.empty());
    EXPECT_EQ(r.diagnostics[0].location.rfind("3:", 0), 0u) << r.diagnostics[0].location;
    EXPECT_TRUE(mentions(r, "malformed document"));
}

TEST(Ingest, UnknownTopLevelFieldIsWarning) {
    const auto r = parse_model(R"({"schema_version":"1","name":"m","future":{"x":1}})");
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].severity, IssueSeverity::Warning);
}

TEST(Ingest, UnknownParameterStrictVersusLax) {
    const std::string doc = R"({"schema_version":"1","name":"m",
        "components":[{"id":"s","kind":"gateway","params":{"ip_adress":["1.2.3.4"]}}]})";
    EXPECT_FALSE(parse_model(doc).ok());
    const auto lax = parse_model(doc, ParseMode::Lax);
    ASSERT_TRUE(lax.ok());
    EXPECT_TRUE(lax.model->components[0].params.empty());
    EXPECT_EQ(lax.diagnostics.size(), 1u);
}

TEST(Ingest, DuplicateParameterLastWriteWins) {
    const auto r = parse_model(R"({"schema_version":"1","name":"m",
        "components":[{"id":"s","kind":"gateway",
          "params":{"operating_system":"A","operating_system":"B"}}]})");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(std::get<std::string>(*r.model->components[0].find("operating_system")), "B");
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].severity, IssueSeverity::Warning);
}

TEST(Ingest, QuantityForms) {
    const auto r = parse_model(R"({"schema_version":"1","name":"m",
        "components":[{"id":"g","kind":"gateway","params":{
          "latency": 12.5, "bandwidth": {"value": 1000, "unit": "bit/s"}}}]})");
    ASSERT_TRUE(r.ok());
    const auto& p = r.model->components[0].params;
    EXPECT_EQ(std::get<Quantity>(p.at("latency")), (Quantity{12.5, "ms"}));
    EXPECT_EQ(std::get<Quantity>(p.at("bandwidth")), (Quantity{1000, "bit/s"}));
}

TEST(Ingest, RejectsWrongShapes) {
    EXPECT_FALSE(parse_model(R"({"schema_version":"1","name":"m",
        "components":[{"id":"g","kind":"gateway","params":{"ip_address":"1.2.3.4"}}]})").ok());
    EXPECT_FALSE(parse_model(R"({"schema_version":"1","name":"m",
        "components":[{"id":"a","kind":"gateway"},{"id":"b","kind":"gateway"}],
        "flows":[{"id":"f","source":"a","destination":"b","connection_type":"wired",
                  "key_length_bits":12.5}]})").ok());
    EXPECT_FALSE(parse_model(R"({"schema_version":"1","name":"m",
        "components":[{"id":"a","kind":"gateway"},{"id":"b","kind":"gateway"}],
        "flows":[{"id":"f","source":"a","destination":"b","connection_type":"carrier-pigeon"}]})")
                     .ok());
    EXPECT_FALSE(parse_model("[]").ok());
    EXPECT_FALSE(parse_model("").ok());
}

TEST(Ingest, EmptyModelSerialization) {
    SystemModel m;
    m.name = "empty";
    const std::string text = serialize_model(m);
    EXPECT_NE(text.find("\"components\": []"), std::string::npos);
    EXPECT_NE(text.find("\"flows\": []"), std::string::npos);
    const auto r = parse_model(text);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(*r.model, m);
}

TEST(Ingest, RoundTripRandomModels) {
    testing::ModelGenerator gen(21);
    for (int i = 0; i < 300; ++i) {
        const SystemModel m = gen.model();
        const std::string text = serialize_model(m);
        const auto r = parse_model(text);
        ASSERT_TRUE(r.ok()) << text;
        EXPECT_EQ(*r.model, canonicalize(m));
        EXPECT_EQ(serialize_model(*r.model), text);
    }
}

TEST(Ingest, SerializationIgnoresListOrder) {
    testing::ModelGenerator gen(22);
    for (int i = 0; i < 50; ++i) {
        SystemModel m = gen.model();
        const std::string a = serialize_model(m);
        gen.shuffle(m.components);
        gen.shuffle(m.flows);
        EXPECT_EQ(serialize_model(m), a);
    }
}

TEST(Ingest, ParserIsTotalOnMutatedInput) {
    testing::ModelGenerator gen(23);
    for (int i = 0; i < 300; ++i) {
        std::string text = serialize_model(gen.model());
        const int edits = gen.uniform(1, 6);
        for (int e = 0; e < edits && !text.empty(); ++e) {
            const auto pos = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(text.size()) - 1));
            switch (gen.uniform(0, 3)) {
            case 0: text.erase(pos, 1); break;
            case 1: text.insert(pos, 1, "{}[]\",:0a\\\xff"[gen.uniform(0, 11)]); break;
            case 2: text.resize(pos); break;
            default: text[pos] = static_cast<char>(gen.uniform(0, 255)); break;
            }
        }
        const ParseResult r = parse_model(text);
        EXPECT_EQ(r.ok(), std::none_of(r.diagnostics.begin(), r.diagnostics.end(),
                                       [](const ParseDiagnostic& d) {
                                           return d.severity == IssueSeverity::Error;
                                       }));
        if (!r.ok()) {
            EXPECT_FALSE(r.diagnostics.empty());
        }
    }
}

TEST(Ingest, DeepNestingIsRejectedNotCrashing) {
    std::string text = R"({"schema_version":"1","name":"m","x":)";
    text += std::string(100000, '[');
    EXPECT_FALSE(parse_model(text).ok());
}

} // namespace
} // namespace iotassure
