#include <benchmark/benchmark.h>

#include <vector>

#include "generator.hpp"
#include "iotassure/completeness.hpp"
#include "iotassure/crypto.hpp"
#include "iotassure/ingest.hpp"
#include "iotassure/planner.hpp"
#include "iotassure/threats.hpp"
#include "iotassure/validate.hpp"

namespace {

using namespace iotassure;

SystemModel sized_model(int components) {
    testing::ModelGenerator gen(static_cast<std::uint64_t>(components),
                                {.max_components = components, .max_flows = components * 2});
    SystemModel best;
    for (int i = 0; i < 16; ++i) {
        SystemModel m = gen.model();
        if (m.components.size() + m.flows.size() > best.components.size() + best.flows.size()) {
            best = std::move(m);
        }
    }
    return best;
}

void items(benchmark::State& state, const SystemModel& m) {
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(m.components.size() + m.flows.size()));
}

void BM_Serialize(benchmark::State& state) {
    const SystemModel m = sized_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serialize_model(m));
    }
    items(state, m);
}

void BM_Parse(benchmark::State& state) {
    const SystemModel m = sized_model(static_cast<int>(state.range(0)));
    const std::string text = serialize_model(m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_model(text));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}

void BM_Validate(benchmark::State& state) {
    const SystemModel m = sized_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(validate_model(m));
    }
    items(state, m);
}

void BM_Completeness(benchmark::State& state) {
    const SystemModel m = sized_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(completeness_report(m));
    }
    items(state, m);
}

void BM_Threats(benchmark::State& state) {
    const SystemModel m = sized_model(static_cast<int>(state.range(0)));
    const auto rules = default_ruleset();
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_threats(m, rules));
    }
    items(state, m);
}

void BM_Crypto(benchmark::State& state) {
    const SystemModel m = sized_model(static_cast<int>(state.range(0)));
    const CryptoPolicy policy = default_policy();
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze_crypto(m, policy));
    }
    items(state, m);
}

void BM_Plan(benchmark::State& state) {
    const SystemModel m = sized_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(compile_plan(m));
    }
    items(state, m);
}

BENCHMARK(BM_Serialize)->RangeMultiplier(8)->Range(8, 512);
BENCHMARK(BM_Parse)->RangeMultiplier(8)->Range(8, 512);
BENCHMARK(BM_Validate)->RangeMultiplier(8)->Range(8, 512);
BENCHMARK(BM_Completeness)->RangeMultiplier(8)->Range(8, 512);
BENCHMARK(BM_Threats)->RangeMultiplier(8)->Range(8, 512);
BENCHMARK(BM_Crypto)->RangeMultiplier(8)->Range(8, 512);
BENCHMARK(BM_Plan)->RangeMultiplier(8)->Range(8, 512);

} // namespace

BENCHMARK_MAIN();
