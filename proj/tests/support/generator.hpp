#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "iotassure/catalog.hpp"
#include "iotassure/model.hpp"

namespace iotassure::testing {

struct GeneratorOptions {
    int max_components = 8;
    int max_flows = 10;
    double param_density = 0.5;
    // Allow parameters the matrix does not mark for the kind (warnings only).
    bool non_applicable = true;
    bool overrides = true;
};

class ModelGenerator {
public:
    explicit ModelGenerator(std::uint64_t seed, GeneratorOptions options = {})
        : rng_(seed), options_(options) {}

    /// A structurally valid model: unique ids, resolvable endpoints, values
    /// matching catalog shapes and units.
    SystemModel model();

    Component component(std::string id);
    DataFlow flow(std::string id, std::string source, std::string destination);
    ParameterValue value(const ParameterDef& def);
    std::string text(int max_len = 12);
    std::optional<bool> tristate();

    std::mt19937_64& rng() { return rng_; }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    template <typename C>
    void shuffle(C& c) {
        std::shuffle(c.begin(), c.end(), rng_);
    }

private:
    std::mt19937_64 rng_;
    GeneratorOptions options_;
};

} // namespace iotassure::testing
