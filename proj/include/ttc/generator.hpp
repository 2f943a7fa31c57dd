#pragma once

// Seeded instance generation.
//
// Stream discipline: instance k of a batch draws from its own std::mt19937_64
// seeded with splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15). Bounded
// integers come from rejection sampling on the raw 64-bit output, so batches
// are bit-identical across standard libraries. The popularity model's shared
// quality vector uses stream index "count" (one past the last instance).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ttc/model.hpp"

namespace ttc {

enum class GeneratorModel { Uniform, Popularity };

std::string to_string(GeneratorModel model);
GeneratorModel parse_generator_model(const std::string &text);

struct GeneratorConfig {
    std::size_t n = 4;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    GeneratorModel model = GeneratorModel::Uniform;
    double theta = 0.0; // popularity concentration; 0 is uniform

    /// Throws std::invalid_argument on n == 0, count == 0 or theta < 0.
    void validate() const;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Generator for stream `index` of a batch seeded with `seed`.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [0, bound) by rejection; bound must be positive.
std::uint64_t uniform_below(std::mt19937_64 &engine, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits.
double uniform_unit(std::mt19937_64 &engine);

/// Fisher–Yates permutation of 0..n-1.
std::vector<ObjectIndex> random_permutation(std::mt19937_64 &engine, std::size_t n);

/// Instances labelled "<model>-n<n>-s<seed>-<index>", each carrying the batch seed.
std::vector<Instance> generate(const GeneratorConfig &config);

} // namespace ttc
