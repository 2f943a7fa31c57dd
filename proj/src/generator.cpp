#include "ttc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ttc {

std::string to_string(GeneratorModel model) { return model == GeneratorModel::Uniform ? "uniform" : "popularity"; }

GeneratorModel parse_generator_model(const std::string &text) {
    if (text == "uniform") return GeneratorModel::Uniform;
    if (text == "popularity") return GeneratorModel::Popularity;
    throw std::invalid_argument("unknown generator model '" + text + "'");
}

void GeneratorConfig::validate() const {
    if (n == 0) throw std::invalid_argument("market size n must be at least 1");
    if (count == 0) throw std::invalid_argument("instance count must be at least 1");
    if (!(theta >= 0.0)) throw std::invalid_argument("theta must be non-negative");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL));
}

std::uint64_t uniform_below(std::mt19937_64 &engine, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    // Largest multiple of bound that fits; draws above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine();
    } while (x >= limit);
    return x % bound;
}

double uniform_unit(std::mt19937_64 &engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

std::vector<ObjectIndex> random_permutation(std::mt19937_64 &engine, std::size_t n) {
    std::vector<ObjectIndex> perm(n);
    std::iota(perm.begin(), perm.end(), ObjectIndex{0});
    for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[uniform_below(engine, i)]);
    }
    return perm;
}

namespace {

// Plackett–Luce draw: sort by log-weight plus Gumbel noise.
std::vector<ObjectIndex> popularity_ranking(std::mt19937_64 &engine, const std::vector<double> &log_weight) {
    const std::size_t n = log_weight.size();
    std::vector<double> key(n);
    for (std::size_t j = 0; j < n; ++j) {
        double u = uniform_unit(engine);
        while (u == 0.0) u = uniform_unit(engine);
        key[j] = log_weight[j] - std::log(-std::log(u));
    }
    std::vector<ObjectIndex> ranking(n);
    std::iota(ranking.begin(), ranking.end(), ObjectIndex{0});
    std::stable_sort(ranking.begin(), ranking.end(), [&](ObjectIndex a, ObjectIndex b) { return key[a] > key[b]; });
    return ranking;
}

} // namespace

std::vector<Instance> generate(const GeneratorConfig &config) {
    config.validate();
    const bool popularity = config.model == GeneratorModel::Popularity && config.theta > 0.0;

    std::vector<double> log_weight;
    if (popularity) {
        auto shared = stream_engine(config.seed, config.count);
        log_weight.resize(config.n);
        for (double &lw : log_weight) lw = config.theta * uniform_unit(shared);
    }

    std::vector<Instance> batch;
    batch.reserve(config.count);
    for (std::size_t k = 0; k < config.count; ++k) {
        auto engine = stream_engine(config.seed, k);
        std::vector<std::vector<ObjectIndex>> rankings;
        rankings.reserve(config.n);
        for (std::size_t i = 0; i < config.n; ++i) {
            rankings.push_back(popularity ? popularity_ranking(engine, log_weight) : random_permutation(engine, config.n));
        }
        std::string label = to_string(config.model) + "-n" + std::to_string(config.n) + "-s" +
                            std::to_string(config.seed) + "-" + std::to_string(k);
        batch.emplace_back(PreferenceProfile(std::move(rankings)), std::nullopt, std::move(label),
                           config.seed);
    }
    return batch;
}

} // namespace ttc
