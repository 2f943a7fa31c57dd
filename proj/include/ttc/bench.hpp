#pragma once

// Scaling benchmark. Timed regions cover the solve only: instance generation,
// parsing and output are outside the clock, and one warm-up solve per
// (size, method) is discarded.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ttc/generator.hpp"
#include "ttc/model.hpp"
#include "ttc/spectral.hpp"

namespace ttc {

struct BenchRecord {
    std::size_t n = 0;
    Method method = Method::Classical;
    std::size_t repetitions = 0;
    double median_ms = 0.0;
    double p10_ms = 0.0;
    double p90_ms = 0.0;
    std::size_t iters_or_rounds = 0; // power iterations (spectral) or trading rounds (classical)
};

struct BenchConfig {
    std::vector<std::size_t> sizes;
    std::size_t repetitions = 5;
    std::vector<Method> methods{Method::Classical, Method::Spectral};
    std::uint64_t seed = 1;
    GeneratorModel model = GeneratorModel::Uniform;
    double theta = 0.0;
    SpectralOptions spectral;

    /// Throws std::invalid_argument on empty sizes/methods or repetitions < 3.
    void validate() const;
};

/// Linear interpolation between closest ranks; q in [0, 1].
double percentile(std::vector<double> samples, double q);

std::vector<BenchRecord> run_bench(const BenchConfig &config,
                                   const std::function<void(const BenchRecord &)> &on_record = {});

inline constexpr const char *kBenchCsvHeader = "n,method,median_ms,p10_ms,p90_ms,iters_or_rounds";

std::string to_csv_row(const BenchRecord &record);

/// Appends rows to an existing file (header written only for a new or
/// overwritten file). Truncates first when `overwrite` is set.
void write_bench_csv(const std::filesystem::path &path, std::span<const BenchRecord> records, bool overwrite);

/// Least-squares slope of log(median_ms) against log(n) for one method; NaN
/// when fewer than two sizes are available.
double fit_loglog_exponent(std::span<const BenchRecord> records, Method method);

/// Median times non-decreasing in n for every method present.
bool medians_monotone(std::span<const BenchRecord> records);

std::string format_bench_report(std::span<const BenchRecord> records);

/// Restricts the calling thread to the CPU it is currently on. Best effort;
/// returns false where unsupported.
bool pin_to_single_cpu();

} // namespace ttc
