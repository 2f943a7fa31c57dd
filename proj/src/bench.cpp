#include "ttc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#if defined(__linux__)
#include <sched.h>
#endif

#include "ttc/classical.hpp"

namespace ttc {

void BenchConfig::validate() const {
    if (sizes.empty()) throw std::invalid_argument("benchmark needs at least one size");
    if (methods.empty()) throw std::invalid_argument("benchmark needs at least one method");
    if (repetitions < 3) throw std::invalid_argument("benchmark needs at least 3 repetitions");
    for (std::size_t n : sizes) {
        if (n == 0) throw std::invalid_argument("benchmark sizes must be positive");
    }
}

double percentile(std::vector<double> samples, double q) {
    if (samples.empty()) throw std::invalid_argument("percentile of empty sample");
    std::sort(samples.begin(), samples.end());
    const double pos = q * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    return samples[lo] + (samples[hi] - samples[lo]) * (pos - static_cast<double>(lo));
}

namespace {

// Returns rounds or iterations so the work cannot be optimised away.
std::size_t timed_solve(const Instance &instance, Method method, const SpectralOptions &spectral) {
    if (method == Method::Classical) return solve_classical(instance).rounds.size();
    WeightMatrix weights = build_weight_matrix(instance.profile);
    OrderingVector ordering = leading_singular_vector(weights.w, spectral.power);
    Allocation allocation = serial_dictatorship(instance.profile, pick_order(ordering.coefficients));
    return allocation.picks.empty() ? 0 : ordering.iterations;
}

} // namespace

std::vector<BenchRecord> run_bench(const BenchConfig &config, const std::function<void(const BenchRecord &)> &on_record) {
    config.validate();
    using clock = std::chrono::steady_clock;
    std::vector<BenchRecord> records;
    for (std::size_t n : config.sizes) {
        GeneratorConfig gen{n, 1, config.seed, config.model, config.theta};
        const Instance instance = generate(gen).front();
        for (Method method : config.methods) {
            BenchRecord record;
            record.n = n;
            record.method = method;
            record.repetitions = config.repetitions;
            record.iters_or_rounds = timed_solve(instance, method, config.spectral); // warm-up
            std::vector<double> samples;
            samples.reserve(config.repetitions);
            for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
                auto start = clock::now();
                record.iters_or_rounds = timed_solve(instance, method, config.spectral);
                auto elapsed = std::chrono::duration<double, std::milli>(clock::now() - start).count();
                samples.push_back(std::max(elapsed, 1e-6));
            }
            record.median_ms = percentile(samples, 0.5);
            record.p10_ms = percentile(samples, 0.1);
            record.p90_ms = percentile(samples, 0.9);
            if (on_record) on_record(record);
            records.push_back(record);
        }
    }
    return records;
}

std::string to_csv_row(const BenchRecord &r) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, "%zu,%s,%.6f,%.6f,%.6f,%zu", r.n, to_string(r.method).c_str(), r.median_ms,
                  r.p10_ms, r.p90_ms, r.iters_or_rounds);
    return buffer;
}

void write_bench_csv(const std::filesystem::path &path, std::span<const BenchRecord> records, bool overwrite) {
    const bool fresh = overwrite || !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, fresh ? std::ios::trunc : std::ios::app);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    if (fresh) out << kBenchCsvHeader << '\n';
    for (const BenchRecord &r : records) out << to_csv_row(r) << '\n';
}

double fit_loglog_exponent(std::span<const BenchRecord> records, Method method) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (const BenchRecord &r : records) {
        if (r.method != method) continue;
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.median_ms);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double k = static_cast<double>(count);
    const double denom = k * sxx - sx * sx;
    if (count < 2 || denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (k * sxy - sx * sy) / denom;
}

bool medians_monotone(std::span<const BenchRecord> records) {
    std::map<Method, std::vector<const BenchRecord *>> by_method;
    for (const BenchRecord &r : records) by_method[r.method].push_back(&r);
    for (auto &[method, rows] : by_method) {
        std::stable_sort(rows.begin(), rows.end(), [](auto *a, auto *b) { return a->n < b->n; });
        for (std::size_t k = 1; k < rows.size(); ++k) {
            if (rows[k]->median_ms < rows[k - 1]->median_ms) return false;
        }
    }
    return true;
}

std::string format_bench_report(std::span<const BenchRecord> records) {
    std::ostringstream out;
    char buffer[160];
    std::snprintf(buffer, sizeof buffer, "%8s  %-10s %12s %12s %12s %8s\n", "n", "method", "median_ms", "p10_ms",
                  "p90_ms", "iters");
    out << buffer;
    for (const BenchRecord &r : records) {
        std::snprintf(buffer, sizeof buffer, "%8zu  %-10s %12.4f %12.4f %12.4f %8zu\n", r.n,
                      to_string(r.method).c_str(), r.median_ms, r.p10_ms, r.p90_ms, r.iters_or_rounds);
        out << buffer;
    }
    for (Method method : {Method::Classical, Method::Spectral}) {
        double slope = fit_loglog_exponent(records, method);
        if (std::isnan(slope)) continue;
        std::snprintf(buffer, sizeof buffer, "empirical exponent (%s): time ~ n^%.3f\n", to_string(method).c_str(),
                      slope);
        out << buffer;
    }
    return out.str();
}

bool pin_to_single_cpu() {
#if defined(__linux__)
    int cpu = sched_getcpu();
    if (cpu < 0) return false;
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(cpu, &set);
    return sched_setaffinity(0, sizeof set, &set) == 0;
#else
    return false;
#endif
}

} // namespace ttc
