#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "ttc/bench.hpp"
#include "ttc/io.hpp"

using namespace ttc;

TEST_CASE("percentile interpolates between ranks") {
    CHECK(percentile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(percentile({1.0, 2.0, 3.0, 4.0}, 0.5) == 2.5);
    CHECK(percentile({1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0}, 0.1) == 2.0);
    CHECK(percentile({5.0}, 0.9) == 5.0);
    CHECK_THROWS_AS(percentile({}, 0.5), std::invalid_argument);
}

TEST_CASE("single size, single method, three repetitions gives one record") {
    BenchConfig config;
    config.sizes = {20};
    config.repetitions = 3;
    config.methods = {Method::Spectral};
    auto records = run_bench(config);
    REQUIRE(records.size() == 1);
    CHECK(records[0].n == 20);
    CHECK(records[0].repetitions == 3);
    CHECK(records[0].median_ms > 0.0);
    CHECK(records[0].p10_ms <= records[0].median_ms);
    CHECK(records[0].median_ms <= records[0].p90_ms);
    CHECK(records[0].iters_or_rounds > 0);
    CHECK(records[0].iters_or_rounds < config.spectral.power.max_iter);
}

TEST_CASE("bench config validation") {
    BenchConfig config;
    CHECK_THROWS_AS(run_bench(config), std::invalid_argument);
    config.sizes = {10};
    config.repetitions = 2;
    CHECK_THROWS_AS(run_bench(config), std::invalid_argument);
    config.repetitions = 3;
    config.methods.clear();
    CHECK_THROWS_AS(run_bench(config), std::invalid_argument);
}

TEST_CASE("log-log fit recovers a known exponent") {
    std::vector<BenchRecord> records;
    for (std::size_t n : {100, 200, 400, 800}) {
        BenchRecord r;
        r.n = n;
        r.method = Method::Spectral;
        r.median_ms = 3e-5 * std::pow(double(n), 2.0);
        records.push_back(r);
    }
    CHECK(fit_loglog_exponent(records, Method::Spectral) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isnan(fit_loglog_exponent(records, Method::Classical)));
    CHECK(medians_monotone(records));
    records[2].median_ms = 0.0001;
    CHECK_FALSE(medians_monotone(records));
    CHECK(format_bench_report(records).find("empirical exponent (spectral)") != std::string::npos);
}

TEST_CASE("CSV appends unless told to overwrite") {
    const auto path = std::filesystem::temp_directory_path() / "ttc_bench_test.csv";
    std::filesystem::remove(path);
    BenchRecord r{100, Method::Classical, 5, 1.5, 1.0, 2.0, 7};
    write_bench_csv(path, std::vector<BenchRecord>{r}, false);
    write_bench_csv(path, std::vector<BenchRecord>{r}, false);
    const std::string twice = read_text_file(path);
    CHECK(twice == std::string(kBenchCsvHeader) + "\n100,classical,1.500000,1.000000,2.000000,7\n"
                                                  "100,classical,1.500000,1.000000,2.000000,7\n");
    write_bench_csv(path, std::vector<BenchRecord>{r}, true);
    CHECK(read_text_file(path) == std::string(kBenchCsvHeader) + "\n100,classical,1.500000,1.000000,2.000000,7\n");
    std::filesystem::remove(path);
}
