#pragma once

// The two published worked examples, embedded with their printed
// intermediate values, and the golden check runner behind `ttc repro`.

#include <string>
#include <vector>

#include "ttc/model.hpp"
#include "ttc/spectral.hpp"

namespace ttc {

struct WorkedExample {
    std::string name;
    std::vector<std::vector<std::int64_t>> preferences; // 1-based, as printed
    std::vector<std::vector<double>> weights;           // exact
    std::vector<double> column_sums;                    // exact
    std::vector<std::vector<double>> normalized;        // printed to 8 decimals
    std::vector<double> singular_magnitudes;            // printed to 8 decimals
    std::vector<AgentIndex> pick_order;                 // 1-based
    std::vector<ObjectIndex> allocation;                // 1-based, by agent
    std::vector<Cycle> first_round_cycles;              // 1-based

    Instance instance() const;
};

const WorkedExample &worked_example_1();
const WorkedExample &worked_example_2();

inline constexpr double kNormalizedTolerance = 1e-8;
inline constexpr double kSingularTolerance = 1e-6;

struct GoldenCheck {
    std::string name;
    bool passed = false;
    std::string expected;
    std::string actual;
};

/// Runs every golden comparison for both examples with the given solver settings.
std::vector<GoldenCheck> run_golden_checks(const PowerIterationOptions &power = {});

/// "[3.5 2.25 1.75 2.5]" style, shortest round-trip formatting up to 8 decimals.
std::string format_vector(const std::vector<double> &values);

} // namespace ttc
