#include "ttc/worked_examples.hpp"

#include <cmath>
#include <cstdio>

#include "ttc/classical.hpp"
#include "ttc/io.hpp"

namespace ttc {

namespace {

std::string format_number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.8f", value);
    std::string text(buffer);
    while (!text.empty() && text.back() == '0') text.pop_back();
    if (!text.empty() && text.back() == '.') text.pop_back();
    return text;
}

template <typename Int>
std::string format_ids(const std::vector<Int> &values) {
    std::string out = "[";
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(values[k]);
    }
    return out + "]";
}

std::string format_cycles(const std::vector<Cycle> &cycles) {
    std::string out = "{";
    for (std::size_t k = 0; k < cycles.size(); ++k) {
        if (k) out += ", ";
        out += format_ids(cycles[k]);
    }
    return out + "}";
}

std::string format_error(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2e", value);
    return buffer;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t> &ids) {
    std::vector<std::size_t> out(ids);
    for (auto &id : out) ++id;
    return out;
}

} // namespace

Instance WorkedExample::instance() const { return Instance(validate_profile(preferences), std::nullopt, name); }

const WorkedExample &worked_example_1() {
    static const WorkedExample example{
        "example1",
        {{1, 2, 3, 4}, {4, 1, 3, 2}, {2, 1, 4, 3}, {1, 4, 3, 2}},
        {{1.0, 0.75, 0.5, 0.25}, {0.75, 0.25, 0.5, 1.0}, {0.75, 1.0, 0.25, 0.5}, {1.0, 0.25, 0.5, 0.75}},
        {3.5, 2.25, 1.75, 2.5},
        {{0.28571429, 0.33333333, 0.28571429, 0.1},
         {0.21428571, 0.11111111, 0.28571429, 0.4},
         {0.21428571, 0.44444444, 0.14285714, 0.2},
         {0.28571429, 0.11111111, 0.28571429, 0.3}},
        {0.67952481, 0.43424211, 0.33978586, 0.48396838},
        {1, 4, 2, 3},
        {1, 3, 2, 4},
        {{1}},
    };
    return example;
}

const WorkedExample &worked_example_2() {
    static const WorkedExample example{
        "example2",
        {{1, 2, 3, 4, 5}, {5, 4, 1, 3, 2}, {2, 1, 5, 4, 3}, {1, 5, 4, 3, 2}, {2, 3, 5, 4, 1}},
        {{1.0, 0.8, 0.6, 0.4, 0.2},
         {0.6, 0.2, 0.4, 0.8, 1.0},
         {0.8, 1.0, 0.2, 0.4, 0.6},
         {1.0, 0.2, 0.4, 0.6, 0.8},
         {0.2, 1.0, 0.8, 0.4, 0.6}},
        {3.6, 3.2, 2.4, 2.6, 3.2},
        {{0.27777778, 0.25, 0.25, 0.15384615, 0.0625},
         {0.16666667, 0.0625, 0.16666667, 0.30769231, 0.3125},
         {0.22222222, 0.3125, 0.08333333, 0.15384615, 0.1875},
         {0.27777778, 0.0625, 0.16666667, 0.23076923, 0.25},
         {0.05555556, 0.3125, 0.33333333, 0.15384615, 0.1875}},
        {0.53588536, 0.47158305, 0.35029467, 0.38264279, 0.47044069},
        {1, 2, 5, 4, 3},
        {1, 5, 3, 4, 2},
        {{1}, {2, 5}},
    };
    return example;
}

std::string format_vector(const std::vector<double> &values) {
    std::string out = "[";
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ' ';
        out += format_number(values[k]);
    }
    return out + "]";
}

std::vector<GoldenCheck> run_golden_checks(const PowerIterationOptions &power) {
    std::vector<GoldenCheck> checks;
    for (const WorkedExample *example : {&worked_example_1(), &worked_example_2()}) {
        const Instance instance = example->instance();
        const std::string prefix = example->name + ": ";
        const std::size_t n = instance.size();

        SpectralOptions options;
        options.power = power;
        SpectralRun run;
        try {
            run = run_spectral(instance, options);
        } catch (const NoConvergence &e) {
            checks.push_back({prefix + "power iteration", false, "converged", e.what()});
            continue;
        }

        bool weights_exact = true;
        double normalized_error = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                weights_exact = weights_exact && run.weights.w(i, j) == example->weights[i][j];
                normalized_error = std::max(normalized_error, std::abs(run.normalized.m(i, j) - example->normalized[i][j]));
            }
        }
        checks.push_back({prefix + "weight matrix", weights_exact, "exact", weights_exact ? "exact" : "mismatch"});
        checks.push_back({prefix + "column sums", run.normalized.colsum == example->column_sums,
                          format_vector(example->column_sums), format_vector(run.normalized.colsum)});
        checks.push_back({prefix + "normalized matrix", normalized_error <= kNormalizedTolerance,
                          "max error <= " + format_error(kNormalizedTolerance),
                          "max error " + format_error(normalized_error)});

        std::vector<double> magnitudes;
        double singular_error = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            magnitudes.push_back(std::abs(run.ordering.coefficients[k]));
            singular_error = std::max(singular_error, std::abs(magnitudes[k] - example->singular_magnitudes[k]));
        }
        checks.push_back({prefix + "singular vector |V[0]|", singular_error <= kSingularTolerance,
                          format_vector(example->singular_magnitudes),
                          format_vector(magnitudes) + " (max error " + format_error(singular_error) + ")"});

        auto order = one_based(run.order);
        checks.push_back({prefix + "pick order", order == example->pick_order, format_ids(example->pick_order),
                          format_ids(order)});

        auto spectral = one_based(run.allocation.assignment);
        checks.push_back({prefix + "spectral allocation", spectral == example->allocation,
                          format_ids(example->allocation), format_ids(spectral)});

        const Allocation classical = solve_classical(instance);
        auto classical_ids = one_based(classical.assignment);
        checks.push_back({prefix + "classical allocation", classical_ids == example->allocation,
                          format_ids(example->allocation), format_ids(classical_ids)});

        std::vector<Cycle> first_round = classical.rounds.front().cycles;
        for (Cycle &cycle : first_round) cycle = one_based(cycle);
        checks.push_back({prefix + "classical round-1 cycles", first_round == example->first_round_cycles,
                          format_cycles(example->first_round_cycles), format_cycles(first_round)});
    }
    return checks;
}

} // namespace ttc
