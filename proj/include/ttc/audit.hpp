#pragma once

// Executable checks of the mechanism properties, plus batch comparison of the
// spectral pipeline against classical TTC.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttc/model.hpp"
#include "ttc/spectral.hpp"

namespace ttc {

/// An exhaustive check was asked for on a market beyond its size bound.
class TooLarge : public std::invalid_argument {
public:
    TooLarge(std::size_t n, std::size_t max_n);
    std::size_t n() const noexcept { return n_; }

private:
    std::size_t n_;
};

Allocation solve(const Instance &instance, Method method, const SpectralOptions &spectral = {});

/// Rank each agent gives to the object it received.
std::vector<Rank> received_ranks(const PreferenceProfile &profile, const Allocation &allocation);

/// True iff every agent weakly prefers its assignment to its endowment.
bool check_individual_rationality(const Instance &instance, const Allocation &allocation);

/// Exhaustive over all n! bijections: true iff none Pareto-dominates `allocation`.
bool check_pareto_efficiency(const Instance &instance, const Allocation &allocation, std::size_t max_n = 6);

/**
 * For every agent and every one of the n! rankings it could report, re-runs
 * `method` and counts reports under which the agent receives an object it
 * truly ranks strictly better than its truthful outcome.
 */
std::size_t probe_strategy_proofness(const Instance &instance, Method method, std::size_t max_n = 4,
                                     const SpectralOptions &spectral = {});

struct AuditOptions {
    SpectralOptions spectral;
    bool pareto = false;       // exhaustive check on instances with n <= pareto_max_n
    std::size_t pareto_max_n = 6;
    bool misreport = false;    // misreport probe on instances with n <= misreport_max_n
    std::size_t misreport_max_n = 4;
    std::size_t threads = 1;
};

struct AuditReport {
    std::size_t index = 0;
    std::string label;
    std::optional<std::uint64_t> seed;
    std::size_t n = 0;
    bool agreement = false;
    bool ir_classical = false;
    bool ir_spectral = false;
    std::optional<bool> pareto_classical;
    std::optional<bool> pareto_spectral;
    std::optional<std::size_t> misreport_classical;
    std::optional<std::size_t> misreport_spectral;
    std::vector<Rank> classical_ranks;
    std::vector<Rank> spectral_ranks;
};

struct ComparisonSummary {
    std::size_t instances = 0;
    std::size_t agreements = 0;
    double agreement_rate = 0.0;
    std::size_t ir_failures_classical = 0;
    std::size_t ir_failures_spectral = 0;
    std::size_t pareto_checked = 0;
    std::size_t pareto_failures_classical = 0;
    std::size_t pareto_failures_spectral = 0;
    std::size_t misreport_checked = 0;
    std::size_t misreport_violations_classical = 0;
    std::size_t misreport_violations_spectral = 0;
    double mean_rank_classical = 0.0;
    double mean_rank_spectral = 0.0;
    /// spectral rank minus classical rank, per agent, over the whole batch
    std::map<long, std::size_t> rank_delta_histogram;
    std::optional<std::size_t> first_disagreement;
    std::optional<std::size_t> first_spectral_ir_failure;
};

struct ComparisonReport {
    std::vector<AuditReport> reports; // in batch order
    ComparisonSummary summary;
};

/// Throws std::invalid_argument on an empty batch. Propagates NoConvergence.
ComparisonReport compare_methods(std::span<const Instance> batch, const AuditOptions &options = {});

/// One JSON object, no trailing newline; ids and ranks 1-based.
std::string to_json_line(const AuditReport &report);
std::string to_json_lines(const ComparisonReport &report);

std::string format_summary(const ComparisonSummary &summary);

/// Writes the first disagreement and the first spectral IR failure (when
/// present) as instance files into `dir`; returns the paths written.
std::vector<std::filesystem::path> persist_counterexamples(const ComparisonReport &report,
                                                           std::span<const Instance> batch,
                                                           const std::filesystem::path &dir,
                                                           const std::string &prefix = "counterexample");

} // namespace ttc
