#include "ttc/audit.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ttc/classical.hpp"
#include "ttc/io.hpp"
#include "ttc/parallel.hpp"

namespace ttc {

TooLarge::TooLarge(std::size_t n, std::size_t max_n)
    : std::invalid_argument("market of size " + std::to_string(n) + " exceeds exhaustive bound " +
                            std::to_string(max_n)),
      n_(n) {}

Allocation solve(const Instance &instance, Method method, const SpectralOptions &spectral) {
    return method == Method::Classical ? solve_classical(instance) : solve_spectral(instance, spectral);
}

std::vector<Rank> received_ranks(const PreferenceProfile &profile, const Allocation &allocation) {
    std::vector<Rank> ranks(allocation.size());
    for (AgentIndex i = 0; i < allocation.size(); ++i) ranks[i] = profile.rank_of(i, allocation.assignment[i]);
    return ranks;
}

bool check_individual_rationality(const Instance &instance, const Allocation &allocation) {
    const auto &profile = instance.profile;
    for (AgentIndex i = 0; i < profile.size(); ++i) {
        if (profile.rank_of(i, allocation.assignment.at(i)) > profile.rank_of(i, instance.endowment.owned_by(i))) {
            return false;
        }
    }
    return true;
}

bool check_pareto_efficiency(const Instance &instance, const Allocation &allocation, std::size_t max_n) {
    const auto &profile = instance.profile;
    const std::size_t n = profile.size();
    if (n > max_n) throw TooLarge(n, max_n);
    const std::vector<Rank> current = received_ranks(profile, allocation);

    std::vector<ObjectIndex> candidate(n);
    std::iota(candidate.begin(), candidate.end(), ObjectIndex{0});
    do {
        bool weakly_better = true;
        bool strictly_better = false;
        for (AgentIndex i = 0; i < n && weakly_better; ++i) {
            Rank r = profile.rank_unchecked(i, candidate[i]);
            weakly_better = r <= current[i];
            strictly_better = strictly_better || r < current[i];
        }
        if (weakly_better && strictly_better) return false;
    } while (std::next_permutation(candidate.begin(), candidate.end()));
    return true;
}

std::size_t probe_strategy_proofness(const Instance &instance, Method method, std::size_t max_n,
                                     const SpectralOptions &spectral) {
    const auto &profile = instance.profile;
    const std::size_t n = profile.size();
    if (n > max_n) throw TooLarge(n, max_n);
    const Allocation truthful = solve(instance, method, spectral);

    std::size_t violations = 0;
    for (AgentIndex agent = 0; agent < n; ++agent) {
        const Rank truthful_rank = profile.rank_of(agent, truthful.assignment[agent]);
        std::vector<ObjectIndex> report(n);
        std::iota(report.begin(), report.end(), ObjectIndex{0});
        do {
            Instance deviated(profile.with_ranking(agent, report), instance.endowment, instance.label, instance.seed);
            const Allocation outcome = solve(deviated, method, spectral);
            if (profile.rank_of(agent, outcome.assignment[agent]) < truthful_rank) ++violations;
        } while (std::next_permutation(report.begin(), report.end()));
    }
    return violations;
}

namespace {

AuditReport audit_one(const Instance &instance, std::size_t index, const AuditOptions &options) {
    AuditReport report;
    report.index = index;
    report.label = instance.label;
    report.seed = instance.seed;
    report.n = instance.size();

    const Allocation classical = solve_classical(instance);
    const Allocation spectral = solve_spectral(instance, options.spectral);
    report.agreement = classical.same_assignment(spectral);
    report.ir_classical = check_individual_rationality(instance, classical);
    report.ir_spectral = check_individual_rationality(instance, spectral);
    report.classical_ranks = received_ranks(instance.profile, classical);
    report.spectral_ranks = received_ranks(instance.profile, spectral);

    if (options.pareto && report.n <= options.pareto_max_n) {
        report.pareto_classical = check_pareto_efficiency(instance, classical, options.pareto_max_n);
        report.pareto_spectral = check_pareto_efficiency(instance, spectral, options.pareto_max_n);
    }
    if (options.misreport && report.n <= options.misreport_max_n) {
        report.misreport_classical =
            probe_strategy_proofness(instance, Method::Classical, options.misreport_max_n, options.spectral);
        report.misreport_spectral =
            probe_strategy_proofness(instance, Method::Spectral, options.misreport_max_n, options.spectral);
    }
    return report;
}

} // namespace

ComparisonReport compare_methods(std::span<const Instance> batch, const AuditOptions &options) {
    if (batch.empty()) throw std::invalid_argument("comparison batch is empty");

    ComparisonReport out;
    out.reports.resize(batch.size());
    parallel_for(batch.size(), options.threads,
                 [&](std::size_t k) { out.reports[k] = audit_one(batch[k], k, options); });

    ComparisonSummary &s = out.summary;
    s.instances = batch.size();
    std::size_t agents = 0;
    double rank_sum_classical = 0.0;
    double rank_sum_spectral = 0.0;
    for (const AuditReport &r : out.reports) {
        if (r.agreement) {
            ++s.agreements;
        } else if (!s.first_disagreement) {
            s.first_disagreement = r.index;
        }
        if (!r.ir_classical) ++s.ir_failures_classical;
        if (!r.ir_spectral) {
            ++s.ir_failures_spectral;
            if (!s.first_spectral_ir_failure) s.first_spectral_ir_failure = r.index;
        }
        if (r.pareto_classical) {
            ++s.pareto_checked;
            if (!*r.pareto_classical) ++s.pareto_failures_classical;
            if (!*r.pareto_spectral) ++s.pareto_failures_spectral;
        }
        if (r.misreport_classical) {
            ++s.misreport_checked;
            s.misreport_violations_classical += *r.misreport_classical;
            s.misreport_violations_spectral += *r.misreport_spectral;
        }
        for (std::size_t i = 0; i < r.n; ++i) {
            rank_sum_classical += static_cast<double>(r.classical_ranks[i]);
            rank_sum_spectral += static_cast<double>(r.spectral_ranks[i]);
            ++s.rank_delta_histogram[static_cast<long>(r.spectral_ranks[i]) - static_cast<long>(r.classical_ranks[i])];
        }
        agents += r.n;
    }
    s.agreement_rate = static_cast<double>(s.agreements) / static_cast<double>(s.instances);
    s.mean_rank_classical = rank_sum_classical / static_cast<double>(agents);
    s.mean_rank_spectral = rank_sum_spectral / static_cast<double>(agents);
    return out;
}

std::string to_json_line(const AuditReport &report) {
    using nlohmann::ordered_json;
    auto optional_value = [](const auto &value) -> ordered_json {
        if (value) return ordered_json(*value);
        return nullptr;
    };
    ordered_json doc;
    doc["index"] = report.index;
    doc["label"] = report.label;
    doc["seed"] = optional_value(report.seed);
    doc["n"] = report.n;
    doc["agreement"] = report.agreement;
    doc["individually_rational"] = {{"classical", report.ir_classical}, {"spectral", report.ir_spectral}};
    doc["pareto_efficient"] = {{"classical", optional_value(report.pareto_classical)},
                               {"spectral", optional_value(report.pareto_spectral)}};
    doc["misreport_violations"] = {{"classical", optional_value(report.misreport_classical)},
                                   {"spectral", optional_value(report.misreport_spectral)}};
    doc["ranks"] = {{"classical", report.classical_ranks}, {"spectral", report.spectral_ranks}};
    return doc.dump();
}

std::string to_json_lines(const ComparisonReport &report) {
    std::string out;
    for (const AuditReport &r : report.reports) {
        out += to_json_line(r);
        out += '\n';
    }
    return out;
}

std::string format_summary(const ComparisonSummary &s) {
    std::ostringstream out;
    char buffer[64];
    auto row = [&](const std::string &name, const std::string &value) {
        std::snprintf(buffer, sizeof buffer, "%-36s", name.c_str());
        out << buffer << value << '\n';
    };
    auto rate = [&](double value) {
        std::snprintf(buffer, sizeof buffer, "%.8f", value);
        return std::string(buffer);
    };
    row("instances", std::to_string(s.instances));
    row("agreement rate", rate(s.agreement_rate) + " (" + std::to_string(s.agreements) + "/" +
                              std::to_string(s.instances) + ")");
    row("IR failures (classical)", std::to_string(s.ir_failures_classical));
    row("IR failures (spectral)", std::to_string(s.ir_failures_spectral));
    if (s.pareto_checked > 0) {
        row("Pareto-checked instances", std::to_string(s.pareto_checked));
        row("Pareto failures (classical)", std::to_string(s.pareto_failures_classical));
        row("Pareto failures (spectral)", std::to_string(s.pareto_failures_spectral));
    }
    if (s.misreport_checked > 0) {
        row("misreport-probed instances", std::to_string(s.misreport_checked));
        row("profitable misreports (classical)", std::to_string(s.misreport_violations_classical));
        row("profitable misreports (spectral)", std::to_string(s.misreport_violations_spectral));
    }
    row("mean received rank (classical)", rate(s.mean_rank_classical));
    row("mean received rank (spectral)", rate(s.mean_rank_spectral));
    std::string deltas;
    for (const auto &[delta, count] : s.rank_delta_histogram) {
        if (!deltas.empty()) deltas += ' ';
        deltas += (delta > 0 ? "+" : "") + std::to_string(delta) + ":" + std::to_string(count);
    }
    row("rank delta spectral-classical", deltas);
    if (s.first_disagreement) row("first disagreement (index)", std::to_string(*s.first_disagreement));
    if (s.first_spectral_ir_failure) row("first spectral IR failure (index)", std::to_string(*s.first_spectral_ir_failure));
    return out.str();
}

std::vector<std::filesystem::path> persist_counterexamples(const ComparisonReport &report,
                                                           std::span<const Instance> batch,
                                                           const std::filesystem::path &dir,
                                                           const std::string &prefix) {
    std::vector<std::filesystem::path> written;
    auto dump = [&](const std::optional<std::size_t> &index, const std::string &kind) {
        if (!index) return;
        std::filesystem::create_directories(dir);
        auto path = dir / (prefix + "-" + kind + ".json");
        write_text_file(path, serialize_instance(batch[*index]));
        written.push_back(path);
    };
    dump(report.summary.first_disagreement, "disagreement");
    dump(report.summary.first_spectral_ir_failure, "spectral-ir");
    return written;
}

} // namespace ttc
