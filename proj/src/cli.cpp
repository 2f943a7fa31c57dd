#include "ttc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "ttc/audit.hpp"
#include "ttc/bench.hpp"
#include "ttc/classical.hpp"
#include "ttc/generator.hpp"
#include "ttc/io.hpp"
#include "ttc/parallel.hpp"
#include "ttc/spectral.hpp"
#include "ttc/worked_examples.hpp"

namespace ttc::cli {

namespace fs = std::filesystem;

namespace {

/// Raised for command-line input problems detected after parsing.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverFlags {
    double tol = 1e-12;
    std::size_t max_iter = 10000;

    void add_to(CLI::App &app) {
        app.add_option("--tol", tol, "Power-iteration tolerance (max-norm step)")->check(CLI::PositiveNumber);
        app.add_option("--max-iter", max_iter, "Power-iteration sweep limit")->check(CLI::PositiveNumber);
    }
    SpectralOptions options() const {
        SpectralOptions spectral;
        spectral.power = {tol, max_iter};
        return spectral;
    }
};

struct BatchFlags {
    std::string in_dir;
    std::size_t n = 0;
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    std::string model = "uniform";
    double theta = 0.0;

    void add_to(CLI::App &app) {
        app.add_option("--in", in_dir, "Directory of instance files (.json/.csv)");
        app.add_option("--n", n, "Generate instances of this size instead of reading --in");
        app.add_option("--count", count, "Number of generated instances");
        app.add_option("--seed", seed, "Generator seed");
        app.add_option("--model", model, "Generator model")->check(CLI::IsMember({"uniform", "popularity"}));
        app.add_option("--theta", theta, "Popularity concentration (>= 0)");
    }

    std::vector<Instance> load() const {
        if (!in_dir.empty()) {
            if (!fs::is_directory(in_dir)) throw InputError("--in: not a directory: " + in_dir);
            std::vector<fs::path> files;
            for (const auto &entry : fs::directory_iterator(in_dir)) {
                auto ext = entry.path().extension();
                if (entry.is_regular_file() && (ext == ".json" || ext == ".csv")) files.push_back(entry.path());
            }
            std::sort(files.begin(), files.end());
            if (files.empty()) throw InputError("--in: no instance files in " + in_dir);
            std::vector<Instance> batch;
            for (const auto &file : files) {
                try {
                    batch.push_back(read_instance_file(file));
                } catch (const std::exception &e) {
                    throw InputError(file.string() + ": " + e.what());
                }
            }
            return batch;
        }
        if (n == 0) throw InputError("either --in DIR or --n N is required");
        GeneratorConfig config{n, count, seed, parse_generator_model(model), theta};
        config.validate();
        return generate(config);
    }
};

std::string padded_index(std::size_t index, std::size_t width) {
    std::string digits = std::to_string(index);
    return std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

int cmd_gen(std::size_t n, std::size_t count, std::uint64_t seed, const std::string &model, double theta,
            const std::string &out_dir, std::ostream &out) {
    GeneratorConfig config{n, count, seed, parse_generator_model(model), theta};
    config.validate();
    const auto batch = generate(config);
    fs::create_directories(out_dir);
    const std::size_t width = std::max<std::size_t>(4, std::to_string(count - 1).size());
    for (std::size_t k = 0; k < batch.size(); ++k) {
        write_text_file(fs::path(out_dir) / ("instance_" + padded_index(k, width) + ".json"),
                        serialize_instance(batch[k]));
    }
    out << "wrote " << batch.size() << " instance files to " << out_dir << '\n';
    return kOk;
}

int cmd_solve(const std::string &input, const std::string &method_name, const SolverFlags &solver,
              const std::string &out_path, bool verbose, std::ostream &out) {
    if (!fs::is_regular_file(input)) throw InputError("input file not found: " + input);
    Instance instance = read_instance_file(input);
    const Method method = parse_method(method_name);

    Allocation allocation;
    std::optional<SpectralRun> run;
    if (method == Method::Classical) {
        allocation = solve_classical(instance);
    } else {
        run = run_spectral(instance, solver.options());
        allocation = run->allocation;
    }

    out << format_assignment(allocation) << '\n';
    if (verbose) {
        if (method == Method::Classical) {
            for (std::size_t r = 0; r < allocation.rounds.size(); ++r) {
                out << "round " << r + 1 << ":";
                for (const Cycle &cycle : allocation.rounds[r].cycles) {
                    out << " (";
                    for (std::size_t k = 0; k < cycle.size(); ++k) out << (k ? " " : "") << cycle[k] + 1;
                    out << ")";
                }
                out << '\n';
            }
        } else {
            out << "column sums: " << format_vector(run->normalized.colsum) << '\n';
            out << "singular vector: " << format_vector(run->ordering.coefficients) << " (sigma "
                << run->ordering.singular_value << ", " << run->ordering.iterations << " iterations)\n";
            out << "pick order:";
            for (const Pick &pick : allocation.picks) out << ' ' << pick.agent + 1 << "→" << pick.object + 1;
            out << '\n';
        }
    }
    if (!out_path.empty()) write_text_file(out_path, serialize_allocation(allocation));
    return kOk;
}

int cmd_compare(const BatchFlags &batch_flags, const SolverFlags &solver, bool exhaustive, const std::string &out_path,
                const std::string &counterexample_dir, std::ostream &out) {
    const auto batch = batch_flags.load();
    AuditOptions options;
    options.spectral = solver.options();
    options.pareto = exhaustive;
    options.misreport = exhaustive;
    options.threads = thread_count_from_env();
    const ComparisonReport report = compare_methods(batch, options);

    if (!out_path.empty()) write_text_file(out_path, to_json_lines(report));
    out << format_summary(report.summary);
    if (!counterexample_dir.empty()) {
        for (const auto &path : persist_counterexamples(report, batch, counterexample_dir)) {
            out << "counterexample written: " << path.string() << '\n';
        }
    }

    if (!exhaustive) return kOk;
    const auto &s = report.summary;
    const bool classical_ok = s.ir_failures_classical == 0 && s.pareto_failures_classical == 0 &&
                              s.misreport_violations_classical == 0;
    const bool spectral_efficient = s.pareto_failures_spectral == 0;
    out << "classical TTC properties: " << (classical_ok ? "PASS" : "FAIL") << '\n';
    out << "spectral Pareto efficiency: " << (spectral_efficient ? "PASS" : "FAIL") << '\n';
    return classical_ok && spectral_efficient ? kOk : kCheckFailure;
}

int cmd_bench(const std::vector<std::size_t> &sizes, std::size_t reps, const std::vector<std::string> &methods,
              std::uint64_t seed, const std::string &model, double theta, const SolverFlags &solver,
              const std::string &out_path, bool overwrite, std::ostream &out) {
    BenchConfig config;
    config.sizes = sizes;
    config.repetitions = reps;
    config.methods.clear();
    for (const auto &name : methods) config.methods.push_back(parse_method(name));
    config.seed = seed;
    config.model = parse_generator_model(model);
    config.theta = theta;
    config.spectral = solver.options();
    config.validate();

    pin_to_single_cpu();
    const auto records = run_bench(config);
    out << format_bench_report(records);
    out << "medians monotone in n: " << (medians_monotone(records) ? "yes" : "no") << '\n';
    if (!out_path.empty()) {
        write_bench_csv(out_path, records, overwrite);
        out << "csv: " << out_path << '\n';
    }
    return kOk;
}

int cmd_repro(const SolverFlags &solver, bool fault_inject, std::ostream &out) {
    PowerIterationOptions power{fault_inject ? 1e-2 : solver.tol, solver.max_iter};
    if (fault_inject) out << "fault injection: solver tolerance degraded to 1e-2\n";
    const auto checks = run_golden_checks(power);
    bool all = true;
    for (const GoldenCheck &check : checks) {
        all = all && check.passed;
        out << (check.passed ? "PASS  " : "FAIL  ") << check.name << "  expected " << check.expected << "  got "
            << check.actual << '\n';
    }
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const auto &c) { return !c.passed; });
    out << (all ? "all " + std::to_string(checks.size()) + " checks passed"
                : std::to_string(failed) + " of " + std::to_string(checks.size()) + " checks failed")
        << '\n';
    return all ? kOk : kCheckFailure;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Top Trading Cycles: classical and Markov-matrix solvers, audits and benchmarks", "ttc"};
    app.require_subcommand(1);

    SolverFlags solver;

    auto *gen = app.add_subcommand("gen", "Generate seeded instance files");
    std::size_t gen_n = 0, gen_count = 1;
    std::uint64_t gen_seed = 0;
    std::string gen_model = "uniform", gen_out;
    double gen_theta = 0.0;
    gen->add_option("--n", gen_n, "Market size")->required();
    gen->add_option("--count", gen_count, "Number of instances");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--model", gen_model, "Generator model")->check(CLI::IsMember({"uniform", "popularity"}));
    gen->add_option("--theta", gen_theta, "Popularity concentration (>= 0)");
    gen->add_option("--out", gen_out, "Output directory")->required();

    auto *solve = app.add_subcommand("solve", "Solve one instance file");
    std::string solve_input, solve_method = "classical", solve_out;
    bool solve_verbose = false;
    solve->add_option("input", solve_input, "Instance file (.json or .csv)")->required();
    solve->add_option("--method", solve_method, "Solver")->check(CLI::IsMember({"classical", "spectral"}));
    solve->add_option("--out", solve_out, "Write the allocation JSON here");
    solve->add_flag("-v,--verbose", solve_verbose, "Print the trace");
    solver.add_to(*solve);

    BatchFlags compare_batch, audit_batch;
    std::string compare_out, compare_cex, audit_out, audit_cex;
    auto *compare = app.add_subcommand("compare", "Agreement of spectral vs classical over a batch");
    compare_batch.add_to(*compare);
    compare->add_option("--out", compare_out, "JSON-lines report file");
    compare->add_option("--counterexamples", compare_cex, "Directory for counterexample instance files");
    solver.add_to(*compare);

    auto *audit = app.add_subcommand("audit", "Batch comparison plus exhaustive property checks");
    audit_batch.add_to(*audit);
    audit->add_option("--out", audit_out, "JSON-lines report file");
    audit->add_option("--counterexamples", audit_cex, "Directory for counterexample instance files");
    solver.add_to(*audit);

    auto *bench = app.add_subcommand("bench", "Scaling benchmark");
    std::vector<std::size_t> bench_sizes;
    std::size_t bench_reps = 5;
    std::vector<std::string> bench_methods{"classical", "spectral"};
    std::uint64_t bench_seed = 1;
    std::string bench_model = "uniform", bench_out;
    double bench_theta = 0.0;
    bool bench_overwrite = false;
    bench->add_option("--sizes", bench_sizes, "Comma-separated market sizes")->required()->delimiter(',');
    bench->add_option("--reps", bench_reps, "Timed repetitions per size (>= 3)");
    bench->add_option("--method", bench_methods, "Solvers to time")
        ->delimiter(',')
        ->check(CLI::IsMember({"classical", "spectral"}));
    bench->add_option("--seed", bench_seed, "Generator seed");
    bench->add_option("--model", bench_model, "Generator model")->check(CLI::IsMember({"uniform", "popularity"}));
    bench->add_option("--theta", bench_theta, "Popularity concentration (>= 0)");
    bench->add_option("--out", bench_out, "CSV file (appended unless --overwrite)");
    bench->add_flag("--overwrite", bench_overwrite, "Truncate the CSV instead of appending");
    solver.add_to(*bench);

    auto *repro = app.add_subcommand("repro", "Check the embedded worked examples against their printed values");
    bool repro_fault = false;
    repro->add_flag("--fault-inject", repro_fault, "Degrade the solver tolerance to 1e-2 (negative control)");
    solver.add_to(*repro);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*gen) return cmd_gen(gen_n, gen_count, gen_seed, gen_model, gen_theta, gen_out, out);
        if (*solve) return cmd_solve(solve_input, solve_method, solver, solve_out, solve_verbose, out);
        if (*compare) return cmd_compare(compare_batch, solver, false, compare_out, compare_cex, out);
        if (*audit) return cmd_compare(audit_batch, solver, true, audit_out, audit_cex, out);
        if (*bench) {
            return cmd_bench(bench_sizes, bench_reps, bench_methods, bench_seed, bench_model, bench_theta, solver,
                             bench_out, bench_overwrite, out);
        }
        if (*repro) return cmd_repro(solver, repro_fault, out);
    } catch (const NoConvergence &e) {
        err << "error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const ValidationError &e) {
        err << "error: invalid input: " << e.what() << '\n';
        return kInputError;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailure;
    }
    return kInputError;
}

} // namespace ttc::cli
