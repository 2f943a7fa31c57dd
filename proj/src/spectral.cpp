#include "ttc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ttc {

namespace {

double norm2(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

} // namespace

NoConvergence::NoConvergence(std::size_t max_iter)
    : std::runtime_error("power iteration did not converge within " + std::to_string(max_iter) + " iterations"),
      max_iter_(max_iter) {}

WeightMatrix build_weight_matrix(const PreferenceProfile &profile) {
    const std::size_t n = profile.size();
    const double denom = static_cast<double>(n);
    WeightMatrix weights{Matrix(n, n), std::vector<std::size_t>(n * n)};
    for (AgentIndex i = 0; i < n; ++i) {
        for (ObjectIndex j = 0; j < n; ++j) {
            const std::size_t points = n - profile.rank_unchecked(i, j) + 1;
            weights.points[i * n + j] = points;
            weights.w(i, j) = static_cast<double>(points) / denom;
        }
    }
    return weights;
}

ColumnStochasticMatrix normalize_columns(const WeightMatrix &weights) {
    const std::size_t n = weights.w.rows();
    std::vector<std::size_t> column_points(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) column_points[c] += weights.points[r * n + c];
    }
    ColumnStochasticMatrix out{Matrix(n, n), std::vector<double>(n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.colsum[c] = static_cast<double>(column_points[c]) / static_cast<double>(n);
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out.m(r, c) = static_cast<double>(weights.points[r * n + c]) / static_cast<double>(column_points[c]);
        }
    }
    return out;
}

OrderingVector leading_singular_vector(const Matrix &a, const PowerIterationOptions &options) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (options.max_iter == 0) throw std::invalid_argument("max_iter must be at least 1");
    const std::size_t n = a.cols();
    if (n == 0) throw std::invalid_argument("empty matrix");

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
        std::vector<double> next = a.multiply_transposed(a.multiply(v));
        const double len = norm2(next);
        if (len == 0.0) throw NoConvergence(iter);
        double delta = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            next[k] /= len;
            delta = std::max(delta, std::abs(next[k] - v[k]));
        }
        v = std::move(next);
        if (delta < options.tol) {
            OrderingVector out;
            out.singular_value = norm2(a.multiply(v));
            out.coefficients = std::move(v);
            out.iterations = iter;
            return out;
        }
    }
    throw NoConvergence(options.max_iter);
}

std::vector<AgentIndex> pick_order(std::span<const double> coefficients) {
    std::vector<AgentIndex> order(coefficients.size());
    std::iota(order.begin(), order.end(), AgentIndex{0});
    std::stable_sort(order.begin(), order.end(), [&](AgentIndex a, AgentIndex b) {
        return std::abs(coefficients[a]) > std::abs(coefficients[b]);
    });
    return order;
}

Allocation serial_dictatorship(const PreferenceProfile &profile, std::span<const AgentIndex> order) {
    const std::size_t n = profile.size();
    std::vector<bool> seen(n, false);
    if (order.size() != n) throw std::invalid_argument("pick order must list every agent exactly once");
    for (AgentIndex agent : order) {
        if (agent >= n || seen[agent]) throw std::invalid_argument("pick order must list every agent exactly once");
        seen[agent] = true;
    }

    Allocation allocation;
    allocation.method = Method::Spectral;
    allocation.assignment.assign(n, 0);
    std::vector<bool> taken(n, false);
    for (AgentIndex agent : order) {
        for (ObjectIndex object : profile.ranking(agent)) {
            if (!taken[object]) {
                taken[object] = true;
                allocation.assignment[agent] = object;
                allocation.picks.push_back({agent, object});
                break;
            }
        }
    }
    return allocation;
}

SpectralRun run_spectral(const Instance &instance, const SpectralOptions &options) {
    SpectralRun run;
    run.weights = build_weight_matrix(instance.profile);
    run.normalized = normalize_columns(run.weights);
    const Matrix &basis = options.basis == SpectralBasis::Weight ? run.weights.w : run.normalized.m;
    run.ordering = leading_singular_vector(basis, options.power);
    run.order = pick_order(run.ordering.coefficients);
    run.allocation = serial_dictatorship(instance.profile, run.order);
    return run;
}

Allocation solve_spectral(const Instance &instance, const SpectralOptions &options) {
    // Skip the normalized matrix when it is not the decomposed basis.
    if (options.basis == SpectralBasis::Normalized) return run_spectral(instance, options).allocation;
    WeightMatrix weights = build_weight_matrix(instance.profile);
    OrderingVector ordering = leading_singular_vector(weights.w, options.power);
    return serial_dictatorship(instance.profile, pick_order(ordering.coefficients));
}

double singular_residual(const Matrix &a, std::span<const double> v) {
    std::vector<double> av = a.multiply(v);
    double sigma2 = 0.0;
    for (double x : av) sigma2 += x * x;
    std::vector<double> gram_v = a.multiply_transposed(av);
    double worst = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) worst = std::max(worst, std::abs(gram_v[k] - sigma2 * v[k]));
    return worst;
}

} // namespace ttc
