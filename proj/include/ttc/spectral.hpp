#pragma once

// Markov-matrix approximation of TTC.
//
//   weights   w[i][j] = (n - rank_of(i, j) + 1) / n        (first choice 1, last 1/n)
//   normalize m[i][j] = w[i][j] / sum_k w[k][j]           (column-stochastic)
//   ordering  leading right singular vector, entry k read as agent k
//   picks     serial dictatorship by descending |coefficient|
//
// The ordering vector is taken from the weight matrix itself by default; that
// is the decomposition whose coefficients match the published worked
// examples. The column-stochastic matrix can be selected instead through
// SpectralOptions::basis.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ttc/matrix.hpp"
#include "ttc/model.hpp"

namespace ttc {

class NoConvergence : public std::runtime_error {
public:
    explicit NoConvergence(std::size_t max_iter);
    std::size_t max_iter() const noexcept { return max_iter_; }

private:
    std::size_t max_iter_;
};

/// Agent-by-object weights, every row a permutation of {1/n, ..., 1}.
/// The integer numerators n - rank + 1 are kept so column sums and the
/// normalized entries are single correctly-rounded divisions.
struct WeightMatrix {
    Matrix w;
    std::vector<std::size_t> points; // row-major
};

struct ColumnStochasticMatrix {
    Matrix m;
    std::vector<double> colsum;
};

struct OrderingVector {
    std::vector<double> coefficients; // unit Euclidean norm
    double singular_value = 0.0;
    std::size_t iterations = 0;
};

struct PowerIterationOptions {
    double tol = 1e-12;
    std::size_t max_iter = 10000;
};

enum class SpectralBasis { Weight, Normalized };

struct SpectralOptions {
    PowerIterationOptions power;
    SpectralBasis basis = SpectralBasis::Weight;
};

WeightMatrix build_weight_matrix(const PreferenceProfile &profile);

ColumnStochasticMatrix normalize_columns(const WeightMatrix &weights);

/**
 * Right singular vector for the largest singular value of `a`, by power
 * iteration on aᵀa (applied as aᵀ(a x), never formed). Starts from the
 * normalized all-ones vector and stops once successive iterates differ by
 * less than tol in max-norm.
 *
 * Throws std::invalid_argument for tol <= 0 or max_iter == 0 and
 * NoConvergence when max_iter sweeps do not suffice.
 */
OrderingVector leading_singular_vector(const Matrix &a, const PowerIterationOptions &options = {});

/// Agents by descending |v_k|, ties by ascending index. Sign-invariant.
std::vector<AgentIndex> pick_order(std::span<const double> coefficients);

/// Throws std::invalid_argument if order is not a permutation of the agents.
Allocation serial_dictatorship(const PreferenceProfile &profile, std::span<const AgentIndex> order);

/// Every intermediate stage, for reporting and golden checks.
struct SpectralRun {
    WeightMatrix weights;
    ColumnStochasticMatrix normalized;
    OrderingVector ordering;
    std::vector<AgentIndex> order;
    Allocation allocation;
};

SpectralRun run_spectral(const Instance &instance, const SpectralOptions &options = {});

Allocation solve_spectral(const Instance &instance, const SpectralOptions &options = {});

/// ‖(aᵀa) v − σ² v‖∞ for σ² = ‖a v‖².
double singular_residual(const Matrix &a, std::span<const double> v);

} // namespace ttc
