#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ttc/audit.hpp"
#include "ttc/generator.hpp"
#include "ttc/io.hpp"
#include "ttc/spectral.hpp"
#include "ttc/worked_examples.hpp"

using namespace ttc;

namespace {

oracle::Dense to_dense(const Matrix &m) {
    oracle::Dense out(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
    return out;
}

double max_abs_diff_up_to_sign(const std::vector<double> &a, const std::vector<double> &b) {
    double plus = 0, minus = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        plus = std::max(plus, std::abs(a[k] - b[k]));
        minus = std::max(minus, std::abs(a[k] + b[k]));
    }
    return std::min(plus, minus);
}

std::vector<double> magnitudes(std::vector<double> v) {
    for (double &x : v) x = std::abs(x);
    return v;
}

} // namespace

TEST_CASE("build_weight_matrix") {
    const auto &ex1 = worked_example_1();
    WeightMatrix w1 = build_weight_matrix(ex1.instance().profile);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(w1.w(i, j) == ex1.weights[i][j]);

    WeightMatrix w2 = build_weight_matrix(worked_example_2().instance().profile);
    const std::vector<double> row1{1.0, 0.8, 0.6, 0.4, 0.2};
    for (std::size_t j = 0; j < 5; ++j) CHECK(w2.w(0, j) == row1[j]);

    WeightMatrix single = build_weight_matrix(validate_profile({{1}}));
    CHECK(single.w(0, 0) == 1.0);
}

TEST_CASE("normalize_columns") {
    ColumnStochasticMatrix m1 = normalize_columns(build_weight_matrix(worked_example_1().instance().profile));
    CHECK(m1.colsum == std::vector<double>{3.5, 2.25, 1.75, 2.5});
    CHECK(m1.m(0, 0) == doctest::Approx(0.28571429).epsilon(1e-8));

    ColumnStochasticMatrix m2 = normalize_columns(build_weight_matrix(worked_example_2().instance().profile));
    CHECK(m2.colsum == std::vector<double>{3.6, 3.2, 2.4, 2.6, 3.2});
    const auto &printed = worked_example_2().normalized;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(m2.m(i, j) - printed[i][j]) < 1e-8);

    ColumnStochasticMatrix single = normalize_columns(build_weight_matrix(validate_profile({{1}})));
    CHECK(single.m(0, 0) == 1.0);
}

TEST_CASE("property: weights are row permutations of {1/n..1}; columns stochastic within 1e-12") {
    for (std::size_t n = 1; n <= 40; n += 3) {
        for (const Instance &instance : generate({n, 5, 31 * n})) {
            WeightMatrix w = build_weight_matrix(instance.profile);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<double> row(w.w.row(i).begin(), w.w.row(i).end());
                std::sort(row.begin(), row.end());
                for (std::size_t k = 0; k < n; ++k) CHECK(row[k] == double(k + 1) / double(n));
            }
            ColumnStochasticMatrix m = normalize_columns(w);
            for (std::size_t j = 0; j < n; ++j) {
                double sum = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    CHECK(m.m(i, j) > 0.0);
                    sum += m.m(i, j);
                }
                CHECK(std::abs(sum - 1.0) < 1e-12);
                CHECK(m.colsum[j] > 0.0);
            }
        }
    }
}

TEST_CASE("property: relabeling objects permutes weight columns identically") {
    for (std::size_t n = 2; n <= 9; ++n) {
        for (const Instance &instance : generate({n, 10, 4000 + n})) {
            auto engine = stream_engine(n, 99);
            const auto relabel = random_permutation(engine, n); // object j becomes relabel[j]
            auto rows = instance.profile.rankings();
            for (auto &row : rows)
                for (auto &object : row) object = relabel[object];
            WeightMatrix original = build_weight_matrix(instance.profile);
            WeightMatrix permuted = build_weight_matrix(PreferenceProfile(rows));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) CHECK(permuted.w(i, relabel[j]) == original.w(i, j));
        }
    }
}

TEST_CASE("provenance: which singular vector reproduces the printed V[0]") {
    // Independent Jacobi decompositions of both candidate matrices for both
    // examples. Only the right vector of the weight matrix matches.
    for (const WorkedExample *ex : {&worked_example_1(), &worked_example_2()}) {
        const auto weights = oracle::weights_from_rankings(ex->preferences);
        oracle::Dense normalized = weights;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            double sum = 0;
            for (const auto &row : weights) sum += row[j];
            for (auto &row : normalized) row[j] /= sum;
        }
        const auto svd_w = oracle::jacobi_svd(weights);
        const auto svd_m = oracle::jacobi_svd(normalized);

        auto error = [&](const std::vector<double> &v) {
            double worst = 0;
            for (std::size_t k = 0; k < v.size(); ++k)
                worst = std::max(worst, std::abs(std::abs(v[k]) - ex->singular_magnitudes[k]));
            return worst;
        };
        CHECK(error(oracle::column(svd_w.right, 0)) < 1e-8);
        CHECK(error(oracle::column(svd_w.left, 0)) > 1e-2);
        CHECK(error(oracle::column(svd_m.right, 0)) > 1e-2);
        CHECK(error(oracle::column(svd_m.left, 0)) > 1e-2);
    }
}

TEST_CASE("leading_singular_vector on the worked examples") {
    const auto &ex1 = worked_example_1();
    OrderingVector v1 = leading_singular_vector(build_weight_matrix(ex1.instance().profile).w);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(std::abs(v1.coefficients[k]) - ex1.singular_magnitudes[k]) < 1e-8);
    double norm = 0;
    for (double x : v1.coefficients) norm += x * x;
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-10);
    CHECK(v1.iterations < 100);

    const auto &ex2 = worked_example_2();
    OrderingVector v2 = leading_singular_vector(build_weight_matrix(ex2.instance().profile).w);
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(std::abs(v2.coefficients[k]) - ex2.singular_magnitudes[k]) < 1e-8);

    OrderingVector single = leading_singular_vector(Matrix(1, 1, 1.0));
    CHECK(std::abs(single.coefficients[0]) == doctest::Approx(1.0));
}

TEST_CASE("property: power iteration agrees with the Jacobi oracle and has small residual") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (const Instance &instance : generate({n, 25, 700 + n})) {
            for (SpectralBasis basis : {SpectralBasis::Weight, SpectralBasis::Normalized}) {
                WeightMatrix w = build_weight_matrix(instance.profile);
                const Matrix a = basis == SpectralBasis::Weight ? w.w : normalize_columns(w).m;
                OrderingVector v = leading_singular_vector(a);
                const auto svd = oracle::jacobi_svd(to_dense(a));
                CHECK(v.singular_value == doctest::Approx(svd.singular_values[0]).epsilon(1e-10));
                if (n > 1 && svd.singular_values[0] - svd.singular_values[1] > 1e-6) {
                    CHECK(max_abs_diff_up_to_sign(v.coefficients, oracle::column(svd.right, 0)) < 1e-8);
                }
                CHECK(singular_residual(a, v.coefficients) < 1e-8);
            }
        }
    }
}

TEST_CASE("leading_singular_vector argument and convergence errors") {
    Matrix a = build_weight_matrix(worked_example_1().instance().profile).w;
    CHECK_THROWS_AS(leading_singular_vector(a, {0.0, 10}), std::invalid_argument);
    CHECK_THROWS_AS(leading_singular_vector(a, {1e-12, 0}), std::invalid_argument);
    try {
        leading_singular_vector(a, {1e-12, 2});
        FAIL("expected NoConvergence");
    } catch (const NoConvergence &e) {
        CHECK(e.max_iter() == 2);
    }
    // Repeated top singular value: every unit vector is a fixed point.
    Matrix rotation(2, 2);
    rotation(0, 1) = 1.0;
    rotation(1, 0) = -1.0;
    CHECK(leading_singular_vector(rotation, {1e-12, 5}).iterations == 1);
}

TEST_CASE("pick_order") {
    CHECK(pick_order(worked_example_1().singular_magnitudes) == std::vector<AgentIndex>{0, 3, 1, 2});
    CHECK(pick_order(worked_example_2().singular_magnitudes) == std::vector<AgentIndex>{0, 1, 4, 3, 2});
    const std::vector<double> flat(5, 0.4472135954999579);
    CHECK(pick_order(flat) == std::vector<AgentIndex>{0, 1, 2, 3, 4});
    const std::vector<double> printed{-0.67952481, -0.43424211, -0.33978586, -0.48396838};
    CHECK(pick_order(printed) == std::vector<AgentIndex>{0, 3, 1, 2});
}

TEST_CASE("property: pick_order is sign invariant") {
    auto engine = stream_engine(2024, 0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + uniform_below(engine, 12);
        std::vector<double> v(n), negated(n), mixed(n);
        for (std::size_t k = 0; k < n; ++k) {
            // Coarse grid so ties occur.
            v[k] = double(uniform_below(engine, 7)) - 3.0;
            negated[k] = -v[k];
            mixed[k] = (uniform_below(engine, 2) ? -1.0 : 1.0) * v[k];
        }
        CHECK(pick_order(v) == pick_order(negated));
        CHECK(pick_order(v) == pick_order(mixed));
    }
}

TEST_CASE("serial_dictatorship") {
    const Instance ex1 = worked_example_1().instance();
    const std::vector<AgentIndex> order1{0, 3, 1, 2};
    Allocation a1 = serial_dictatorship(ex1.profile, order1);
    CHECK(a1.assignment == std::vector<ObjectIndex>{0, 2, 1, 3});
    CHECK(a1.picks == std::vector<Pick>{{0, 0}, {3, 3}, {1, 2}, {2, 1}});

    const Instance ex2 = worked_example_2().instance();
    const std::vector<AgentIndex> order2{0, 1, 4, 3, 2};
    CHECK(serial_dictatorship(ex2.profile, order2).assignment == std::vector<ObjectIndex>{0, 4, 2, 3, 1});

    auto identity_top = validate_profile({{1, 3, 2}, {2, 1, 3}, {3, 2, 1}});
    const std::vector<AgentIndex> any{2, 0, 1};
    CHECK(serial_dictatorship(identity_top, any).assignment == std::vector<ObjectIndex>{0, 1, 2});

    const std::vector<AgentIndex> short_order{0, 1};
    const std::vector<AgentIndex> repeated{0, 0, 1, 2};
    CHECK_THROWS_AS(serial_dictatorship(ex1.profile, short_order), std::invalid_argument);
    CHECK_THROWS_AS(serial_dictatorship(ex1.profile, repeated), std::invalid_argument);
}

TEST_CASE("solve_spectral reproduces the worked examples") {
    CHECK(solve_spectral(worked_example_1().instance()).assignment == std::vector<ObjectIndex>{0, 2, 1, 3});
    CHECK(solve_spectral(worked_example_2().instance()).assignment == std::vector<ObjectIndex>{0, 4, 2, 3, 1});
}

TEST_CASE("property: solve_spectral equals the stagewise oracle pipeline on 3x3 markets") {
    for (const Instance &instance : generate({3, 200, 12345})) {
        const auto rows = instance.profile.rankings();
        std::vector<std::vector<std::int64_t>> raw;
        for (const auto &row : rows) {
            auto &r = raw.emplace_back();
            for (auto o : row) r.push_back(std::int64_t(o) + 1);
        }
        const auto svd = oracle::jacobi_svd(oracle::weights_from_rankings(raw));
        auto v = oracle::column(svd.right, 0);
        std::vector<AgentIndex> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(),
                         [&](auto x, auto y) { return std::abs(v[x]) > std::abs(v[y]); });
        std::vector<bool> taken(3, false);
        std::vector<ObjectIndex> expected(3);
        for (AgentIndex agent : order) {
            for (auto object : rows[agent]) {
                if (!taken[object]) {
                    taken[object] = true;
                    expected[agent] = object;
                    break;
                }
            }
        }
        CHECK(solve_spectral(instance).assignment == expected);
    }
}

TEST_CASE("solve_spectral is deterministic and the staged run agrees with it") {
    for (const Instance &instance : generate({7, 30, 8})) {
        const Allocation a = solve_spectral(instance);
        const Allocation b = solve_spectral(instance);
        CHECK(serialize_allocation(a) == serialize_allocation(b));
        CHECK(run_spectral(instance).allocation == a);
    }
}

TEST_CASE("normalized basis is selectable and differs on the first worked example") {
    SpectralOptions options;
    options.basis = SpectralBasis::Normalized;
    SpectralRun run = run_spectral(worked_example_1().instance(), options);
    CHECK(run.order == std::vector<AgentIndex>{1, 3, 2, 0});
    CHECK(magnitudes(run.ordering.coefficients)[1] == doctest::Approx(0.5008169).epsilon(1e-6));
}
