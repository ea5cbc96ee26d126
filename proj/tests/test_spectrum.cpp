#include <doctest.h>

#include <cmath>
#include <random>

#include "qbm/error.hpp"
#include "qbm/spectrum.hpp"
#include "test_support.hpp"

using namespace qbm;
using testing::random_bath;

TEST_CASE("secular residual") {
    CHECK(std::abs(secular_residual(1.1, testing::symmetric_two_level(), 1.0)) < 1e-14);
    CHECK(secular_residual(2.0, testing::golden_two_level(), 0.0) == 1.0);

    const auto bath = testing::symmetric_two_level();
    try {
        secular_residual(1.0, bath, 1.0);
        FAIL("expected PoleEvaluation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PoleEvaluation);
    }
}

TEST_CASE("two-level spectra") {
    const auto sym = solve_spectrum(testing::symmetric_two_level(), 1.0);
    REQUIRE(sym.size() == 2);
    CHECK(std::abs(sym.alphas[0] - 0.9) < 1e-12);
    CHECK(std::abs(sym.alphas[1] - 1.1) < 1e-12);
    CHECK(std::abs(sym.weights[0] - 0.5) < 1e-12);
    CHECK(std::abs(sym.weights[1] - 0.5) < 1e-12);

    // analytic: alpha = (1 -+ sqrt 5) / 2, w = 1 / (1 + 1 / (alpha - 1)^2)
    const auto gold = solve_spectrum(testing::golden_two_level(), 0.0);
    const double root5 = std::sqrt(5.0);
    const double lo = (1.0 - root5) / 2.0;
    const double hi = (1.0 + root5) / 2.0;
    CHECK(std::abs(gold.alphas[0] - lo) < 1e-14);
    CHECK(std::abs(gold.alphas[1] - hi) < 1e-14);
    CHECK(testing::close_rel(gold.weights[0], 1.0 / (1.0 + 1.0 / ((lo - 1.0) * (lo - 1.0))), 1e-13));
    CHECK(testing::close_rel(gold.weights[0], 0.7236068, 1e-6));
    CHECK(testing::close_rel(gold.weights[1], 0.2763932, 1e-6));
    const auto rules = sum_rules(gold);
    CHECK(std::abs(rules.m1) < 1e-14);
}

TEST_CASE("reference spectrum: interlacing, sum rules, brackets") {
    const auto bath = testing::paper_bath();
    const auto spec = solve_spectrum(bath, 1.0);
    REQUIRE(spec.size() == 101);
    CHECK(interlaces(spec));

    const auto r = sum_rules(spec);
    CHECK(std::abs(r.m0 - 1.0) <= 1e-12);
    CHECK(std::abs(r.m1 - 1.0) <= 1e-10);
    CHECK(std::abs(r.m2 - r.expected_m2) <= 1e-9 * r.expected_m2);

    for (double w : spec.weights) {
        CHECK(w > 0.0);
        CHECK(w <= 1.0);
    }
    REQUIRE(spec.brackets.size() == spec.size());
    for (std::size_t nu = 0; nu < spec.size(); ++nu) {
        const auto& b = spec.brackets[nu];
        CHECK(secular_residual(b.lo, bath, 1.0) < 0.0);
        CHECK(secular_residual(b.hi, bath, 1.0) > 0.0);
        CHECK(b.hi - b.lo <= 1e-14 * std::max(1.0, std::abs(spec.alphas[nu])) * 2.0);
    }
}

TEST_CASE("dense oracle agrees with the secular solver") {
    SUBCASE("two-level") {
        const auto a = solve_spectrum(testing::symmetric_two_level(), 1.0);
        const auto b = dense_diagonalize_oracle(testing::symmetric_two_level(), 1.0);
        for (std::size_t nu = 0; nu < 2; ++nu) {
            CHECK(std::abs(a.alphas[nu] - b.alphas[nu]) < 1e-12);
            CHECK(std::abs(a.weights[nu] - b.weights[nu]) < 1e-12);
        }
    }
    SUBCASE("reference bath") {
        const auto bath = testing::paper_bath();
        const auto a = solve_spectrum(bath, 1.0);
        const auto b = dense_diagonalize_oracle(bath, 1.0);
        for (std::size_t nu = 0; nu < a.size(); ++nu) {
            CHECK(std::abs(a.alphas[nu] - b.alphas[nu]) <= 1e-9);
            CHECK(std::abs(a.weights[nu] - b.weights[nu]) <= 1e-9);
        }
    }
    SUBCASE("random baths, N <= 100") {
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<std::size_t> n_dist(1, 100);
        for (int trial = 0; trial < 25; ++trial) {
            const std::size_t n = trial == 0 ? 8 : n_dist(rng);
            const auto bath = random_bath(rng, n);
            const double omega0 = std::uniform_real_distribution<double>(0.3, 2.0)(rng);
            const auto a = solve_spectrum(bath, omega0);
            const auto b = dense_diagonalize_oracle(bath, omega0);
            REQUIRE(a.size() == n + 1);
            CHECK(interlaces(a));
            for (std::size_t nu = 0; nu < a.size(); ++nu) {
                CHECK(std::abs(a.alphas[nu] - b.alphas[nu]) <= 1e-9);
                CHECK(std::abs(a.weights[nu] - b.weights[nu]) <= 1e-9);
            }
            const auto r = sum_rules(a);
            CHECK(std::abs(r.m0 - 1.0) <= 1e-12);
            CHECK(std::abs(r.m1 - omega0) <= 1e-10 * std::max(1.0, omega0));
            CHECK(std::abs(r.m2 - r.expected_m2) <= 1e-9 * r.expected_m2);
        }
    }
}

TEST_CASE("sum rules match direct matrix moments") {
    const auto bath = testing::paper_bath();
    const auto r = sum_rules(solve_spectrum(bath, 1.0));
    CHECK(testing::close_rel(r.expected_m1, testing::matrix_moment(bath, 1.0, 1), 1e-15));
    CHECK(testing::close_rel(r.expected_m2, testing::matrix_moment(bath, 1.0, 2), 1e-14));
}

TEST_CASE("eigenvector overlaps") {
    const auto sym = solve_spectrum(testing::symmetric_two_level(), 1.0);
    CHECK(testing::close_rel(eigenvector_overlap(sym, 1, 1), std::sqrt(0.5), 1e-12));
    CHECK(testing::close_rel(eigenvector_overlap(sym, 1, 1), 0.70711, 1e-5));

    const auto gold = solve_spectrum(testing::golden_two_level(), 0.0);
    const double lo = (1.0 - std::sqrt(5.0)) / 2.0;
    const double expected = 1.0 / (lo - 1.0) * std::sqrt(1.0 / (1.0 + 1.0 / ((lo - 1.0) * (lo - 1.0))));
    CHECK(testing::close_rel(eigenvector_overlap(gold, 1, 0), expected, 1e-12));
    CHECK(testing::close_rel(eigenvector_overlap(gold, 1, 0), -0.52573, 1e-5));

    CHECK_THROWS_AS(eigenvector_overlap(sym, 0, 0), Error);
    CHECK_THROWS_AS(eigenvector_overlap(sym, 2, 0), Error);
    CHECK_THROWS_AS(eigenvector_overlap(sym, 1, 2), Error);
}

TEST_CASE("eigenvectors are orthonormal and complete") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        const auto bath = random_bath(rng, 8);
        const auto spec = solve_spectrum(bath, 1.2);
        const std::size_t dim = spec.size();
        const auto v = eigenvector_matrix(spec);
        for (std::size_t n = 0; n < dim; ++n) {
            for (std::size_t m = 0; m < dim; ++m) {
                double completeness = 0.0, orthogonality = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    completeness += v[n * dim + k] * v[m * dim + k];
                    orthogonality += v[k * dim + n] * v[k * dim + m];
                }
                const double delta = n == m ? 1.0 : 0.0;
                CHECK(std::abs(completeness - delta) <= 1e-10);
                CHECK(std::abs(orthogonality - delta) <= 1e-10);
            }
        }
        for (std::size_t n = 1; n < dim; ++n)
            for (std::size_t nu = 0; nu < dim; ++nu)
                CHECK(eigenvector_overlap(spec, n, nu) == v[n * dim + nu]);
    }
}

TEST_CASE("near-coincident poles cannot be bracketed") {
    DiscretizedBath bath{{1.0, 1.0 + 1e-15}, {0.1, 0.1}, std::nullopt, std::nullopt};
    try {
        solve_spectrum(bath, 1.0);
        FAIL("expected RootNotBracketed");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RootNotBracketed);
    }
}

TEST_CASE("roots hugging a weakly coupled pole") {
    // g_2 tiny: the roots beside omega_2 sit ~g^2 away from it.
    DiscretizedBath bath{{0.5, 1.0, 1.5}, {0.1, 1e-6, 0.1}, std::nullopt, std::nullopt};
    const auto a = solve_spectrum(bath, 1.3);
    const auto b = dense_diagonalize_oracle(bath, 1.3);
    CHECK(interlaces(a));
    for (std::size_t nu = 0; nu < a.size(); ++nu) CHECK(std::abs(a.alphas[nu] - b.alphas[nu]) <= 1e-12);
    CHECK(std::abs(sum_rules(a).m0 - 1.0) <= 1e-12);
}
