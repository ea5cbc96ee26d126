#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qbm/error.hpp"
#include "qbm/evolution.hpp"
#include "test_support.hpp"

using namespace qbm;
using testing::random_bath;

namespace {

void check_doubly_stochastic(const ProbabilityMatrix& p) {
    for (std::size_t n = 0; n < p.dim; ++n) {
        double row = 0.0, col = 0.0;
        for (std::size_t m = 0; m < p.dim; ++m) {
            row += p(n, m);
            col += p(m, n);
            CHECK(p(n, m) >= -1e-12);
            CHECK(p(n, m) <= 1.0 + 1e-12);
            CHECK(std::abs(p(n, m) - p(m, n)) <= 1e-12);
        }
        CHECK(std::abs(row - 1.0) <= 1e-10);
        CHECK(std::abs(col - 1.0) <= 1e-10);
    }
}

}  // namespace

TEST_CASE("survival amplitude") {
    const auto paper = solve_spectrum(testing::paper_bath(), 1.0);
    const auto a0 = survival_amplitude(paper, 0.0);
    CHECK(std::abs(a0 - std::complex<double>(1.0, 0.0)) < 1e-12);

    const auto sym = solve_spectrum(testing::symmetric_two_level(), 1.0);
    for (double t : {0.3, 2.0, 7.5, 40.0}) {
        const auto a = survival_amplitude(sym, t);
        const auto expected = std::exp(std::complex<double>(0.0, -t)) * std::cos(0.1 * t);
        CHECK(std::abs(a - expected) < 1e-12);
        CHECK(testing::close_rel(std::norm(a), std::cos(0.1 * t) * std::cos(0.1 * t), 1e-10));
    }

    CHECK(std::norm(survival_amplitude(paper, 200.0)) < 0.05);
    for (double t = 0.0; t < 500.0; t += 3.7) CHECK(std::abs(survival_amplitude(paper, t)) <= 1.0 + 1e-12);
}

TEST_CASE("transition probabilities at t = 0 are the identity") {
    const auto spec = solve_spectrum(testing::paper_bath(), 1.0);
    const auto p = transition_probabilities(spec, 0.0);
    for (std::size_t n = 0; n < p.dim; ++n)
        for (std::size_t m = 0; m < p.dim; ++m) CHECK(std::abs(p(n, m) - (n == m ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("two-level transition probabilities") {
    const auto sym = solve_spectrum(testing::symmetric_two_level(), 1.0);
    for (auto mode : {EvalMode::Fast, EvalMode::Naive}) {
        for (double t : {0.0, 1.0, 5.0, 12.3}) {
            const auto p = transition_probabilities(sym, t, mode);
            const double c2 = std::cos(0.1 * t) * std::cos(0.1 * t);
            const double s2 = std::sin(0.1 * t) * std::sin(0.1 * t);
            CHECK(testing::close_rel(p(0, 0), c2, 1e-10));
            CHECK(std::abs(p(0, 1) - s2) < 1e-10);
            CHECK(std::abs(p(1, 0) - s2) < 1e-10);
        }
    }
}

TEST_CASE("fast probabilities match the literal double sums") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> time(0.0, 60.0);
    for (int draw = 0; draw < 24; ++draw) {
        const std::size_t n = 1 + draw % 8;
        const auto bath = random_bath(rng, n);
        const auto spec = solve_spectrum(bath, 1.1);
        const double t = draw == 0 ? 3.7 : time(rng);
        const auto fast = transition_probabilities(spec, t, EvalMode::Fast);
        const auto naive = transition_probabilities(spec, t, EvalMode::Naive);
        for (std::size_t i = 0; i < fast.entries.size(); ++i)
            CHECK(std::abs(fast.entries[i] - naive.entries[i]) <= 1e-10);
        check_doubly_stochastic(fast);
        check_doubly_stochastic(naive);
    }
}

TEST_CASE("fast probabilities match direct time integration") {
    std::mt19937_64 rng(11);
    const auto bath = random_bath(rng, 8);
    const auto spec = solve_spectrum(bath, 1.0);
    const double t = 3.7;
    const auto fast = transition_probabilities(spec, t);
    const auto rk4 = testing::rk4_probabilities(bath, 1.0, t, 4000);
    for (std::size_t i = 0; i < rk4.size(); ++i) CHECK(std::abs(fast.entries[i] - rk4[i]) <= 1e-9);
}

TEST_CASE("naive evaluation is size guarded") {
    std::mt19937_64 rng(5);
    const auto spec = solve_spectrum(random_bath(rng, 33), 1.0);
    try {
        transition_probabilities(spec, 1.0, EvalMode::Naive);
        FAIL("expected SizeGuard");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeGuard);
    }
    const auto p = transition_probabilities(spec, 1.0, EvalMode::Naive, true);
    const auto q = transition_probabilities(spec, 1.0, EvalMode::Fast);
    for (std::size_t i = 0; i < p.entries.size(); ++i) CHECK(std::abs(p.entries[i] - q.entries[i]) <= 1e-10);
}

TEST_CASE("reference bath: P(t) is doubly stochastic and symmetric") {
    const auto spec = solve_spectrum(testing::paper_bath(), 1.0);
    for (double t : {0.0, 1.0, 10.0, 100.0, 377.0}) check_doubly_stochastic(transition_probabilities(spec, t));
}

TEST_CASE("populations") {
    const auto bath = testing::paper_bath();
    const auto spec = solve_spectrum(bath, 1.0);
    const auto occ0 = thermal_occupations(bath, 1.0, 1.0);
    const auto initial = occ0.as_levels();

    const auto at0 = populations(spec, occ0, 0.0);
    for (std::size_t n = 0; n < initial.size(); ++n) CHECK(std::abs(at0.values[n] - initial[n]) < 1e-12);

    double total0 = 0.0;
    for (double x : initial) total0 += x;
    for (double t : {0.5, 7.0, 150.0, 1234.5}) {
        const auto occ = populations(spec, occ0, t);
        double total = 0.0;
        for (double x : occ.values) {
            total += x;
            CHECK(x >= -1e-12);
        }
        CHECK(std::abs(total - total0) <= 1e-10 * total0);
    }
}

TEST_CASE("population decomposition") {
    const auto bath = testing::paper_bath();
    const auto spec = solve_spectrum(bath, 1.0);
    const auto occ0 = thermal_occupations(bath, 1.0, 1.0);

    TimeGrid grid{0.0, 0.5, 600};
    const auto parts = population_decomposition(spec, occ0, grid);
    REQUIRE(parts.total.samples.size() == 601);

    CHECK(testing::close_rel(parts.total.samples[0].value, 1.0, 1e-12));
    CHECK(testing::close_rel(parts.survival.samples[0].value, 1.0, 1e-12));
    CHECK(std::abs(parts.bath.samples[0].value) < 1e-12);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double lhs = parts.total.samples[i].value;
        const double rhs = parts.survival.samples[i].value + parts.bath.samples[i].value;
        CHECK(std::abs(lhs - rhs) <= 1e-12);
        CHECK(std::abs(parts.survival.samples[i].value -
                       std::norm(survival_amplitude(spec, grid.at(i)))) <= 1e-12);
    }

    const auto& at200 = parts.total.samples[400];
    REQUIRE(at200.t == 200.0);
    CHECK(parts.survival.samples[400].value < 0.05);
    CHECK(testing::close_rel(parts.bath.samples[400].value, at200.value, 0.05));

    // row 0 of the full matrix
    const auto full = populations(spec, occ0, 123.0);
    const auto one = population_decomposition(spec, occ0, TimeGrid{123.0, 1.0, 1});
    CHECK(std::abs(full.values[0] - one.total.samples[0].value) < 1e-12);
}

TEST_CASE("short-time Zeno law") {
    const auto bath = testing::paper_bath();
    const auto spec = solve_spectrum(bath, 1.0);
    double g2 = 0.0;
    for (double g : bath.couplings) g2 += g * g;

    std::vector<double> xs, ys;
    for (int i = 0; i <= 40; ++i) {
        const double t = std::pow(10.0, -3.0 + i / 40.0);
        xs.push_back(std::log(t));
        ys.push_back(std::log(1.0 - std::norm(survival_amplitude(spec, t))));
    }
    const auto fit = testing::fit_line(xs, ys);
    CHECK(testing::close_rel(fit.slope, 2.0, 0.025));
    CHECK(testing::close_rel(std::exp(fit.intercept), g2, 0.02));
}
