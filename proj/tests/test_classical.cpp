#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pqw/classical.hpp"
#include "pqw/errors.hpp"

using namespace pqw;
using namespace pqw::classical;

namespace {

// Independent check: iterate d <- d·T from the uniform distribution.
Distribution3 power_iteration(const TransitionMatrix& t, int iterations) {
    Distribution3 d{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    for (int k = 0; k < iterations; ++k) {
        Distribution3 next{};
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) next[j] += d[i] * t[i][j];
        }
        d = next;
    }
    return d;
}

double inf_residual(const Distribution3& d, const TransitionMatrix& t) {
    double r = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        double dt = 0.0;
        for (std::size_t i = 0; i < 3; ++i) dt += d[i] * t[i][j];
        r = std::max(r, std::abs(dt - d[j]));
    }
    return r;
}

}  // namespace

TEST_CASE("parameters") {
    const ClassicalParams p(0.005);
    CHECK(p.p_a() == doctest::Approx(0.495));
    CHECK(p.p_b1() == doctest::Approx(0.095));
    CHECK(p.p_b2() == doctest::Approx(0.745));
    CHECK_THROWS_AS(ClassicalParams(0.1), DomainError);
    CHECK_THROWS_AS(ClassicalParams(0.2), DomainError);
    CHECK_THROWS_AS(ClassicalParams(-0.001), DomainError);
    CHECK_THROWS_AS(ClassicalParams(std::nan("")), DomainError);
    CHECK_NOTHROW(ClassicalParams(0.0999));
}

TEST_CASE("transition matrix") {
    const TransitionMatrix t0 = transition_matrix(ClassicalParams(0.0));
    const TransitionMatrix expected{{{0.0, 0.1, 0.9}, {0.25, 0.0, 0.75}, {0.75, 0.25, 0.0}}};
    CHECK(t0 == expected);
    for (const auto& row : t0) CHECK(row[0] + row[1] + row[2] == 1.0);

    const TransitionMatrix t = transition_matrix(ClassicalParams(0.005));
    CHECK(t[0][0] == 0.0);
    CHECK(t[0][1] == doctest::Approx(0.095).epsilon(1e-15));
    CHECK(t[0][2] == doctest::Approx(0.905).epsilon(1e-15));
    for (double c : {0.0, 0.01, 0.05, 0.099}) {
        for (const auto& row : transition_matrix(ClassicalParams(c))) {
            CHECK(std::abs(row[0] + row[1] + row[2] - 1.0) < 1e-14);
            for (double v : row) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}

TEST_CASE("stationary distribution") {
    SUBCASE("c = 0 gives (5, 2, 6)/13") {
        const Distribution3 d = stationary_distribution(transition_matrix(ClassicalParams(0.0)));
        CHECK(std::abs(d[0] - 5.0 / 13.0) < 1e-12);
        CHECK(std::abs(d[1] - 2.0 / 13.0) < 1e-12);
        CHECK(std::abs(d[2] - 6.0 / 13.0) < 1e-12);
    }
    SUBCASE("uniform doubly-stochastic matrix") {
        TransitionMatrix u;
        for (auto& row : u) row = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        for (double v : stationary_distribution(u)) CHECK(std::abs(v - 1.0 / 3.0) < 1e-15);
    }
    SUBCASE("c = 0.005 agrees with power iteration and a 40-digit solve") {
        const TransitionMatrix t = transition_matrix(ClassicalParams(0.005));
        const Distribution3 d = stationary_distribution(t);
        const Distribution3 p = power_iteration(t, 1000000);
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(d[i] - p[i]) < 1e-10);
        CHECK(std::abs(d[0] - 0.38361175899506292696) < 1e-14);
        CHECK(std::abs(d[1] - 0.15428057255839835194) < 1e-14);
        CHECK(std::abs(d[2] - 0.4621076684465387211) < 1e-14);
    }
    SUBCASE("residual below 1e-12 across the valid range") {
        for (int k = 0; k < 100; ++k) {
            const TransitionMatrix t = transition_matrix(ClassicalParams(0.000999 * k));
            const Distribution3 d = stationary_distribution(t);
            CHECK(inf_residual(d, t) < 1e-12);
            CHECK(std::abs(d[0] + d[1] + d[2] - 1.0) < 1e-12);
        }
    }
    SUBCASE("reducible chain is rejected") {
        const TransitionMatrix id{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
        CHECK_THROWS_AS(stationary_distribution(id), NumericalError);
    }
}

TEST_CASE("game B expected value") {
    CHECK(std::abs(game_b_expected_value(ClassicalParams(0.0))) < 1e-15);
    const double ev_small = game_b_expected_value(ClassicalParams(0.005));
    const double ev_large = game_b_expected_value(ClassicalParams(0.02));
    // 40-digit reference values
    CHECK(std::abs(ev_small - -0.0086952866935818050507) < 1e-14);
    CHECK(std::abs(ev_large - -0.034748068445750580651) < 1e-14);
    CHECK(ev_small < 0.0);
    CHECK(ev_large < ev_small);
}

TEST_CASE("capital mod 3 is non-negative") {
    CHECK(capital_state(0) == 0);
    CHECK(capital_state(4) == 1);
    CHECK(capital_state(-1) == 2);
    CHECK(capital_state(-3) == 0);
    CHECK(capital_state(-5) == 1);
}

TEST_CASE("simulate_classical") {
    SUBCASE("deterministic for a fixed seed") {
        const auto a = simulate_classical("ABB", ClassicalParams(0.005), 200, 1, 42);
        const auto b = simulate_classical("ABB", ClassicalParams(0.005), 200, 1, 42);
        CHECK(a.mean_capital == b.mean_capital);
        const auto c = simulate_classical("ABB", ClassicalParams(0.005), 200, 1, 43);
        CHECK(a.mean_capital != c.mean_capital);
    }
    SUBCASE("independent of the worker count") {
        const auto one = simulate_classical("B", ClassicalParams(0.005), 300, 10000, 9, 1);
        const auto many = simulate_classical("B", ClassicalParams(0.005), 300, 10000, 9, 8);
        CHECK(one.mean_capital == many.mean_capital);
        CHECK(one.stderr_capital == many.stderr_capital);
    }
    SUBCASE("invalid input") {
        CHECK_THROWS_AS(simulate_classical("AC", ClassicalParams(0.0), 10, 1, 0), DomainError);
        CHECK_THROWS_AS(simulate_classical("", ClassicalParams(0.0), 10, 1, 0), DomainError);
        CHECK_THROWS_AS(simulate_classical("A", ClassicalParams(0.0), 0, 1, 0), DomainError);
        CHECK_THROWS_AS(simulate_classical("A", ClassicalParams(0.0), 10, 0, 0), DomainError);
    }
    SUBCASE("capital moves by one per step") {
        const auto t = simulate_classical("AB", ClassicalParams(0.01), 100, 1, 3);
        double prev = 0.0;
        for (double m : t.mean_capital) {
            CHECK(std::abs(m - prev) == 1.0);
            prev = m;
        }
    }
}

TEST_CASE("Monte Carlo game A slope is 2p_A - 1") {
    const ClassicalParams p(0.005);
    const auto t = simulate_classical("A", p, 1000, 100000, 7, 0);
    // Game A is i.i.d., so the final capital is a sum of 1000 ±1 steps.
    const double expected = 1000.0 * (2.0 * p.p_a() - 1.0);
    CHECK(std::abs(t.mean_capital.back() - expected) < 3.0 * t.stderr_capital.back());
    const double analytic_se = std::sqrt(1000.0 * (1.0 - std::pow(2.0 * p.p_a() - 1.0, 2)) / 100000.0);
    CHECK(t.stderr_capital.back() == doctest::Approx(analytic_se).epsilon(0.02));
}

TEST_CASE("Monte Carlo game B slope converges to the stationary expectation") {
    const ClassicalParams p(0.005);
    const auto t = simulate_classical("B", p, 3000, 100000, 11, 0);
    const double slope = (t.mean_capital[2999] - t.mean_capital[99]) / 2900.0;
    const double se = t.stderr_capital[2999] / 2900.0;
    CHECK(std::abs(slope - game_b_expected_value(p)) < 3.0 * se);

    const auto fair = simulate_classical("B", ClassicalParams(0.0), 3000, 100000, 12, 0);
    const double fair_slope = (fair.mean_capital[2999] - fair.mean_capital[99]) / 2900.0;
    CHECK(std::abs(fair_slope) < 3.0 * fair.stderr_capital[2999] / 2900.0);
}
