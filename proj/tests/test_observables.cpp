#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "pqw/errors.hpp"
#include "pqw/observables.hpp"

using namespace pqw;

namespace {

GameSpec reference_game(const std::string& sequence, double phi) {
    return {CoinParams(2.395, 0.513, 0.909), CoinParams(2.611, 1.176, 2.313), sequence, phi};
}

const GameSpec kIdentityGame{CoinParams(0, 0, 0), CoinParams(0, 0, 0), "A", 0.0};

}  // namespace

TEST_CASE("expected position") {
    CHECK(expected_position(init_state(kSymmetricInitialCoin, 4)) == 0.0);
    for (std::int64_t t : {1, 5, 64}) {
        CHECK(expected_position(evolve(kIdentityGame, {0.0, 0.0}, t)) == static_cast<double>(t));
    }
    const GameSpec flip{CoinParams(0.0, kPi / 2.0, 0.0), CoinParams(0.0, kPi / 2.0, 0.0), "A", 0.0};
    evolve(flip, kSymmetricInitialCoin, 40, [](const WalkState& s) { REQUIRE(std::abs(expected_position(s)) < 1e-12); });

    // |E[x]| <= t
    evolve(reference_game("ABB", 1.0), kSymmetricInitialCoin, 80, [](const WalkState& s) {
        REQUIRE(std::abs(expected_position(s)) <= static_cast<double>(s.step_count()));
    });
}

TEST_CASE("left/right probability difference") {
    CHECK(lr_probability_difference(init_state(kSymmetricInitialCoin, 2)) == 0.0);
    CHECK(std::abs(lr_probability_difference(evolve(kIdentityGame, kSymmetricInitialCoin, 1))) < 1e-15);
    CHECK(lr_probability_difference(evolve(kIdentityGame, {0.0, 0.0}, 9)) == 1.0);

    evolve(reference_game("AB", 2.0), kSymmetricInitialCoin, 60, [](const WalkState& s) {
        const double dp = lr_probability_difference(s);
        REQUIRE(dp >= -1.0 - 1e-12);
        REQUIRE(dp <= 1.0 + 1e-12);
    });
}

TEST_CASE("position distribution sums to one") {
    const auto d = position_distribution(evolve(reference_game("ABB", 0.5), kSymmetricInitialCoin, 100));
    double sum = 0.0;
    for (double p : d.probability) {
        CHECK(p >= 0.0);
        sum += p;
    }
    CHECK(std::abs(sum - 1.0) < 1e-10);
}

TEST_CASE("reduced coin density") {
    SUBCASE("initial product state is a pure projector") {
        const CoinDensityMatrix rho = reduced_coin_density(init_state(kSymmetricInitialCoin, 1));
        CHECK(rho.rho00 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(rho.rho11 == doctest::Approx(0.5).epsilon(1e-15));
        // a·conj(b) = (1/√2)·conj(-i/√2) = i/2
        CHECK(std::abs(rho.rho01 - cplx(0.0, 0.5)) < 1e-15);
        const auto ev = rho.eigenvalues();
        CHECK(std::abs(ev[0]) < 1e-12);
        CHECK(std::abs(ev[1] - 1.0) < 1e-12);
    }
    SUBCASE("identity coin after one step is maximally mixed") {
        const CoinDensityMatrix rho = reduced_coin_density(evolve(kIdentityGame, kSymmetricInitialCoin, 1));
        CHECK(rho.rho00 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(rho.rho11 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(rho.rho01 == cplx{});
    }
    SUBCASE("ABB at t = 5 matches the oracle state and is a valid density matrix") {
        const GameSpec g = reference_game("ABB", kPi / 2.0);
        const CoinDensityMatrix rho = reduced_coin_density(evolve(g, kSymmetricInitialCoin, 5));
        const CoinDensityMatrix ref = reduced_coin_density(dense_oracle_evolve(g, kSymmetricInitialCoin, 5));
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK(std::abs(rho.rho00 - ref.rho00) < 1e-12);
        CHECK(std::abs(rho.rho11 - ref.rho11) < 1e-12);
        CHECK(std::abs(rho.rho01 - ref.rho01) < 1e-12);
        for (double l : rho.eigenvalues()) {
            CHECK(l >= -1e-12);
            CHECK(l <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("entanglement entropy") {
    CHECK(entanglement_entropy({1.0, {0.0, 0.0}, 0.0}) == 0.0);
    CHECK(entanglement_entropy({0.5, {0.0, 0.5}, 0.5}) < 1e-12);
    CHECK(entanglement_entropy({0.5, {0.0, 0.0}, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    // -(1/4)log2(1/4) - (3/4)log2(3/4), mpmath
    CHECK(std::abs(entanglement_entropy({0.25, {0.0, 0.0}, 0.75}) - 0.8112781244591328639) < 1e-15);
    CHECK_THROWS_AS(entanglement_entropy({1.5, {0.0, 0.0}, -0.5}), NumericalError);
}

TEST_CASE("property: closed-form eigenvalues agree with a generic Hermitian solver") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> th(0.0, kPi);
    for (int k = 0; k < 200; ++k) {
        const GameSpec g{CoinParams(angle(rng), angle(rng), angle(rng)), CoinParams(angle(rng), angle(rng), angle(rng)),
                         k % 2 ? "ABB" : "AB", angle(rng)};
        const CoinDensityMatrix rho = reduced_coin_density(evolve(g, {th(rng), angle(rng)}, 1 + k % 40));
        Eigen::Matrix2cd m;
        m << rho.rho00, rho.rho01, rho.rho10(), rho.rho11;
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m);
        const auto ours = rho.eigenvalues();
        REQUIRE(std::abs(ours[0] - solver.eigenvalues()(0)) < 1e-10);
        REQUIRE(std::abs(ours[1] - solver.eigenvalues()(1)) < 1e-10);
        const double s = entanglement_entropy(rho);
        REQUIRE(s >= 0.0);
        REQUIRE(s <= 1.0 + 1e-12);
    }
}

TEST_CASE("property: S(0) = 0 for every initial coin") {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> th(0.0, kPi);
    std::uniform_real_distribution<double> ph(0.0, kTwoPi);
    for (int k = 0; k < 200; ++k) {
        REQUIRE(entanglement_entropy(reduced_coin_density(init_state({th(rng), ph(rng)}, 1))) < 1e-12);
    }
}

TEST_CASE("golden: more mass on the right while the mean drifts left") {
    // Game B alone at phi = pi/2 after 100 steps from (|0> - i|1>)/√2. Values
    // from the first verified run, cross-checked with an independent numpy
    // stepper.
    const WalkState s = evolve(reference_game("B", kPi / 2.0), kSymmetricInitialCoin, 100);
    const double e = expected_position(s);
    const double dp = lr_probability_difference(s);
    CHECK(dp > 0.0);
    CHECK(e < 0.0);
    CHECK(e == doctest::Approx(-1.3085027665019928).epsilon(1e-9));
    CHECK(dp == doctest::Approx(0.02538290063609526).epsilon(1e-9));
}

TEST_CASE("ObservableSeries records one row per step") {
    ObservableSeries series;
    evolve(reference_game("AB", 0.0), kSymmetricInitialCoin, 12, series.recorder());
    REQUIRE(series.size() == 12);
    CHECK(series.rows().front().step == 1);
    CHECK(series.rows().back().step == 12);
    for (const auto& r : series.rows()) {
        CHECK(std::isfinite(r.expected_position));
        CHECK(std::isfinite(r.delta_p));
        CHECK(std::isfinite(r.entropy));
    }
}
