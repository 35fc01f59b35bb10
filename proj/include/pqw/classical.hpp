#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pqw::classical {

/// Bias c of the classical games; 0 <= c < 1/10 keeps every win probability in (0, 1).
class ClassicalParams {
public:
    explicit ClassicalParams(double c);

    double c() const { return c_; }
    double p_a() const { return 0.5 - c_; }
    double p_b1() const { return 0.1 - c_; }   // capital mod 3 == 0
    double p_b2() const { return 0.75 - c_; }  // otherwise

private:
    double c_;
};

/// Row-stochastic matrix over capital mod 3; rows are from-states.
using TransitionMatrix = std::array<std::array<double, 3>, 3>;
using Distribution3 = std::array<double, 3>;

TransitionMatrix transition_matrix(const ClassicalParams& params);

/// Solves d·T = d, Σd = 1 directly. Throws NumericalError when the system is
/// singular or the residual ‖dT - d‖∞ exceeds 1e-12.
Distribution3 stationary_distribution(const TransitionMatrix& t);

/// Per-state expected winnings of Game B: 2p - 1 for the coin played there.
Distribution3 game_b_state_winnings(const ClassicalParams& params);

/// d·w for the stationary distribution of Game B.
double game_b_expected_value(const ClassicalParams& params);

/// Capital mod 3 in {0, 1, 2}, also for negative capital.
int capital_state(std::int64_t capital);

struct ClassicalTrajectory {
    std::vector<double> mean_capital;  // index i is the mean after step i + 1
    std::vector<double> stderr_capital;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo of the capital under a cyclic A/B schedule. Each trial draws
/// from its own stream keyed by (seed, trial index), and per-step sums are
/// accumulated in integers, so the result does not depend on `threads`.
ClassicalTrajectory simulate_classical(const std::string& sequence, const ClassicalParams& params,
                                       std::int64_t steps, std::int64_t trials, std::uint64_t seed,
                                       unsigned threads = 1);

}  // namespace pqw::classical
