#include "pqw/classical.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "pqw/errors.hpp"
#include "pqw/parallel.hpp"

namespace pqw::classical {

ClassicalParams::ClassicalParams(double c) : c_(c) {
    if (!std::isfinite(c) || c < 0.0 || c >= 0.1) {
        throw DomainError("bias c must satisfy 0 <= c < 0.1, got " + std::to_string(c));
    }
}

TransitionMatrix transition_matrix(const ClassicalParams& params) {
    const double p1 = params.p_b1();
    const double p2 = params.p_b2();
    // A win moves state s to s+1, a loss to s-1 (mod 3).
    return {{{0.0, p1, 1.0 - p1}, {1.0 - p2, 0.0, p2}, {p2, 1.0 - p2, 0.0}}};
}

Distribution3 stationary_distribution(const TransitionMatrix& t) {
    // (Tᵀ - I)d = 0 with the last equation replaced by Σd = 1.
    Eigen::Matrix3d a;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a(i, j) = t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - (i == j ? 1.0 : 0.0);
    }
    a.row(2).setOnes();
    const Eigen::Vector3d rhs(0.0, 0.0, 1.0);

    const Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
    if (lu.rank() < 3 || lu.rcond() < 1e-12) {
        throw NumericalError("stationary distribution system is singular or ill-conditioned");
    }
    const Eigen::Vector3d d = lu.solve(rhs);

    Distribution3 out{d(0), d(1), d(2)};
    double residual = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        double dt = 0.0;
        for (std::size_t i = 0; i < 3; ++i) dt += out[i] * t[i][j];
        residual = std::max(residual, std::abs(dt - out[j]));
    }
    if (residual > 1e-12 || *std::min_element(out.begin(), out.end()) < -1e-12) {
        throw NumericalError("stationary distribution solve did not converge (residual " +
                             std::to_string(residual) + ")");
    }
    return out;
}

Distribution3 game_b_state_winnings(const ClassicalParams& params) {
    const double w1 = 2.0 * params.p_b1() - 1.0;
    const double w2 = 2.0 * params.p_b2() - 1.0;
    return {w1, w2, w2};
}

double game_b_expected_value(const ClassicalParams& params) {
    const Distribution3 d = stationary_distribution(transition_matrix(params));
    const Distribution3 w = game_b_state_winnings(params);
    return d[0] * w[0] + d[1] * w[1] + d[2] * w[2];
}

int capital_state(std::int64_t capital) {
    const auto r = static_cast<int>(capital % 3);
    return r < 0 ? r + 3 : r;
}

namespace {

constexpr std::int64_t kTrialsPerBlock = 2048;

struct BlockSums {
    std::vector<std::int64_t> sum;
    std::vector<std::int64_t> sum_sq;
};

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

ClassicalTrajectory simulate_classical(const std::string& sequence, const ClassicalParams& params,
                                       std::int64_t steps, std::int64_t trials, std::uint64_t seed,
                                       unsigned threads) {
    if (sequence.empty() || !std::all_of(sequence.begin(), sequence.end(), [](char c) { return c == 'A' || c == 'B'; })) {
        throw DomainError("game sequence must match ^[AB]+$, got \"" + sequence + "\"");
    }
    if (steps < 1) throw DomainError("steps must be >= 1");
    if (trials < 1) throw DomainError("trials must be >= 1");

    const auto n_steps = static_cast<std::size_t>(steps);
    const std::int64_t n_blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));

    const double p_a = params.p_a();
    const double p_b[3] = {params.p_b1(), params.p_b2(), params.p_b2()};

    parallel_for(blocks.size(), threads, [&](std::size_t block) {
        BlockSums& out = blocks[block];
        out.sum.assign(n_steps, 0);
        out.sum_sq.assign(n_steps, 0);
        const std::int64_t first = static_cast<std::int64_t>(block) * kTrialsPerBlock;
        const std::int64_t last = std::min(trials, first + kTrialsPerBlock);
        for (std::int64_t trial = first; trial < last; ++trial) {
            auto rng = trial_stream(seed, static_cast<std::uint64_t>(trial));
            std::int64_t capital = 0;
            for (std::size_t t = 0; t < n_steps; ++t) {
                const char game = sequence[t % sequence.size()];
                const double p = game == 'A' ? p_a : p_b[capital_state(capital)];
                capital += uniform01(rng) < p ? 1 : -1;
                out.sum[t] += capital;
                out.sum_sq[t] += capital * capital;
            }
        }
    });

    ClassicalTrajectory traj;
    traj.trials = trials;
    traj.seed = seed;
    traj.mean_capital.resize(n_steps);
    traj.stderr_capital.resize(n_steps);
    const auto n = static_cast<__int128>(trials);
    for (std::size_t t = 0; t < n_steps; ++t) {
        __int128 sum = 0;
        __int128 sum_sq = 0;
        for (const auto& b : blocks) {
            sum += b.sum[t];
            sum_sq += b.sum_sq[t];
        }
        traj.mean_capital[t] = static_cast<double>(sum) / static_cast<double>(trials);
        if (trials > 1) {
            // n·Σx² - (Σx)² is exact in 128-bit integers
            const auto centered = static_cast<double>(n * sum_sq - sum * sum);
            const double var = centered / (static_cast<double>(trials) * static_cast<double>(trials - 1));
            traj.stderr_capital[t] = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
        } else {
            traj.stderr_capital[t] = 0.0;
        }
    }
    return traj;
}

}  // namespace pqw::classical
