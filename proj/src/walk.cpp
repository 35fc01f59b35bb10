#include "pqw/walk.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "pqw/errors.hpp"

namespace pqw {

void GameSpec::validate() const {
    if (sequence.empty()) throw DomainError("game sequence must not be empty");
    for (char c : sequence) {
        if (c != 'A' && c != 'B') {
            throw DomainError("game sequence must contain only 'A' and 'B', got \"" + sequence + "\"");
        }
    }
    if (!std::isfinite(origin_phase)) throw DomainError("origin phase must be finite");
}

void InitialCoin::validate() const {
    if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) {
        throw DomainError("initial coin theta must lie in [0, pi], got " + std::to_string(theta));
    }
    // Closed at 2π so that inclusive [0, 2π] grids are accepted.
    if (!std::isfinite(varphi) || varphi < 0.0 || varphi > kTwoPi) {
        throw DomainError("initial coin varphi must lie in [0, 2pi], got " + std::to_string(varphi));
    }
}

WalkState::WalkState(std::int64_t half_width, std::vector<cplx> up, std::vector<cplx> down,
                     std::int64_t step_count)
    : half_width_(half_width), up_(std::move(up)), down_(std::move(down)), step_count_(step_count) {
    if (half_width_ < 1) throw DomainError("lattice half-width must be >= 1");
    const auto sites = static_cast<std::size_t>(2 * half_width_ + 1);
    if (up_.size() != sites || down_.size() != sites) {
        throw DomainError("amplitude arrays must have 2L+1 entries");
    }
    if (step_count_ < 0 || step_count_ > half_width_) {
        throw CapacityError("step count " + std::to_string(step_count_) + " exceeds lattice half-width " +
                            std::to_string(half_width_));
    }
}

double WalkState::total_norm() const {
    double n = 0.0;
    for (std::size_t i = 0; i < up_.size(); ++i) n += std::norm(up_[i]) + std::norm(down_[i]);
    return n;
}

void WalkState::advance(const CoinMatrix& coin, double phi) {
    if (step_count_ + 1 > half_width_) {
        throw CapacityError("step " + std::to_string(step_count_ + 1) + " would leave the lattice of half-width " +
                            std::to_string(half_width_));
    }
    const CoinMatrix origin = apply_origin_phase(coin, phi);
    const std::int64_t t = step_count_;
    const std::size_t lo = index(-t);
    const std::size_t hi = index(t);  // inclusive
    const std::size_t zero = index(0);

    for (std::size_t i = lo; i <= hi; ++i) {
        const CoinMatrix& m = (i == zero) ? origin : coin;
        const cplx a = up_[i];
        const cplx b = down_[i];
        up_[i] = m.m00 * a + m.m01 * b;
        down_[i] = m.m10 * a + m.m11 * b;
    }

    // |0> moves right: a'[x+1] = a[x] over x ∈ [-t, t]
    std::copy_backward(up_.begin() + static_cast<std::ptrdiff_t>(lo), up_.begin() + static_cast<std::ptrdiff_t>(hi + 1),
                       up_.begin() + static_cast<std::ptrdiff_t>(hi + 2));
    up_[lo] = cplx{};
    // |1> moves left: b'[x-1] = b[x]
    std::copy(down_.begin() + static_cast<std::ptrdiff_t>(lo), down_.begin() + static_cast<std::ptrdiff_t>(hi + 1),
              down_.begin() + static_cast<std::ptrdiff_t>(lo - 1));
    down_[hi] = cplx{};

    ++step_count_;
}

WalkState init_state(const InitialCoin& coin, std::int64_t half_width) {
    coin.validate();
    if (half_width < 1) throw DomainError("lattice half-width must be >= 1");
    const auto sites = static_cast<std::size_t>(2 * half_width + 1);
    std::vector<cplx> up(sites);
    std::vector<cplx> down(sites);
    const auto origin = static_cast<std::size_t>(half_width);
    up[origin] = cplx{std::cos(coin.theta), 0.0};
    down[origin] = std::polar(1.0, coin.varphi) * std::sin(coin.theta);
    return WalkState(half_width, std::move(up), std::move(down), 0);
}

GameLabel coin_for_step(std::string_view sequence, std::int64_t t) {
    if (sequence.empty()) throw DomainError("game sequence must not be empty");
    if (t < 0) throw DomainError("step index must be non-negative");
    const char c = sequence[static_cast<std::size_t>(t % static_cast<std::int64_t>(sequence.size()))];
    if (c != 'A' && c != 'B') throw DomainError(std::string("invalid game label '") + c + "'");
    return static_cast<GameLabel>(c);
}

WalkState step(WalkState state, const CoinMatrix& coin, double phi) {
    state.advance(coin, phi);
    return state;
}

WalkState evolve(const GameSpec& spec, const InitialCoin& initial, std::int64_t steps,
                 const StepObserver& observer) {
    spec.validate();
    if (steps < 1) throw DomainError("steps must be >= 1");
    const CoinMatrix coin_a = build_coin(spec.coin_a);
    const CoinMatrix coin_b = build_coin(spec.coin_b);
    WalkState state = init_state(initial, steps);
    for (std::int64_t t = 0; t < steps; ++t) {
        const CoinMatrix& coin = coin_for_step(spec.sequence, t) == GameLabel::A ? coin_a : coin_b;
        state.advance(coin, spec.origin_phase);
        if (observer) observer(state);
    }
    return state;
}

namespace {

// Basis ordering: index = coin * (2L+1) + (x + L).
Eigen::MatrixXcd dense_step_unitary(const CoinMatrix& coin, double phi, std::int64_t half_width) {
    const Eigen::Index sites = 2 * half_width + 1;
    const Eigen::Index dim = 2 * sites;
    const cplx phase = std::polar(1.0, normalize_angle(phi));

    Eigen::MatrixXcd coin_op = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < sites; ++s) {
        const cplx f = (s == half_width) ? phase : cplx{1.0, 0.0};
        coin_op(s, s) = f * coin.m00;
        coin_op(s, sites + s) = f * coin.m01;
        coin_op(sites + s, s) = f * coin.m10;
        coin_op(sites + s, sites + s) = f * coin.m11;
    }

    Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < sites; ++s) {
        if (s + 1 < sites) shift(s + 1, s) = 1.0;                  // |0><0| ⊗ |x+1><x|
        if (s - 1 >= 0) shift(sites + s - 1, sites + s) = 1.0;     // |1><1| ⊗ |x-1><x|
    }
    return shift * coin_op;
}

}  // namespace

WalkState dense_oracle_evolve(const GameSpec& spec, const InitialCoin& initial, std::int64_t steps) {
    spec.validate();
    initial.validate();
    if (steps < 0) throw DomainError("steps must be non-negative");
    if (steps > kDenseOracleMaxSteps) {
        throw CapacityError("dense oracle is limited to " + std::to_string(kDenseOracleMaxSteps) + " steps");
    }
    const std::int64_t half_width = std::max<std::int64_t>(steps, 1);
    const Eigen::Index sites = 2 * half_width + 1;

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * sites);
    psi(half_width) = std::cos(initial.theta);
    psi(sites + half_width) = std::polar(1.0, initial.varphi) * std::sin(initial.theta);

    const Eigen::MatrixXcd u_a = dense_step_unitary(build_coin(spec.coin_a), spec.origin_phase, half_width);
    const Eigen::MatrixXcd u_b = dense_step_unitary(build_coin(spec.coin_b), spec.origin_phase, half_width);
    for (std::int64_t t = 0; t < steps; ++t) {
        const char label = spec.sequence[static_cast<std::size_t>(t) % spec.sequence.size()];
        psi = (label == 'A' ? u_a : u_b) * psi;
    }

    std::vector<cplx> up(static_cast<std::size_t>(sites));
    std::vector<cplx> down(static_cast<std::size_t>(sites));
    for (Eigen::Index s = 0; s < sites; ++s) {
        up[static_cast<std::size_t>(s)] = psi(s);
        down[static_cast<std::size_t>(s)] = psi(sites + s);
    }
    return WalkState(half_width, std::move(up), std::move(down), steps);
}

double max_amplitude_diff(const WalkState& lhs, const WalkState& rhs) {
    if (lhs.half_width() != rhs.half_width()) {
        throw DomainError("cannot compare states on lattices of different size");
    }
    double d = 0.0;
    const auto la = lhs.up_amplitudes();
    const auto lb = lhs.down_amplitudes();
    const auto ra = rhs.up_amplitudes();
    const auto rb = rhs.down_amplitudes();
    for (std::size_t i = 0; i < la.size(); ++i) {
        d = std::max({d, std::abs(la[i] - ra[i]), std::abs(lb[i] - rb[i])});
    }
    return d;
}

}  // namespace pqw
