#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqw/coin.hpp"

namespace pqw {

enum class GameLabel : char { A = 'A', B = 'B' };

/// Two coins, a cyclic A/B schedule and the phase applied at x = 0.
struct GameSpec {
    CoinParams coin_a;
    CoinParams coin_b;
    std::string sequence;
    double origin_phase = 0.0;

    /// Throws DomainError unless sequence matches ^[AB]+$ and φ is finite.
    void validate() const;
};

/// Initial coin state cosθ|0> + e^{iϕ}sinθ|1> at the origin.
struct InitialCoin {
    double theta = 0.0;
    double varphi = 0.0;

    void validate() const;
};

/// (|0> - i|1>)/√2, i.e. θ = π/4, ϕ = 3π/2.
inline constexpr InitialCoin kSymmetricInitialCoin{kPi / 4.0, 3.0 * kPi / 2.0};

/// Coin ⊗ position wavefunction on sites x ∈ [-L, L].
///
/// Amplitudes live in two flat arrays indexed by x + L. After t steps from a
/// state localized at the origin the support is confined to |x| <= t, and the
/// stepper never touches sites outside that cone.
class WalkState {
public:
    WalkState(std::int64_t half_width, std::vector<cplx> up, std::vector<cplx> down,
              std::int64_t step_count);

    std::int64_t half_width() const { return half_width_; }
    std::int64_t step_count() const { return step_count_; }
    std::size_t site_count() const { return up_.size(); }

    /// a_x (coin |0>) and b_x (coin |1>).
    cplx up(std::int64_t x) const { return up_[index(x)]; }
    cplx down(std::int64_t x) const { return down_[index(x)]; }

    std::span<const cplx> up_amplitudes() const { return up_; }
    std::span<const cplx> down_amplitudes() const { return down_; }

    double total_norm() const;

    /// Applies one coin-then-shift step in place. The origin site uses e^{iφ}·coin.
    void advance(const CoinMatrix& coin, double phi);

private:
    std::size_t index(std::int64_t x) const { return static_cast<std::size_t>(x + half_width_); }

    std::int64_t half_width_;
    std::vector<cplx> up_;
    std::vector<cplx> down_;
    std::int64_t step_count_;
};

WalkState init_state(const InitialCoin& coin, std::int64_t half_width);

/// sequence[t mod len(sequence)]
GameLabel coin_for_step(std::string_view sequence, std::int64_t t);

/// Functional form of WalkState::advance.
WalkState step(WalkState state, const CoinMatrix& coin, double phi);

using StepObserver = std::function<void(const WalkState&)>;

/// Runs `steps` steps on a lattice with L = steps. The observer, if set, sees
/// the state after every step.
WalkState evolve(const GameSpec& spec, const InitialCoin& initial, std::int64_t steps,
                 const StepObserver& observer = {});

inline constexpr std::int64_t kDenseOracleMaxSteps = 8;

/// Reference evolution that builds the full 2(2L+1)-dimensional step unitary
/// S·(C ⊗ I) as a dense matrix and applies it by matrix-vector products.
/// Limited to kDenseOracleMaxSteps steps.
WalkState dense_oracle_evolve(const GameSpec& spec, const InitialCoin& initial, std::int64_t steps);

/// max over sites of |Δa_x| and |Δb_x|. States must share half_width.
double max_amplitude_diff(const WalkState& lhs, const WalkState& rhs);

}  // namespace pqw
