#include "pqw/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pqw/errors.hpp"

namespace pqw {

namespace {

constexpr double kEigenFloor = 1e-15;
constexpr double kEigenSlack = 1e-10;

}  // namespace

std::array<double, 2> CoinDensityMatrix::eigenvalues() const {
    // λ = tr/2 ± sqrt(tr²/4 - det)
    const double half_tr = 0.5 * trace();
    const double disc = std::max(0.0, half_tr * half_tr - determinant());
    const double r = std::sqrt(disc);
    return {half_tr - r, half_tr + r};
}

PositionDistribution position_distribution(const WalkState& state) {
    PositionDistribution dist;
    dist.half_width = state.half_width();
    const auto a = state.up_amplitudes();
    const auto b = state.down_amplitudes();
    dist.probability.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) dist.probability[i] = std::norm(a[i]) + std::norm(b[i]);
    return dist;
}

double expected_position(const WalkState& state) {
    const auto a = state.up_amplitudes();
    const auto b = state.down_amplitudes();
    const std::int64_t L = state.half_width();
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto x = static_cast<std::int64_t>(i) - L;
        e += static_cast<double>(x) * (std::norm(a[i]) + std::norm(b[i]));
    }
    return e;
}

double position_stddev(const WalkState& state) {
    const auto a = state.up_amplitudes();
    const auto b = state.down_amplitudes();
    const std::int64_t L = state.half_width();
    const double mean = expected_position(state);
    double var = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double dx = static_cast<double>(static_cast<std::int64_t>(i) - L) - mean;
        var += dx * dx * (std::norm(a[i]) + std::norm(b[i]));
    }
    return std::sqrt(var);
}

double lr_probability_difference(const WalkState& state) {
    const auto a = state.up_amplitudes();
    const auto b = state.down_amplitudes();
    const auto origin = static_cast<std::size_t>(state.half_width());
    double left = 0.0;
    double right = 0.0;
    for (std::size_t i = 0; i < origin; ++i) left += std::norm(a[i]) + std::norm(b[i]);
    for (std::size_t i = origin + 1; i < a.size(); ++i) right += std::norm(a[i]) + std::norm(b[i]);
    return right - left;
}

CoinDensityMatrix reduced_coin_density(const WalkState& state) {
    const auto a = state.up_amplitudes();
    const auto b = state.down_amplitudes();
    CoinDensityMatrix rho{0.0, {0.0, 0.0}, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        rho.rho00 += std::norm(a[i]);
        rho.rho01 += a[i] * std::conj(b[i]);
        rho.rho11 += std::norm(b[i]);
    }
    return rho;
}

double entanglement_entropy(const CoinDensityMatrix& rho) {
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (!std::isfinite(lambda) || lambda < -kEigenSlack || lambda > 1.0 + kEigenSlack) {
            throw NumericalError("coin density eigenvalue " + std::to_string(lambda) + " outside [0, 1]");
        }
        if (lambda < kEigenFloor) continue;
        s -= lambda * std::log2(lambda);
    }
    return std::max(0.0, s);
}

ObservableRow measure(const WalkState& state) {
    return {state.step_count(), expected_position(state), lr_probability_difference(state),
            entanglement_entropy(reduced_coin_density(state))};
}

}  // namespace pqw
