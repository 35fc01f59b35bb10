#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pqw/walk.hpp"

namespace pqw {

/// P(x) = |a_x|^2 + |b_x|^2 over x ∈ [-L, L].
struct PositionDistribution {
    std::int64_t half_width = 0;
    std::vector<double> probability;

    double at(std::int64_t x) const { return probability[static_cast<std::size_t>(x + half_width)]; }
};

/// Reduced coin state ρ_c = Tr_pos |Ψ><Ψ|, stored as its three independent entries.
struct CoinDensityMatrix {
    double rho00 = 1.0;
    cplx rho01{0.0, 0.0};
    double rho11 = 0.0;

    cplx rho10() const { return std::conj(rho01); }
    double trace() const { return rho00 + rho11; }
    double determinant() const { return rho00 * rho11 - std::norm(rho01); }

    /// Closed-form eigenvalues, ascending.
    std::array<double, 2> eigenvalues() const;
};

PositionDistribution position_distribution(const WalkState& state);

double expected_position(const WalkState& state);

/// Standard deviation of the position distribution.
double position_stddev(const WalkState& state);

/// Σ_{x>0} P(x) - Σ_{x<0} P(x); the origin is in neither sum.
double lr_probability_difference(const WalkState& state);

CoinDensityMatrix reduced_coin_density(const WalkState& state);

/// Von Neumann entropy in bits. Eigenvalues below 1e-15 count as zero; any
/// eigenvalue outside [-1e-10, 1 + 1e-10] raises NumericalError.
double entanglement_entropy(const CoinDensityMatrix& rho);

struct ObservableRow {
    std::int64_t step = 0;
    double expected_position = 0.0;
    double delta_p = 0.0;
    double entropy = 0.0;
};

ObservableRow measure(const WalkState& state);

/// Per-step record of E[x], ΔP and S(t).
class ObservableSeries {
public:
    void record(const WalkState& state) { rows_.push_back(measure(state)); }

    /// Observer suitable for evolve().
    StepObserver recorder() {
        return [this](const WalkState& s) { record(s); };
    }

    const std::vector<ObservableRow>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<ObservableRow> rows_;
};

}  // namespace pqw
