#pragma once

#include <array>
#include <complex>

namespace pqw {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Reduces a finite angle into [0, 2π). Throws DomainError on NaN/inf.
double normalize_angle(double radians);

/// SU(2) coin angles (α, β, γ), stored reduced into [0, 2π).
class CoinParams {
public:
    CoinParams() = default;
    CoinParams(double alpha, double beta, double gamma);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    bool operator==(const CoinParams&) const = default;

private:
    double alpha_ = 0.0;
    double beta_ = 0.0;
    double gamma_ = 0.0;
};

/// Dense row-major 2x2 complex matrix.
struct CoinMatrix {
    cplx m00{1.0, 0.0};
    cplx m01{0.0, 0.0};
    cplx m10{0.0, 0.0};
    cplx m11{1.0, 0.0};

    static CoinMatrix identity() { return {}; }

    cplx determinant() const { return m00 * m11 - m01 * m10; }

    std::array<cplx, 4> entries() const { return {m00, m01, m10, m11}; }

    bool operator==(const CoinMatrix&) const = default;
};

/// [[e^{iα}cosβ, -e^{-iγ}sinβ], [e^{iγ}sinβ, e^{-iα}cosβ]]
CoinMatrix build_coin(const CoinParams& params);

/// e^{iφ}·coin. The angle is reduced mod 2π before the exponential, so φ and
/// φ + 2πk give identical matrices whenever the reductions agree.
CoinMatrix apply_origin_phase(const CoinMatrix& coin, double phi);

/// max |(M†M - I)_{ij}|
double unitarity_defect(const CoinMatrix& m);

/// Largest entrywise modulus of the difference.
double max_abs_diff(const CoinMatrix& lhs, const CoinMatrix& rhs);

}  // namespace pqw
