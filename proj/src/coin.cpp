#include "pqw/coin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pqw/errors.hpp"

namespace pqw {

double normalize_angle(double radians) {
    if (!std::isfinite(radians)) {
        throw DomainError("angle must be finite, got " + std::to_string(radians));
    }
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2π
    if (r >= kTwoPi) r = 0.0;
    return r;
}

CoinParams::CoinParams(double alpha, double beta, double gamma)
    : alpha_(normalize_angle(alpha)), beta_(normalize_angle(beta)), gamma_(normalize_angle(gamma)) {}

CoinMatrix build_coin(const CoinParams& p) {
    const double cb = std::cos(p.beta());
    const double sb = std::sin(p.beta());
    const cplx ea = std::polar(1.0, p.alpha());
    const cplx eg = std::polar(1.0, p.gamma());
    CoinMatrix m;
    m.m00 = ea * cb;
    m.m01 = -std::conj(eg) * sb;
    m.m10 = eg * sb;
    m.m11 = std::conj(ea) * cb;
    return m;
}

CoinMatrix apply_origin_phase(const CoinMatrix& coin, double phi) {
    const cplx ph = std::polar(1.0, normalize_angle(phi));
    return {ph * coin.m00, ph * coin.m01, ph * coin.m10, ph * coin.m11};
}

double unitarity_defect(const CoinMatrix& m) {
    // (M†M)_{ij} = Σ_k conj(M_{ki}) M_{kj}
    const cplx g00 = std::conj(m.m00) * m.m00 + std::conj(m.m10) * m.m10;
    const cplx g01 = std::conj(m.m00) * m.m01 + std::conj(m.m10) * m.m11;
    const cplx g10 = std::conj(m.m01) * m.m00 + std::conj(m.m11) * m.m10;
    const cplx g11 = std::conj(m.m01) * m.m01 + std::conj(m.m11) * m.m11;
    return std::max({std::abs(g00 - 1.0), std::abs(g01), std::abs(g10), std::abs(g11 - 1.0)});
}

double max_abs_diff(const CoinMatrix& lhs, const CoinMatrix& rhs) {
    const auto a = lhs.entries();
    const auto b = rhs.entries();
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace pqw
