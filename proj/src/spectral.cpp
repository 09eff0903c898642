#include "quatsurf/spectral.hpp"

#include <cmath>

#include "quatsurf/errors.hpp"

namespace quatsurf {

bool SpectralPoint::degenerate() const {
    return std::abs(mu - 1.0) < 1e-12 || std::abs(mu + 1.0) < 1e-12;
}

SpectralPoint spectralFromMu(const Cplx& mu) {
    if (std::abs(mu) < 1e-300) {
        throw DegenerateSpectralError("spectralFromMu: mu = 0");
    }
    SpectralPoint p;
    p.mu = mu;
    p.a = 0.5 * (mu + 1.0 / mu);
    p.b = Cplx(0, 0.5) * (1.0 / mu - mu);
    // direct form; (1 - a)/2 loses digits through the |mu| + 1/|mu| scale
    p.rho = -(mu - 1.0) * (mu - 1.0) / (4.0 * mu);
    return p;
}

std::pair<SpectralPoint, SpectralPoint> spectralFromRho(const Cplx& rho) {
    const Cplx a = 1.0 - 2.0 * rho;
    const Cplx b = 2.0 * std::sqrt(rho) * std::sqrt(1.0 - rho);
    // mu_+ mu_- = a^2 + b^2 = 1; form the larger root directly and take the
    // other as its reciprocal, which avoids the cancellation in a -+ ib.
    const Cplx cand_plus = a + Cplx(0, 1) * b;
    const Cplx cand_minus = a - Cplx(0, 1) * b;
    SpectralPoint plus, minus;
    plus.a = minus.a = a;
    plus.rho = minus.rho = rho;
    plus.b = b;
    minus.b = -b;
    if (std::abs(cand_plus) >= std::abs(cand_minus)) {
        plus.mu = cand_plus;
        minus.mu = std::abs(cand_plus) > 0 ? 1.0 / cand_plus : cand_minus;
    } else {
        minus.mu = cand_minus;
        plus.mu = 1.0 / cand_minus;
    }
    auto precedes = [](const SpectralPoint& l, const SpectralPoint& r) {
        if (l.mu.imag() != r.mu.imag()) return l.mu.imag() > r.mu.imag();
        return l.mu.real() >= r.mu.real();
    };
    if (!precedes(plus, minus)) std::swap(plus, minus);
    return {plus, minus};
}

} // namespace quatsurf
