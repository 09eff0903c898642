#pragma once

#include <complex>
#include <utility>

#include "quatsurf/quaternion.hpp"

namespace quatsurf {

/// Spectral point of the associated families. The CMC parameter mu and the
/// isothermic parameter rho are linked 2:1 by
///   a = (mu + 1/mu)/2,  b = i(1/mu - mu)/2,  a^2 + b^2 = 1,  mu = a + i b,
///   rho = (1 - a)/2 = -(mu - 1)^2 / (4 mu).
struct SpectralPoint {
    Cplx mu;
    Cplx rho;
    Cplx a;
    Cplx b;

    bool degenerate() const; // mu = +-1, i.e. rho in {0, 1}
};

/// Builds the spectral point from mu. Throws DegenerateSpectralError for mu = 0;
/// mu = +-1 is degenerate-but-allowed and only flagged.
SpectralPoint spectralFromMu(const Cplx& mu);

/// Builds the pair mu_pm = 1 - 2 rho +- 2 i sqrt(rho (1 - rho)) from rho, with
/// sqrt(rho(1-rho)) := sqrt(rho) sqrt(1-rho) on principal branches. The pair is
/// branch independent; it is returned sorted by imaginary part descending,
/// ties broken by real part descending.
std::pair<SpectralPoint, SpectralPoint> spectralFromRho(const Cplx& rho);

} // namespace quatsurf
