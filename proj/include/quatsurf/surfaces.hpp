#pragma once

#include "quatsurf/immersion.hpp"

namespace quatsurf {

/// Cylinder f(x,y) = (i x + j e^{-iy}) / 2, a CMC surface with H = 1 and
/// Gauss map N = -j e^{-iy}. Requires a grid periodic in y with period 2 pi.
ImmersionField makeCylinder(const DomainGrid& grid);

/// Surface of revolution f(x,y) = i p(x) + j q(x) e^{-iy} for a profile
/// curve with (p')^2 + (q')^2 = q^2; throws ProfileInvalidError when the
/// constraint residual exceeds 1e-8 or q is not positive.
ImmersionField makeRevolution(const ProfileCurve& profile, const DomainGrid& grid);

/// The running example profile p = -x + x^3/3, q = 1 + x^2.
ProfileCurve exampleProfile();

/// Unit round sphere (valid for Gauss data, excluded from dualization).
ImmersionField makeSphere(const DomainGrid& grid);

/// Gauss data from *df = N df = -df R and the mean curvature from
/// -df H = (dN)'. Throws DegenerateImmersionError listing nodes with
/// |f_x| below 1e-10.
GaussData gaussMap(const ImmersionField& f);

struct DualResult {
    ImmersionField surface;
    double closedness_residual; // max mixed-partials mismatch of the dual one-form
};

/// Christoffel dual by integrating df^d = f_x^{-1} dx - f_y^{-1} dy along
/// the x axis row and then per column, gauged by f^d(origin) = 0. The
/// closedness residual quantifies path dependence; above `tol` this throws
/// NotClosedError (coordinates not conformal curvature-line). The residual is
/// measured by 4th-order differences of the dual one-form, whose floor on a
/// 64x64 grid sits near 1e-5; the default tolerance stays above that.
DualResult christoffelDual(const ImmersionField& f, double tol = 1e-3);

/// Parallel CMC surface g = f + N, itself a dual surface of f. Requires f
/// CMC with H = 1 within `h_tol`; throws RoundSphereError when ||dg|| is
/// identically below 1e-10 ||df||.
ImmersionField parallelSurface(const ImmersionField& f, const GaussData& gauss,
                               double h_tol = 1e-4);

/// Discrete quadratic form of df ^ dg at a node, (df^dg)(dx, dy) =
/// f_x g_y - f_y g_x; vanishes for dual pairs.
Quaternion wedgeForm(const ImmersionField& f, const ImmersionField& g, std::size_t i,
                     std::size_t j);
double maxWedgeResidual(const ImmersionField& f, const ImmersionField& g);

} // namespace quatsurf
