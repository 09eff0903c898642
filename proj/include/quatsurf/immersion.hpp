#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "quatsurf/grid.hpp"
#include "quatsurf/quaternion.hpp"

namespace quatsurf {

using SurfaceFn = std::function<Quaternion(double, double)>;

/// Closed-form closures for a surface and its first derivatives, with optional
/// left-normal closures. When present these are preferred over finite
/// differences everywhere (transport, Gauss data, residuals).
struct AnalyticSurface {
    SurfaceFn f, fx, fy;
    SurfaceFn N, Nx, Ny; // may be empty

    bool hasNormal() const { return static_cast<bool>(N); }
};

/// Sampled conformal immersion on a rectangular grid. Immutable after
/// construction; node derivative fields are precomputed (analytic values at
/// nodes when a provider exists, 4th-order central differences otherwise,
/// one-sided 2nd-order at non-periodic boundaries).
class ImmersionField {
  public:
    ImmersionField(DomainGrid grid, std::vector<Quaternion> values, bool is_R3,
                   std::optional<AnalyticSurface> analytic = std::nullopt);

    static ImmersionField fromAnalytic(const DomainGrid& grid, AnalyticSurface analytic,
                                       bool is_R3);

    const DomainGrid& grid() const { return grid_; }
    bool isR3() const { return is_R3_; }
    bool hasAnalytic() const { return analytic_.has_value(); }
    const std::optional<AnalyticSurface>& analytic() const { return analytic_; }

    const std::vector<Quaternion>& values() const { return values_; }
    const Quaternion& value(std::size_t i, std::size_t j) const {
        return values_[grid_.index(i, j)];
    }
    const Quaternion& dx(std::size_t i, std::size_t j) const { return dxs_[grid_.index(i, j)]; }
    const Quaternion& dy(std::size_t i, std::size_t j) const { return dys_[grid_.index(i, j)]; }
    const std::vector<Quaternion>& dxField() const { return dxs_; }
    const std::vector<Quaternion>& dyField() const { return dys_; }

    /// Value / derivatives at arbitrary parameter points: analytic when
    /// available, otherwise bilinear interpolation of the node fields.
    Quaternion at(double x, double y) const;
    Quaternion dxAt(double x, double y) const;
    Quaternion dyAt(double x, double y) const;

    /// max over interior nodes of |<f_x,f_y>| + ||f_x| - |f_y||.
    double conformalityResidual() const;

  private:
    DomainGrid grid_;
    std::vector<Quaternion> values_;
    bool is_R3_ = false;
    std::optional<AnalyticSurface> analytic_;
    std::vector<Quaternion> dxs_, dys_;

    void computeDerivatives();
};

/// 4th-order central difference of an arbitrary node field (2nd-order
/// one-sided at non-periodic boundaries); shared by residual checks.
std::vector<Quaternion> differentiateField(const DomainGrid& grid,
                                           const std::vector<Quaternion>& field, bool inX);

/// Bilinear sample of a node field at (x, y).
Quaternion interpolateField(const DomainGrid& grid, const std::vector<Quaternion>& field,
                            double x, double y);

/// Gauss data (N, R, H) of an immersion. For surfaces in R^3, N = R and the
/// w-component of H is the scalar mean curvature.
struct GaussData {
    std::vector<Quaternion> N, R, H;
    std::optional<AnalyticSurface> analytic; // normal closures if the source had them
    double unit_residual = 0;   // max | |N|^2 - 1 |, | |R|^2 - 1 |
    double gauss_residual = 0;  // max ||f_y - N f_x|| + ||f_y + f_x R|| (interior)
};

/// Profile curve (p, q) of a surface of revolution with the hyperbolic
/// unit-speed constraint (p')^2 + (q')^2 = q^2. Second derivatives are
/// optional; when absent they are finite-differenced from dp, dq.
struct ProfileCurve {
    std::function<double(double)> p, q, dp, dq;
    std::function<double(double)> d2p, d2q; // may be empty

    /// max constraint residual over n samples of [x0, x1].
    double constraintResidual(double x0, double x1, std::size_t n = 257) const;
    /// min of q over samples.
    double minQ(double x0, double x1, std::size_t n = 257) const;
};

} // namespace quatsurf
