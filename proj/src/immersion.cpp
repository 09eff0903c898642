#include "quatsurf/immersion.hpp"

#include <algorithm>
#include <cmath>

#include "quatsurf/errors.hpp"

namespace quatsurf {

void DomainGrid::validate() const {
    if (nx < 8 || ny < 8) throw ConfigInvalidError("DomainGrid: nx, ny must be >= 8");
    if (x_max <= x_min || (!periodic_y && y_max <= y_min))
        throw ConfigInvalidError("DomainGrid: empty parameter window");
    if (periodic_y && std::abs((y_max - y_min) - period_y) > 1e-12)
        throw ConfigInvalidError("DomainGrid: periodic grid must span one period");
}

DomainGrid DomainGrid::rect(double x0, double x1, double y0, double y1, std::size_t nx,
                            std::size_t ny) {
    DomainGrid g;
    g.x_min = x0;
    g.x_max = x1;
    g.y_min = y0;
    g.y_max = y1;
    g.nx = nx;
    g.ny = ny;
    g.validate();
    return g;
}

DomainGrid DomainGrid::periodicY(double x0, double x1, double y0, std::size_t nx,
                                 std::size_t ny, double period) {
    DomainGrid g;
    g.x_min = x0;
    g.x_max = x1;
    g.y_min = y0;
    g.y_max = y0 + period;
    g.nx = nx;
    g.ny = ny;
    g.periodic_y = true;
    g.period_y = period;
    g.validate();
    return g;
}

namespace {

// Stencil index clamped/wrapped in one dimension.
std::ptrdiff_t wrap(std::ptrdiff_t i, std::ptrdiff_t n) {
    i %= n;
    return i < 0 ? i + n : i;
}

} // namespace

std::vector<Quaternion> differentiateField(const DomainGrid& grid,
                                           const std::vector<Quaternion>& field, bool inX) {
    const std::ptrdiff_t nx = std::ptrdiff_t(grid.nx), ny = std::ptrdiff_t(grid.ny);
    const double h = inX ? grid.hx() : grid.hy();
    const bool periodic = !inX && grid.periodic_y;
    std::vector<Quaternion> out(field.size());

    auto get = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> const Quaternion& {
        if (periodic) j = wrap(j, ny);
        return field[std::size_t(j) * std::size_t(nx) + std::size_t(i)];
    };
    for (std::ptrdiff_t j = 0; j < ny; ++j) {
        for (std::ptrdiff_t i = 0; i < nx; ++i) {
            const std::ptrdiff_t c = inX ? i : j;
            const std::ptrdiff_t n = inX ? nx : ny;
            auto at = [&](std::ptrdiff_t o) -> const Quaternion& {
                return inX ? get(i + o, j) : get(i, j + o);
            };
            Quaternion d;
            if (periodic || (c >= 2 && c + 2 < n)) {
                d = (at(-2) - at(2) + (at(1) - at(-1)) * 8.0) * (1.0 / (12.0 * h));
            } else if (c == 0) {
                d = (at(1) * 4.0 - at(2) - at(0) * 3.0) * (1.0 / (2.0 * h));
            } else if (c == 1) {
                d = (at(1) - at(-1)) * (1.0 / (2.0 * h));
            } else if (c + 1 == n) {
                d = (at(0) * 3.0 - at(-1) * 4.0 + at(-2)) * (1.0 / (2.0 * h));
            } else {
                d = (at(1) - at(-1)) * (1.0 / (2.0 * h));
            }
            out[std::size_t(j) * std::size_t(nx) + std::size_t(i)] = d;
        }
    }
    return out;
}

Quaternion interpolateField(const DomainGrid& grid, const std::vector<Quaternion>& field,
                            double x, double y) {
    const double fx = (x - grid.x_min) / grid.hx();
    double fy = (y - grid.y_min) / grid.hy();
    const std::ptrdiff_t nx = std::ptrdiff_t(grid.nx), ny = std::ptrdiff_t(grid.ny);
    std::ptrdiff_t i0 = std::ptrdiff_t(std::floor(fx));
    std::ptrdiff_t j0 = std::ptrdiff_t(std::floor(fy));
    double tx = fx - double(i0), ty = fy - double(j0);
    i0 = std::clamp<std::ptrdiff_t>(i0, 0, nx - 2);
    tx = std::clamp(fx - double(i0), 0.0, 1.0);
    std::ptrdiff_t j1;
    if (grid.periodic_y) {
        j0 = wrap(j0, ny);
        j1 = wrap(j0 + 1, ny);
    } else {
        j0 = std::clamp<std::ptrdiff_t>(j0, 0, ny - 2);
        ty = std::clamp(fy - double(j0), 0.0, 1.0);
        j1 = j0 + 1;
    }
    auto g = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
        return field[std::size_t(j) * grid.nx + std::size_t(i)];
    };
    const Quaternion bottom = g(i0, j0) * (1 - tx) + g(i0 + 1, j0) * tx;
    const Quaternion top = g(i0, j1) * (1 - tx) + g(i0 + 1, j1) * tx;
    return bottom * (1 - ty) + top * ty;
}

ImmersionField::ImmersionField(DomainGrid grid, std::vector<Quaternion> values, bool is_R3,
                               std::optional<AnalyticSurface> analytic)
    : grid_(grid), values_(std::move(values)), is_R3_(is_R3), analytic_(std::move(analytic)) {
    grid_.validate();
    if (values_.size() != grid_.size())
        throw ConfigInvalidError("ImmersionField: value count does not match grid");
    computeDerivatives();
}

ImmersionField ImmersionField::fromAnalytic(const DomainGrid& grid, AnalyticSurface analytic,
                                            bool is_R3) {
    std::vector<Quaternion> vals(grid.size());
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i)
            vals[grid.index(i, j)] = analytic.f(grid.x(i), grid.y(j));
    return ImmersionField(grid, std::move(vals), is_R3, std::move(analytic));
}

void ImmersionField::computeDerivatives() {
    if (analytic_) {
        dxs_.resize(values_.size());
        dys_.resize(values_.size());
        for (std::size_t j = 0; j < grid_.ny; ++j)
            for (std::size_t i = 0; i < grid_.nx; ++i) {
                dxs_[grid_.index(i, j)] = analytic_->fx(grid_.x(i), grid_.y(j));
                dys_[grid_.index(i, j)] = analytic_->fy(grid_.x(i), grid_.y(j));
            }
    } else {
        dxs_ = differentiateField(grid_, values_, true);
        dys_ = differentiateField(grid_, values_, false);
    }
}

Quaternion ImmersionField::at(double x, double y) const {
    if (analytic_) return analytic_->f(x, y);
    return interpolateField(grid_, values_, x, y);
}
Quaternion ImmersionField::dxAt(double x, double y) const {
    if (analytic_) return analytic_->fx(x, y);
    return interpolateField(grid_, dxs_, x, y);
}
Quaternion ImmersionField::dyAt(double x, double y) const {
    if (analytic_) return analytic_->fy(x, y);
    return interpolateField(grid_, dys_, x, y);
}

double ImmersionField::conformalityResidual() const {
    double worst = 0;
    for (std::size_t j = 1; j + 1 < grid_.ny; ++j)
        for (std::size_t i = 1; i + 1 < grid_.nx; ++i) {
            const Quaternion& fx = dx(i, j);
            const Quaternion& fy = dy(i, j);
            const double r = std::abs(dot(fx, fy)) + std::abs(fx.norm() - fy.norm());
            worst = std::max(worst, r);
        }
    return worst;
}

double ProfileCurve::constraintResidual(double x0, double x1, std::size_t n) const {
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = x0 + (x1 - x0) * double(k) / double(n - 1);
        const double r = dp(x) * dp(x) + dq(x) * dq(x) - q(x) * q(x);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double ProfileCurve::minQ(double x0, double x1, std::size_t n) const {
    double m = q(x0);
    for (std::size_t k = 1; k < n; ++k) {
        const double x = x0 + (x1 - x0) * double(k) / double(n - 1);
        m = std::min(m, q(x));
    }
    return m;
}

} // namespace quatsurf
