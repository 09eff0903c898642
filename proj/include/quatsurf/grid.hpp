#pragma once

#include <cstddef>
#include <vector>

namespace quatsurf {

/// Rectangular parameter grid. When periodic_y, the nodes cover
/// [y_min, y_min + period_y) without a duplicated seam row and
/// y_max - y_min must equal period_y.
struct DomainGrid {
    double x_min = 0, x_max = 1;
    double y_min = 0, y_max = 1;
    std::size_t nx = 8, ny = 8;
    bool periodic_y = false;
    double period_y = 0;

    static DomainGrid rect(double x0, double x1, double y0, double y1, std::size_t nx,
                           std::size_t ny);
    static DomainGrid periodicY(double x0, double x1, double y0, std::size_t nx,
                                std::size_t ny, double period);

    double hx() const { return (x_max - x_min) / (nx > 1 ? double(nx - 1) : 1.0); }
    double hy() const {
        return periodic_y ? period_y / double(ny)
                          : (y_max - y_min) / (ny > 1 ? double(ny - 1) : 1.0);
    }
    double x(std::size_t i) const { return x_min + hx() * double(i); }
    double y(std::size_t jj) const { return y_min + hy() * double(jj); }
    std::size_t index(std::size_t i, std::size_t jj) const { return jj * nx + i; }
    std::size_t size() const { return nx * ny; }

    void validate() const;
};

} // namespace quatsurf
