#include "quatsurf/surfaces.hpp"

#include <cmath>
#include <sstream>

#include "quatsurf/errors.hpp"

namespace quatsurf {

namespace {

const Quaternion kI = Quaternion::i();
const Quaternion kJ = Quaternion::j();

Quaternion jExpNegI(double y) { return kJ * expI(-y); }

} // namespace

ImmersionField makeCylinder(const DomainGrid& grid) {
    if (!grid.periodic_y || std::abs(grid.period_y - 2 * M_PI) > 1e-12)
        throw ConfigInvalidError("makeCylinder: grid must be periodic in y with period 2 pi");
    AnalyticSurface s;
    s.f = [](double x, double y) { return (kI * x + jExpNegI(y)) * 0.5; };
    s.fx = [](double, double) { return kI * 0.5; };
    s.fy = [](double, double y) { return (jExpNegI(y).rmul(Cplx(0, -1))) * 0.5; };
    s.N = [](double, double y) { return -jExpNegI(y); };
    s.Nx = [](double, double) { return Quaternion{}; };
    s.Ny = [](double, double y) { return -jExpNegI(y).rmul(Cplx(0, -1)); };
    return ImmersionField::fromAnalytic(grid, std::move(s), true);
}

ProfileCurve exampleProfile() {
    ProfileCurve c;
    c.p = [](double x) { return -x + x * x * x / 3.0; };
    c.dp = [](double x) { return -1.0 + x * x; };
    c.d2p = [](double x) { return 2.0 * x; };
    c.q = [](double x) { return 1.0 + x * x; };
    c.dq = [](double x) { return 2.0 * x; };
    c.d2q = [](double) { return 2.0; };
    return c;
}

ImmersionField makeRevolution(const ProfileCurve& profile, const DomainGrid& grid) {
    if (!grid.periodic_y || std::abs(grid.period_y - 2 * M_PI) > 1e-12)
        throw ConfigInvalidError("makeRevolution: grid must be periodic in y with period 2 pi");
    const double res = profile.constraintResidual(grid.x_min, grid.x_max);
    if (res > 1e-8) {
        std::ostringstream msg;
        msg << "makeRevolution: profile constraint residual " << res << " exceeds 1e-8";
        throw ProfileInvalidError(msg.str());
    }
    if (profile.minQ(grid.x_min, grid.x_max) <= 0)
        throw ProfileInvalidError("makeRevolution: q must be positive on the domain");
    const auto p = profile.p, q = profile.q, dp = profile.dp, dq = profile.dq;
    AnalyticSurface s;
    s.f = [p, q](double x, double y) { return kI * p(x) + kJ * q(x) * expI(-y); };
    s.fx = [dp, dq](double x, double y) { return kI * dp(x) + kJ * dq(x) * expI(-y); };
    s.fy = [q](double x, double y) { return (kJ * q(x) * expI(-y)).rmul(Cplx(0, -1)); };
    s.N = [q, dp, dq](double x, double y) {
        return (kI * dq(x) - kJ * dp(x) * expI(-y)) * (1.0 / q(x));
    };
    // N = (i q' - j p' e^{-iy}) / q differentiated by the product rule.
    auto d2p = profile.d2p, d2q = profile.d2q;
    if (!d2p) d2p = [dp](double x) { return (dp(x + 1e-5) - dp(x - 1e-5)) / 2e-5; };
    if (!d2q) d2q = [dq](double x) { return (dq(x + 1e-5) - dq(x - 1e-5)) / 2e-5; };
    s.Nx = [q, dp, dq, d2p, d2q](double x, double y) {
        const Quaternion base = kI * d2q(x) - kJ * d2p(x) * expI(-y);
        const Quaternion corr = (kI * dq(x) - kJ * dp(x) * expI(-y)) * (dq(x) / (q(x) * q(x)));
        return base * (1.0 / q(x)) - corr;
    };
    s.Ny = [q, dp](double x, double y) {
        return -(kJ * dp(x) * expI(-y)).rmul(Cplx(0, -1)) * (1.0 / q(x));
    };
    return ImmersionField::fromAnalytic(grid, std::move(s), true);
}

ImmersionField makeSphere(const DomainGrid& grid) {
    // Conformal parametrisation of the unit sphere minus poles, oriented so
    // that H = +1. The Gauss map is the position itself.
    AnalyticSurface s;
    auto pos = [](double x, double y) {
        const double sech = 1.0 / std::cosh(x);
        return Quaternion{0, std::cos(y) * sech, std::sin(y) * sech, std::tanh(x)};
    };
    auto posx = [](double x, double y) {
        const double sech = 1.0 / std::cosh(x);
        const double dsech = -sech * std::tanh(x);
        return Quaternion{0, std::cos(y) * dsech, std::sin(y) * dsech, sech * sech};
    };
    auto posy = [](double x, double y) {
        const double sech = 1.0 / std::cosh(x);
        return Quaternion{0, -std::sin(y) * sech, std::cos(y) * sech, 0};
    };
    s.f = pos;
    s.fx = posx;
    s.fy = posy;
    s.N = [pos](double x, double y) { return -pos(x, y); };
    s.Nx = [posx](double x, double y) { return -posx(x, y); };
    s.Ny = [posy](double x, double y) { return -posy(x, y); };
    return ImmersionField::fromAnalytic(grid, std::move(s), true);
}

GaussData gaussMap(const ImmersionField& f) {
    const DomainGrid& g = f.grid();
    GaussData out;
    out.N.resize(g.size());
    out.R.resize(g.size());
    out.H.resize(g.size());

    std::vector<std::size_t> bad;
    const bool analyticNormal = f.hasAnalytic() && f.analytic()->hasNormal();
    for (std::size_t j = 0; j < g.ny; ++j) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            const std::size_t id = g.index(i, j);
            const Quaternion& fx = f.dx(i, j);
            const Quaternion& fy = f.dy(i, j);
            if (fx.norm() < 1e-10) {
                bad.push_back(id);
                continue;
            }
            Quaternion N = analyticNormal ? f.analytic()->N(g.x(i), g.y(j)) : fy * fx.inverse();
            Quaternion R = -(fx.inverse() * fy);
            // project to unit imaginary
            N = N.im() * (1.0 / N.im().norm());
            R = R.im() * (1.0 / R.im().norm());
            out.N[id] = N;
            out.R[id] = R;
            out.unit_residual = std::max(out.unit_residual,
                                         std::max(std::abs((N * N + Quaternion::one()).norm()),
                                                  std::abs((R * R + Quaternion::one()).norm())));
        }
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "gaussMap: |f_x| below threshold at " << bad.size() << " node(s), first " << bad[0];
        throw DegenerateImmersionError(msg.str());
    }

    // H from -df H = (dN)' with (dN)'(dx) = (N_x - N N_y)/2.
    std::vector<Quaternion> Nx, Ny;
    if (analyticNormal && f.analytic()->Nx) {
        Nx.resize(g.size());
        Ny.resize(g.size());
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                Nx[g.index(i, j)] = f.analytic()->Nx(g.x(i), g.y(j));
                Ny[g.index(i, j)] = f.analytic()->Ny(g.x(i), g.y(j));
            }
    } else {
        Nx = differentiateField(g, out.N, true);
        Ny = differentiateField(g, out.N, false);
    }
    for (std::size_t j = 0; j < g.ny; ++j) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            const std::size_t id = g.index(i, j);
            const Quaternion dNp = (Nx[id] - out.N[id] * Ny[id]) * 0.5;
            out.H[id] = -(f.dx(i, j).inverse() * dNp);
        }
    }
    for (std::size_t j = 1; j + 1 < g.ny; ++j)
        for (std::size_t i = 1; i + 1 < g.nx; ++i) {
            const std::size_t id = g.index(i, j);
            const double r = (f.dy(i, j) - out.N[id] * f.dx(i, j)).norm() +
                             (f.dy(i, j) + f.dx(i, j) * out.R[id]).norm();
            out.gauss_residual = std::max(out.gauss_residual, r);
        }
    if (analyticNormal) {
        AnalyticSurface a = *f.analytic();
        out.analytic = std::move(a);
    }
    return out;
}

DualResult christoffelDual(const ImmersionField& f, double tol) {
    const DomainGrid& g = f.grid();

    // Dual one-form values at nodes.
    std::vector<Quaternion> wx(g.size()), wy(g.size());
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            wx[g.index(i, j)] = f.dx(i, j).inverse();
            wy[g.index(i, j)] = -f.dy(i, j).inverse();
        }

    // Closedness: d(omega) = dy(wx) - dx(wy) should vanish.
    const auto wx_y = differentiateField(g, wx, false);
    const auto wy_x = differentiateField(g, wy, true);
    double closed = 0;
    for (std::size_t j = 2; j + 2 < g.ny; ++j)
        for (std::size_t i = 2; i + 2 < g.nx; ++i)
            closed = std::max(closed, (wx_y[g.index(i, j)] - wy_x[g.index(i, j)]).norm());
    if (closed > tol) {
        std::ostringstream msg;
        msg << "christoffelDual: closedness residual " << closed << " exceeds " << tol;
        throw NotClosedError(msg.str());
    }

    // Path-ordered integration: along the x axis row (j = 0), then columns.
    // With analytic derivatives each cell is integrated by composite Simpson;
    // otherwise trapezoid on the node one-form.
    std::vector<Quaternion> vals(g.size());
    const bool analytic = f.hasAnalytic();
    auto segment = [&](double x0, double y0, double x1, double y1) {
        if (!analytic) {
            const Quaternion w0 = (x0 != x1) ? interpolateField(g, wx, x0, y0)
                                             : interpolateField(g, wy, x0, y0);
            const Quaternion w1 = (x0 != x1) ? interpolateField(g, wx, x1, y1)
                                             : interpolateField(g, wy, x1, y1);
            const double len = (x0 != x1) ? (x1 - x0) : (y1 - y0);
            return (w0 + w1) * (0.5 * len);
        }
        const int m = 16; // Simpson panels per cell
        const bool inX = x0 != x1;
        const double len = inX ? (x1 - x0) : (y1 - y0);
        auto w = [&](double t) {
            const double x = inX ? x0 + t : x0;
            const double y = inX ? y0 : y0 + t;
            return inX ? f.dxAt(x, y).inverse() : -f.dyAt(x, y).inverse();
        };
        Quaternion acc{};
        const double h = len / m;
        for (int k = 0; k < m; ++k) {
            const double t0 = k * h;
            acc += (w(t0) + w(t0 + 0.5 * h) * 4.0 + w(t0 + h)) * (h / 6.0);
        }
        return acc;
    };

    vals[g.index(0, 0)] = Quaternion{};
    for (std::size_t i = 1; i < g.nx; ++i)
        vals[g.index(i, 0)] =
            vals[g.index(i - 1, 0)] + segment(g.x(i - 1), g.y(0), g.x(i), g.y(0));
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t j = 1; j < g.ny; ++j)
            vals[g.index(i, j)] =
                vals[g.index(i, j - 1)] + segment(g.x(i), g.y(j - 1), g.x(i), g.y(j));

    std::optional<AnalyticSurface> dualAnalytic;
    if (analytic) {
        // Derivative closures are exact; only the integrated values carry
        // quadrature error.
        const AnalyticSurface& src = *f.analytic();
        AnalyticSurface d;
        const DomainGrid grid = g;
        auto base = vals[g.index(0, 0)];
        d.fx = [src](double x, double y) { return src.fx(x, y).inverse(); };
        d.fy = [src](double x, double y) { return -src.fy(x, y).inverse(); };
        d.f = [grid, vals, base](double x, double y) {
            return interpolateField(grid, vals, x, y);
        };
        dualAnalytic = std::move(d);
    }
    ImmersionField dual(g, std::move(vals), f.isR3(), std::move(dualAnalytic));
    return {std::move(dual), closed};
}

ImmersionField parallelSurface(const ImmersionField& f, const GaussData& gauss, double h_tol) {
    const DomainGrid& g = f.grid();
    double worstH = 0;
    for (std::size_t j = 1; j + 1 < g.ny; ++j)
        for (std::size_t i = 1; i + 1 < g.nx; ++i)
            worstH = std::max(worstH,
                              (gauss.H[g.index(i, j)] - Quaternion::one()).norm());
    if (worstH > h_tol) {
        std::ostringstream msg;
        msg << "parallelSurface: surface is not CMC with H=1 (deviation " << worstH << ")";
        throw ConfigInvalidError(msg.str());
    }

    std::vector<Quaternion> vals(g.size());
    for (std::size_t id = 0; id < g.size(); ++id) vals[id] = f.values()[id] + gauss.N[id];

    std::optional<AnalyticSurface> analytic;
    if (f.hasAnalytic() && f.analytic()->hasNormal() && f.analytic()->Nx) {
        const AnalyticSurface& s = *f.analytic();
        AnalyticSurface a;
        a.f = [s](double x, double y) { return s.f(x, y) + s.N(x, y); };
        a.fx = [s](double x, double y) { return s.fx(x, y) + s.Nx(x, y); };
        a.fy = [s](double x, double y) { return s.fy(x, y) + s.Ny(x, y); };
        a.N = [s](double x, double y) { return -s.N(x, y); };
        a.Nx = [s](double x, double y) { return -s.Nx(x, y); };
        a.Ny = [s](double x, double y) { return -s.Ny(x, y); };
        analytic = std::move(a);
    }
    ImmersionField out(g, std::move(vals), f.isR3(), std::move(analytic));

    double dgNorm = 0, dfNorm = 0;
    for (std::size_t id = 0; id < g.size(); ++id) {
        dgNorm = std::max(dgNorm, std::max(out.dxField()[id].norm(), out.dyField()[id].norm()));
        dfNorm = std::max(dfNorm, std::max(f.dxField()[id].norm(), f.dyField()[id].norm()));
    }
    if (dgNorm < 1e-10 * dfNorm)
        throw RoundSphereError("parallelSurface: ||dg|| vanishes identically (round sphere)");
    return out;
}

Quaternion wedgeForm(const ImmersionField& f, const ImmersionField& g, std::size_t i,
                     std::size_t j) {
    return f.dx(i, j) * g.dy(i, j) - f.dy(i, j) * g.dx(i, j);
}

double maxWedgeResidual(const ImmersionField& f, const ImmersionField& g) {
    double worst = 0;
    for (std::size_t j = 1; j + 1 < f.grid().ny; ++j)
        for (std::size_t i = 1; i + 1 < f.grid().nx; ++i) {
            worst = std::max(worst, wedgeForm(f, g, i, j).norm());
            worst = std::max(worst, wedgeForm(g, f, i, j).norm());
        }
    return worst;
}

} // namespace quatsurf
