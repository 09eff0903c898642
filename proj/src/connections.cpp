#include "quatsurf/connections.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quatsurf/errors.hpp"

namespace quatsurf {

ConnectionFamily ConnectionFamily::isothermic(Ptr f, Ptr dual, const Cplx& rho) {
    ConnectionFamily c;
    c.kind_ = ConnectionKind::IsothermicRho;
    c.f_ = std::move(f);
    c.dual_ = std::move(dual);
    SpectralPoint p{};
    p.rho = rho;
    const auto pair = spectralFromRho(rho);
    p.mu = pair.first.mu;
    p.a = pair.first.a;
    p.b = pair.first.b;
    c.spectral_ = p;
    return c;
}

ConnectionFamily ConnectionFamily::harmonicGauss(Ptr f, SurfaceFn N, const Cplx& mu) {
    ConnectionFamily c;
    c.kind_ = ConnectionKind::HarmonicGaussN;
    c.f_ = std::move(f);
    c.normal_ = std::move(N);
    c.spectral_ = spectralFromMu(mu);
    return c;
}

ConnectionFamily ConnectionFamily::conformalGauss(Ptr f, Ptr g, SurfaceFn Ng, const Cplx& mu) {
    ConnectionFamily c;
    c.kind_ = ConnectionKind::ConformalGaussS;
    c.f_ = std::move(f);
    c.dual_ = std::move(g);
    c.normal_ = std::move(Ng);
    c.spectral_ = spectralFromMu(mu);
    return c;
}

HVector2 ConnectionFamily::omega(double x, double y, Dir dir, const HVector2& v) const {
    switch (kind_) {
    case ConnectionKind::IsothermicRho: {
        const Quaternion df = dir == Dir::X ? f_->dxAt(x, y) : f_->dyAt(x, y);
        const Quaternion dfd = dir == Dir::X ? dual_->dxAt(x, y) : dual_->dyAt(x, y);
        return {df * v.b, (dfd * v.a).rmul(spectral_.rho)};
    }
    case ConnectionKind::HarmonicGaussN: {
        const Quaternion df = dir == Dir::X ? f_->dxAt(x, y) : f_->dyAt(x, y);
        const Quaternion N = normal_(x, y);
        const Quaternion t =
            (N * v.a).rmul(spectral_.a - 1.0) + v.a.rmul(spectral_.b);
        return {(df * t) * 0.5, {}};
    }
    case ConnectionKind::ConformalGaussS: {
        const Quaternion dg = dir == Dir::X ? dual_->dxAt(x, y) : dual_->dyAt(x, y);
        const Quaternion Ng = normal_(x, y);
        const Quaternion t =
            (Ng * v.b).rmul(spectral_.a - 1.0) + v.b.rmul(spectral_.b);
        const Quaternion X = (dg * t) * 0.5;
        return {f_->at(x, y) * X, X};
    }
    }
    return {};
}

Eigen::MatrixXcd ConnectionFamily::omegaMatrix(double x, double y, Dir dir) const {
    const int n = dim();
    Eigen::MatrixXcd m(n, n);
    if (n == 2) {
        const Quaternion cols[2] = {Quaternion::one(), Quaternion::j()};
        for (int c = 0; c < 2; ++c) {
            const HVector2 w = omega(x, y, dir, {cols[c], {}});
            m(0, c) = w.a.z0();
            m(1, c) = w.a.z1();
        }
    } else {
        for (int c = 0; c < 4; ++c) {
            Vec4c e = Vec4c::Zero();
            e(c) = 1;
            const Vec4c w = complexify(omega(x, y, dir, decomplexify(e)));
            m.col(c) = w;
        }
    }
    return m;
}

namespace {

struct EdgeWalk {
    double x0, y0, x1, y1;
    bool inX;
};

HVector2 rk4Edge(const ConnectionFamily& conn, const EdgeWalk& e, HVector2 v, int substeps) {
    const Dir dir = e.inX ? Dir::X : Dir::Y;
    const double len = e.inX ? (e.x1 - e.x0) : (e.y1 - e.y0);
    const double h = len / substeps;
    auto rhs = [&](double t, const HVector2& w) {
        const double x = e.inX ? e.x0 + t : e.x0;
        const double y = e.inX ? e.y0 : e.y0 + t;
        return -conn.omega(x, y, dir, w);
    };
    double t = 0;
    for (int s = 0; s < substeps; ++s) {
        const HVector2 k1 = rhs(t, v);
        const HVector2 k2 = rhs(t + h / 2, v + k1 * (h / 2));
        const HVector2 k3 = rhs(t + h / 2, v + k2 * (h / 2));
        const HVector2 k4 = rhs(t + h, v + k3 * h);
        v += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        t += h;
    }
    return v;
}

} // namespace

HVector2 transportEdge(const ConnectionFamily& conn, double x0, double y0, double x1,
                       double y1, const HVector2& v, const TransportSettings& settings) {
    const bool inX = std::abs(y1 - y0) < 1e-15;
    if (!inX && std::abs(x1 - x0) > 1e-15)
        throw ConfigInvalidError("transportEdge: segment must be axis-parallel");
    const EdgeWalk e{x0, y0, x1, y1, inX};
    HVector2 out = rk4Edge(conn, e, v, settings.substeps);
    if (settings.check_tol > 0) {
        const HVector2 ref = rk4Edge(conn, e, v, settings.substeps * 2);
        if ((out - ref).norm() > settings.check_tol * std::max(1.0, ref.norm())) {
            std::ostringstream msg;
            msg << "transportEdge: step-doubling residual " << (out - ref).norm()
                << " exceeds tolerance";
            throw StepTooCoarseError(msg.str());
        }
    }
    return out;
}

HVector2 transportPath(const ConnectionFamily& conn,
                       const std::vector<std::pair<double, double>>& points,
                       const HVector2& v, const TransportSettings& settings) {
    if (v.norm() == 0) throw ConfigInvalidError("transportPath: zero initial value");
    HVector2 cur = v;
    for (std::size_t k = 0; k + 1 < points.size(); ++k)
        cur = transportEdge(conn, points[k].first, points[k].second, points[k + 1].first,
                            points[k + 1].second, cur, settings);
    return cur;
}

SectionField sectionFromInitial(const ConnectionFamily& conn, const HVector2& initial,
                                const TransportSettings& settings) {
    if (initial.norm() == 0)
        throw ConfigInvalidError("sectionFromInitial: zero initial value rejected");
    const DomainGrid& g = conn.grid();
    SectionField s;
    s.kind = conn.kind();
    s.spectral = conn.spectral();
    s.grid = g;
    s.values.resize(g.size());

    s.values[g.index(0, 0)] = initial;
    for (std::size_t i = 1; i < g.nx; ++i)
        s.values[g.index(i, 0)] = transportEdge(conn, g.x(i - 1), g.y(0), g.x(i), g.y(0),
                                                s.values[g.index(i - 1, 0)], settings);
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t j = 1; j < g.ny; ++j)
            s.values[g.index(i, j)] = transportEdge(conn, g.x(i), g.y(j - 1), g.x(i), g.y(j),
                                                    s.values[g.index(i, j - 1)], settings);
    transportResidual(conn, s);
    return s;
}

SectionField sectionFromAnalytic(const ConnectionFamily& conn,
                                 SectionField::Analytic closures) {
    const DomainGrid& g = conn.grid();
    SectionField s;
    s.kind = conn.kind();
    s.spectral = conn.spectral();
    s.grid = g;
    s.values.resize(g.size());
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i)
            s.values[g.index(i, j)] = closures.val(g.x(i), g.y(j));
    s.analytic = std::move(closures);
    transportResidual(conn, s);
    return s;
}

double transportResidual(const ConnectionFamily& conn, SectionField& section) {
    const DomainGrid& g = section.grid;
    double worst = 0;
    if (section.analytic) {
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                const double x = g.x(i), y = g.y(j);
                const HVector2 v = section.analytic->val(x, y);
                const HVector2 dxv = section.analytic->dx(x, y);
                const HVector2 dyv = section.analytic->dy(x, y);
                const HVector2 ox = conn.omega(x, y, Dir::X, v);
                const HVector2 oy = conn.omega(x, y, Dir::Y, v);
                const double scale = 1 + dxv.norm() + dyv.norm() + ox.norm() + oy.norm();
                const double rx = (dxv + ox).norm();
                const double ry = (dyv + oy).norm();
                worst = std::max(worst, std::max(rx, ry) / scale);
            }
    } else {
        // The section is generally not periodic in y (it carries a
        // multiplier), so differentiate on a non-wrapping copy of the grid.
        DomainGrid flat = g;
        flat.periodic_y = false;
        std::vector<Quaternion> fa(g.size()), fb(g.size());
        for (std::size_t id = 0; id < g.size(); ++id) {
            fa[id] = section.values[id].a;
            fb[id] = section.values[id].b;
        }
        const auto ax = differentiateField(flat, fa, true);
        const auto ay = differentiateField(flat, fa, false);
        const auto bx = differentiateField(flat, fb, true);
        const auto by = differentiateField(flat, fb, false);
        for (std::size_t j = 2; j + 2 < g.ny; ++j)
            for (std::size_t i = 2; i + 2 < g.nx; ++i) {
                const std::size_t id = g.index(i, j);
                const double x = g.x(i), y = g.y(j);
                const HVector2 dxv{ax[id], bx[id]};
                const HVector2 dyv{ay[id], by[id]};
                const HVector2 ox = conn.omega(x, y, Dir::X, section.values[id]);
                const HVector2 oy = conn.omega(x, y, Dir::Y, section.values[id]);
                const double scale = 1 + dxv.norm() + dyv.norm() + ox.norm() + oy.norm();
                const double rx = (dxv + ox).norm();
                const double ry = (dyv + oy).norm();
                worst = std::max(worst, std::max(rx, ry) / scale);
            }
    }
    if (!std::isfinite(worst))
        throw BlowupError("transportResidual: non-finite section values");
    section.transport_residual = worst;
    return worst;
}

namespace {

Eigen::MatrixXcd transportFrameLoop(const ConnectionFamily& conn,
                                    const std::vector<std::pair<double, double>>& loop,
                                    const TransportSettings& settings) {
    const int n = conn.dim();
    Eigen::MatrixXcd out(n, n);
    for (int c = 0; c < n; ++c) {
        HVector2 v;
        if (n == 2) {
            v = {c == 0 ? Quaternion::one() : Quaternion::j(), {}};
        } else {
            Vec4c e = Vec4c::Zero();
            e(c) = 1;
            v = decomplexify(e);
        }
        const HVector2 w = transportPath(conn, loop, v, settings);
        if (n == 2) {
            out(0, c) = w.a.z0();
            out(1, c) = w.a.z1();
        } else {
            out.col(c) = complexify(w);
        }
    }
    return out;
}

} // namespace

FlatnessReport flatnessCheck(const ConnectionFamily& conn,
                             const std::vector<std::size_t>& levels,
                             const TransportSettings& settings) {
    const DomainGrid& g = conn.grid();
    FlatnessReport report;
    for (std::size_t cells : levels) {
        const double hx = (g.x_max - g.x_min) / double(cells);
        const double hy = (g.y_max - g.y_min) / double(cells);
        double worst = 0, total = 0;
        for (std::size_t j = 0; j < cells; ++j) {
            for (std::size_t i = 0; i < cells; ++i) {
                const double x0 = g.x_min + hx * double(i);
                const double y0 = g.y_min + hy * double(j);
                const std::vector<std::pair<double, double>> loop = {
                    {x0, y0}, {x0 + hx, y0}, {x0 + hx, y0 + hy}, {x0, y0 + hy}, {x0, y0}};
                const Eigen::MatrixXcd P = transportFrameLoop(conn, loop, settings);
                const double dev =
                    (P - Eigen::MatrixXcd::Identity(P.rows(), P.cols())).norm();
                worst = std::max(worst, dev);
                total += dev;
            }
        }
        report.levels.push_back({cells, worst, total});
    }
    // least-squares slope of log(total) against log(h)
    if (report.levels.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = double(report.levels.size());
        for (const auto& lv : report.levels) {
            const double lx = std::log((g.x_max - g.x_min) / double(lv.cells_per_side));
            const double ly = std::log(std::max(lv.total_deviation, 1e-300));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return report;
}

MonodromyResult monodromy(const ConnectionFamily& conn, double x0,
                          const TransportSettings& settings) {
    const DomainGrid& g = conn.grid();
    if (!g.periodic_y) throw ConfigInvalidError("monodromy: grid must be periodic in y");

    // One full period as ny edges so the per-edge substep count keeps its
    // meaning from the grid.
    std::vector<std::pair<double, double>> path;
    path.reserve(g.ny + 1);
    for (std::size_t j = 0; j <= g.ny; ++j) path.emplace_back(x0, g.y_min + g.hy() * double(j));

    MonodromyResult res;
    res.matrix = Eigen::MatrixXcd(conn.dim(), conn.dim());
    {
        const int n = conn.dim();
        for (int c = 0; c < n; ++c) {
            HVector2 v;
            if (n == 2) {
                v = {c == 0 ? Quaternion::one() : Quaternion::j(), {}};
            } else {
                Vec4c e = Vec4c::Zero();
                e(c) = 1;
                v = decomplexify(e);
            }
            const HVector2 w = transportPath(conn, path, v, settings);
            if (n == 2) {
                res.matrix(0, c) = w.a.z0();
                res.matrix(1, c) = w.a.z1();
            } else {
                res.matrix.col(c) = complexify(w);
            }
        }
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(res.matrix);
    if (solver.info() != Eigen::Success)
        throw DefectiveMonodromyError("monodromy: eigensolver failed to converge");
    std::vector<std::pair<Cplx, Eigen::VectorXcd>> pairs;
    for (Eigen::Index k = 0; k < res.matrix.rows(); ++k)
        pairs.emplace_back(solver.eigenvalues()(k), solver.eigenvectors().col(k));
    std::sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) {
        if (l.first.imag() != r.first.imag()) return l.first.imag() > r.first.imag();
        return l.first.real() > r.first.real();
    });
    res.eigenvectors.resize(res.matrix.rows(), res.matrix.cols());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        res.multipliers.push_back(pairs[k].first);
        res.eigenvectors.col(Eigen::Index(k)) = pairs[k].second;
    }
    res.h1 = res.multipliers.front();
    res.h2 = res.h1;
    double sep = -1;
    for (const Cplx& h : res.multipliers) {
        if (std::abs(h - res.h1) > sep) {
            sep = std::abs(h - res.h1);
            res.h2 = h;
        }
    }
    res.resonant = std::abs(res.h1 - res.h2) < 1e-8;
    return res;
}

} // namespace quatsurf
