#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quatsurf/errors.hpp"
#include "quatsurf/expression.hpp"
#include "quatsurf/surfaces.hpp"

using namespace quatsurf;

namespace {

DomainGrid cylGrid(std::size_t n = 64) {
    return DomainGrid::periodicY(-M_PI, M_PI, 0.0, n, n, 2 * M_PI);
}
DomainGrid revGrid(std::size_t n = 64) {
    return DomainGrid::periodicY(-1.5, 1.5, 0.0, n, n, 2 * M_PI);
}

} // namespace

TEST_CASE("cylinder values and gauss data") {
    const ImmersionField f = makeCylinder(cylGrid());
    // f(0,0) = j/2
    CHECK((f.at(0, 0) - Quaternion::j() * 0.5).norm() < 1e-15);

    const GaussData gd = gaussMap(f);
    const DomainGrid& g = f.grid();
    for (std::size_t j = 0; j < g.ny; j += 7) {
        for (std::size_t i = 0; i < g.nx; i += 7) {
            const Quaternion expectN = -(Quaternion::j() * expI(-g.y(j)));
            CHECK((gd.N[g.index(i, j)] - expectN).norm() < 1e-12);
            CHECK((gd.R[g.index(i, j)] - expectN).norm() < 1e-12); // R = N in R^3
            CHECK((gd.H[g.index(i, j)] - Quaternion::one()).norm() < 1e-6);
        }
    }
    CHECK(gd.unit_residual < 1e-10);
    CHECK(f.conformalityResidual() < 1e-12);
}

TEST_CASE("cylinder mean curvature from sampled values only") {
    // strip the analytic provider; H now comes from finite differences
    const ImmersionField fa = makeCylinder(cylGrid());
    const ImmersionField f(fa.grid(), fa.values(), true);
    const GaussData gd = gaussMap(f);
    double worst = 0;
    const DomainGrid& g = f.grid();
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 2; i + 2 < g.nx; ++i)
            worst = std::max(worst, (gd.H[g.index(i, j)] - Quaternion::one()).norm());
    CHECK(worst < 1e-4);
}

TEST_CASE("plane and sphere gauss data") {
    // plane f = x j + y k: N = i, H = 0
    AnalyticSurface plane;
    plane.f = [](double x, double y) { return Quaternion{0, 0, x, y}; };
    plane.fx = [](double, double) { return Quaternion::j(); };
    plane.fy = [](double, double) { return Quaternion::k(); };
    const ImmersionField f =
        ImmersionField::fromAnalytic(DomainGrid::rect(-1, 1, -1, 1, 16, 16), plane, true);
    const GaussData gd = gaussMap(f);
    for (std::size_t id = 0; id < f.grid().size(); id += 13) {
        CHECK((gd.N[id] - Quaternion::i()).norm() < 1e-13);
        CHECK(gd.H[id].norm() < 1e-10);
    }

    const ImmersionField sph = makeSphere(DomainGrid::rect(-1.2, 1.2, 0.1, 6.1, 32, 32));
    const GaussData gs = gaussMap(sph);
    for (std::size_t id = 0; id < sph.grid().size(); id += 41)
        CHECK(std::abs(gs.H[id].norm() - 1.0) < 1e-6);
}

TEST_CASE("degenerate immersion reported") {
    AnalyticSurface s;
    s.f = [](double, double) { return Quaternion::one(); };
    s.fx = [](double, double) { return Quaternion{}; };
    s.fy = [](double, double) { return Quaternion{}; };
    const ImmersionField f =
        ImmersionField::fromAnalytic(DomainGrid::rect(0, 1, 0, 1, 8, 8), s, false);
    CHECK_THROWS_AS((void)gaussMap(f), DegenerateImmersionError);
}

TEST_CASE("revolution surface of the running example") {
    const ImmersionField f = makeRevolution(exampleProfile(), revGrid());
    const DomainGrid& g = f.grid();
    CHECK(f.conformalityResidual() < 1e-8);

    const GaussData gd = gaussMap(f);
    for (std::size_t j = 0; j < g.ny; j += 9)
        for (std::size_t i = 0; i < g.nx; i += 9) {
            const double x = g.x(i), y = g.y(j);
            const double q = 1 + x * x, dp = -1 + x * x, dq = 2 * x;
            const Quaternion expectN =
                (Quaternion::i() * dq - Quaternion::j() * dp * expI(-y)) * (1.0 / q);
            CHECK((gd.N[g.index(i, j)] - expectN).norm() < 1e-12);
        }

    // tangent/normal split N v + v R = 0 for v in {f_x, f_y}
    double worst = 0;
    for (std::size_t j = 1; j + 1 < g.ny; ++j)
        for (std::size_t i = 1; i + 1 < g.nx; ++i) {
            const std::size_t id = g.index(i, j);
            worst = std::max(worst, (gd.N[id] * f.dx(i, j) + f.dx(i, j) * gd.R[id]).norm());
            worst = std::max(worst, (gd.N[id] * f.dy(i, j) + f.dy(i, j) * gd.R[id]).norm());
        }
    CHECK(worst < 1e-10);

    ProfileCurve bad = exampleProfile();
    bad.q = [](double x) { return 1.1 + x * x; };
    CHECK_THROWS_AS((void)makeRevolution(bad, revGrid()), ProfileInvalidError);
}

TEST_CASE("christoffel dual of the revolution example") {
    const ImmersionField f = makeRevolution(exampleProfile(), revGrid());
    const DualResult dual = christoffelDual(f);
    CHECK(dual.closedness_residual < 1e-4);

    // f^d = i x/(1+x^2) + j e^{-iy}/(1+x^2), up to the f^d(origin)=0 gauge
    const DomainGrid& g = f.grid();
    auto expect = [&](double x, double y) {
        const double q = 1 + x * x;
        return Quaternion::i() * (x / q) + (Quaternion::j() * expI(-y)) * (1.0 / q);
    };
    const Quaternion offset = dual.surface.value(0, 0) - expect(g.x(0), g.y(0));
    double worst = 0;
    for (std::size_t j = 0; j < g.ny; j += 5)
        for (std::size_t i = 0; i < g.nx; i += 5)
            worst = std::max(worst,
                             (dual.surface.value(i, j) - offset - expect(g.x(i), g.y(j))).norm());
    CHECK(worst < 1e-9);

    // one-form values match the closed form
    for (std::size_t j = 0; j < g.ny; j += 11)
        for (std::size_t i = 0; i < g.nx; i += 11) {
            const double x = g.x(i), y = g.y(j);
            const double q = 1 + x * x, dp = -1 + x * x, dq = 2 * x;
            const Quaternion wx_expect =
                -(Quaternion::i() * dp + Quaternion::j() * dq * expI(-y)) * (1.0 / (q * q));
            const Quaternion wy_expect =
                -((Quaternion::j() * Quaternion::i()) * expI(-y)) * (1.0 / q);
            CHECK((dual.surface.dx(i, j) - wx_expect).norm() < 1e-12);
            CHECK((dual.surface.dy(i, j) - wy_expect).norm() < 1e-12);
        }

    CHECK(maxWedgeResidual(f, dual.surface) < 1e-10);

    // dual reciprocity: the double dual differential is a constant real
    // multiple of df (here exactly df)
    const DualResult dd = christoffelDual(dual.surface);
    double worstRatio = 0;
    for (std::size_t j = 1; j + 1 < g.ny; j += 3)
        for (std::size_t i = 1; i + 1 < g.nx; i += 3) {
            const Quaternion ratio = dd.surface.dx(i, j) * f.dx(i, j).inverse();
            worstRatio = std::max(worstRatio, (ratio - Quaternion::one()).norm());
        }
    CHECK(worstRatio < 1e-6);
}

TEST_CASE("christoffel dual rejects non-isothermic coordinates") {
    // a graph patch in non curvature-line coordinates
    AnalyticSurface s;
    s.f = [](double x, double y) {
        return Quaternion{0, x * x * 0.4 + 0.3 * x * y, x, y};
    };
    const double h = 1e-6;
    s.fx = [s, h](double x, double y) { return (s.f(x + h, y) - s.f(x - h, y)) * (1 / (2 * h)); };
    s.fy = [s, h](double x, double y) { return (s.f(x, y + h) - s.f(x, y - h)) * (1 / (2 * h)); };
    const ImmersionField f =
        ImmersionField::fromAnalytic(DomainGrid::rect(-1, 1, -1, 1, 32, 32), s, true);
    CHECK_THROWS_AS((void)christoffelDual(f), NotClosedError);
}

TEST_CASE("parallel CMC surface of the cylinder") {
    const ImmersionField f = makeCylinder(cylGrid());
    const GaussData gd = gaussMap(f);
    const ImmersionField g = parallelSurface(f, gd);

    // g = (i x - j e^{-iy}) / 2
    const DomainGrid& gr = f.grid();
    for (std::size_t j = 0; j < gr.ny; j += 7)
        for (std::size_t i = 0; i < gr.nx; i += 7) {
            const Quaternion expect =
                (Quaternion::i() * gr.x(i) - Quaternion::j() * expI(-gr.y(j))) * 0.5;
            CHECK((g.value(i, j) - expect).norm() < 1e-13);
        }

    CHECK(maxWedgeResidual(f, g) < 1e-8);

    // g's Gauss map is -N
    const GaussData gg = gaussMap(g);
    double worst = 0;
    for (std::size_t id = 0; id < gr.size(); ++id)
        worst = std::max(worst, (gg.N[id] + gd.N[id]).norm());
    CHECK(worst < 1e-10);

    // *dg = -N dg = dg N within tolerance
    worst = 0;
    for (std::size_t j = 1; j + 1 < gr.ny; ++j)
        for (std::size_t i = 1; i + 1 < gr.nx; ++i) {
            const std::size_t id = gr.index(i, j);
            worst = std::max(worst, (g.dy(i, j) + gd.N[id] * g.dx(i, j)).norm());
            worst = std::max(worst, (g.dy(i, j) - g.dx(i, j) * gd.N[id]).norm());
        }
    CHECK(worst < 1e-10);

    // round sphere is excluded
    const ImmersionField sph = makeSphere(DomainGrid::rect(-1.2, 1.2, 0.1, 6.1, 32, 32));
    const GaussData gs = gaussMap(sph);
    CHECK_THROWS_AS((void)parallelSurface(sph, gs), RoundSphereError);
}

TEST_CASE("gauss consistency converges at order >= 2") {
    // finite-difference Gauss residual against the analytic normal
    std::vector<double> residuals;
    for (std::size_t n : {16, 32, 64}) {
        const ImmersionField fa = makeRevolution(exampleProfile(), revGrid(n));
        const ImmersionField f(fa.grid(), fa.values(), true); // sampled mode
        const GaussData gd = gaussMap(f);
        residuals.push_back(gd.gauss_residual);
    }
    const double order1 = std::log2(residuals[0] / residuals[1]);
    const double order2 = std::log2(residuals[1] / residuals[2]);
    CHECK(order1 >= 2.0);
    CHECK(order2 >= 2.0);
}

TEST_CASE("wedge form vanishes at order >= 2 under refinement") {
    std::vector<double> res;
    for (std::size_t n : {16, 32, 64}) {
        const ImmersionField fa = makeRevolution(exampleProfile(), revGrid(n));
        const ImmersionField f(fa.grid(), fa.values(), true);
        const DualResult dual = christoffelDual(ImmersionField(fa.grid(), fa.values(), true),
                                                1e-1);
        res.push_back(maxWedgeResidual(f, dual.surface));
    }
    CHECK(std::log2(res[0] / res[1]) >= 1.9);
    CHECK(std::log2(res[1] / res[2]) >= 1.9);
}

TEST_CASE("expression profile parsing") {
    const Expression p = Expression::parse("-x + x^3 / 3");
    const Expression q = Expression::parse("1 + x^2");
    CHECK(p(0.5) == doctest::Approx(-0.5 + 0.125 / 3));
    CHECK(q(2.0) == doctest::Approx(5.0));
    const Expression dp = p.derivative();
    CHECK(dp(0.7) == doctest::Approx(-1 + 0.49));
    CHECK_THROWS_AS((void)Expression::parse("foo(x)"), ConfigInvalidError);
}
