#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "quatsurf/errors.hpp"
#include "test_helpers.hpp"

using namespace quatsurf;
using namespace quatsurf::testing;

namespace {
std::mt19937_64 rng(777);
Cplx randomRho(double box = 5.0) {
    std::uniform_real_distribution<double> d(-box, box);
    Cplx r{d(rng), d(rng)};
    while (std::abs(r) < 0.05 || std::abs(r - 1.0) < 0.05) r = Cplx{d(rng), d(rng)};
    return r;
}
} // namespace

TEST_CASE("cylinder closed-form sections are parallel to 1e-12") {
    const CylinderSetup s = cylinderSetup();
    for (int trial = 0; trial < 20; ++trial) {
        const Cplx rho = randomRho();
        const CylinderOracle o = cylinderSections(rho);
        REQUIRE(o.sections.size() == 4);
        const ConnectionFamily conn = ConnectionFamily::isothermic(s.f, s.g, rho);
        for (const CylinderSection& sec : o.sections) {
            SectionField field = sectionFromAnalytic(conn, sec.closures());
            CHECK(field.transport_residual < 1e-12);
        }
    }
    // degenerate pair at rho = 1, including the linear-in-y branch
    const CylinderOracle o1 = cylinderSections(1.0);
    REQUIRE(o1.degenerate);
    REQUIRE(o1.sections.size() == 2);
    CHECK(std::abs(o1.mu_plus - (-1.0)) < 1e-14);
    CHECK(std::abs(o1.mu_minus - (-1.0)) < 1e-14);
    CHECK(o1.sections[0].has_multiplier);
    CHECK(!o1.sections[1].has_multiplier);
    const ConnectionFamily conn1 = ConnectionFamily::isothermic(s.f, s.g, 1.0);
    for (const CylinderSection& sec : o1.sections) {
        SectionField field = sectionFromAnalytic(conn1, sec.closures());
        CHECK(field.transport_residual < 1e-12);
    }
}

TEST_CASE("cylinder beta matches the algebraic formula") {
    const CylinderSetup s = cylinderSetup();
    const Cplx rho{0.8, -0.45};
    const CylinderOracle o = cylinderSections(rho);
    for (const CylinderSection& sec : o.sections) {
        const double sign = sec.plus ? 1.0 : -1.0;
        for (double x : {-1.0, 0.3, 2.0})
            for (double y : {0.2, 2.5, 5.1}) {
                const Quaternion al = sec.alpha.eval(x, y);
                const Quaternion be = sec.beta.eval(x, y);
                const Quaternion N = s.N(x, y);
                const Quaternion expect =
                    ((N * al).rmul(o.a - 1.0) + al.rmul(sign * o.b)) * 0.5;
                CHECK((be - expect).norm() < 1e-13 * (1 + be.norm()));
            }
    }
}

TEST_CASE("cylinder alphas are parallel for d^N_{mu_pm}") {
    const CylinderSetup s = cylinderSetup();
    const Cplx rho{-1.3, 0.7};
    const CylinderOracle o = cylinderSections(rho);
    for (const CylinderSection& sec : o.sections) {
        const ConnectionFamily conn = ConnectionFamily::harmonicGauss(s.f, s.N, sec.mu);
        SectionField::Analytic a;
        const CylClosed al = sec.alpha, alx = sec.alpha.dx(), aly = sec.alpha.dy();
        a.val = [al](double x, double y) { return HVector2{al.eval(x, y), {}}; };
        a.dx = [alx](double x, double y) { return HVector2{alx.eval(x, y), {}}; };
        a.dy = [aly](double x, double y) { return HVector2{aly.eval(x, y), {}}; };
        SectionField field = sectionFromAnalytic(conn, a);
        CHECK(field.transport_residual < 1e-12);
    }
}

TEST_CASE("cylinder multipliers and resonances") {
    const Cplx rho{0.35, 1.2};
    const CylinderOracle o = cylinderSections(rho);
    const Cplx w = std::sqrt(Cplx(1, 0) - rho);
    CHECK(std::abs(o.h_plus - (-std::exp(Cplx(0, M_PI) * w))) < 1e-14);

    // gamma* phi = phi h: value at y + 2 pi equals value right-multiplied by h
    for (const CylinderSection& sec : o.sections) {
        for (double x : {-0.7, 1.1}) {
            const HVector2 v0 = sec.value(x, 0.9);
            const HVector2 v1 = sec.value(x, 0.9 + 2 * M_PI);
            CHECK((v1 - v0.rmul(sec.multiplier)).norm() < 1e-12 * (1 + v0.norm()));
        }
    }

    const auto res = cylinderResonances(5);
    REQUIRE(res.size() == 4);
    CHECK(res[0] == -3.0);
    CHECK(res[1] == -8.0);
    CHECK(res[2] == -15.0);
    CHECK(res[3] == -24.0);
    // multipliers coincide at resonance
    const CylinderOracle ores = cylinderSections(-3.0);
    CHECK(std::abs(ores.h_plus - ores.h_minus) < 1e-12);
    CHECK(std::abs(ores.h_plus - (-1.0)) < 1e-12);
    CHECK(std::abs(ores.mu_plus - (7.0 - 4.0 * std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("mu family slice is d^N parallel and smooth in t") {
    const CylinderSetup s = cylinderSetup();
    for (double t : {0.31, 1.2, M_PI / 2}) {
        const CylinderMuFamily fam(t);
        const ConnectionFamily conn =
            ConnectionFamily::harmonicGauss(s.f, s.N, std::exp(Cplx(0, t)));
        SectionField field = sectionFromAnalytic(conn, fam.closures());
        CHECK(field.transport_residual < 1e-12);
        CHECK((fam.value(0, 0) - Quaternion::one()).norm() < 1e-14);

        // exact t-derivative against a centered difference of the family
        const double d = 1e-5;
        const CylinderMuFamily fp(t + d), fm(t - d);
        for (double x : {-0.4, 1.3})
            for (double y : {0.6, 4.4}) {
                const Quaternion fd = (fp.value(x, y) - fm.value(x, y)) * (1.0 / (2 * d));
                CHECK((fd - fam.tDeriv(x, y)).norm() < 1e-9 * (1 + fd.norm()));
            }
    }
}

TEST_CASE("revolution oracle sections: parallelism and multiplier") {
    const RevolutionSetup s = revolutionSetup();
    const Cplx rhod{1.0, 1.0};
    for (bool plus : {true, false}) {
        const RevolutionOracle o(exampleProfile(), s.f->grid(), rhod, plus,
                                 {Cplx(1, 0), Cplx(0.3, -0.2)});
        const ConnectionFamily conn = ConnectionFamily::isothermic(s.f, s.dual, rhod);
        SectionField field = sectionFromAnalytic(conn, o.closures());
        CHECK(field.transport_residual < 5e-11);

        const auto cl = o.closures();
        const HVector2 v0 = cl.val(0.4, 0.7);
        const HVector2 v1 = cl.val(0.4, 0.7 + 2 * M_PI);
        CHECK((v1 - v0.rmul(o.multiplier())).norm() < 1e-10 * (1 + v0.norm()));
    }
}

TEST_CASE("revolution real-parameter multiplier structure") {
    const RevolutionSetup s = revolutionSetup();
    {
        // r < -1/4: s imaginary, h+ = 1/h- real
        const RevolutionOracle op(exampleProfile(), s.f->grid(), -0.7, true);
        const RevolutionOracle om(exampleProfile(), s.f->grid(), -0.7, false);
        CHECK(std::abs(op.s().real()) < 1e-14);
        CHECK(std::abs(op.multiplier().imag()) < 1e-12);
        CHECK(std::abs(op.multiplier() * om.multiplier() - 1.0) < 1e-12);
    }
    {
        // -1/4 < r non-resonant: conjugate unit multipliers
        const RevolutionOracle op(exampleProfile(), s.f->grid(), 0.37, true);
        const RevolutionOracle om(exampleProfile(), s.f->grid(), 0.37, false);
        CHECK(std::abs(std::abs(op.multiplier()) - 1.0) < 1e-12);
        CHECK(std::abs(op.multiplier() - std::conj(om.multiplier())) < 1e-12);
    }
    {
        // resonance r_k = (k^2-1)/4, k = 2 -> r = 3/4, h = (-1)^{k+1} = -1
        const RevolutionOracle op(exampleProfile(), s.f->grid(), 0.75, true);
        const RevolutionOracle om(exampleProfile(), s.f->grid(), 0.75, false);
        CHECK(std::abs(op.s() - 2.0) < 1e-14);
        CHECK(std::abs(op.multiplier() - (-1.0)) < 1e-12);
        CHECK(std::abs(om.multiplier() - (-1.0)) < 1e-12);
    }
}

TEST_CASE("revolution closed-form Darboux at s = 0 and rotation structure") {
    const RevolutionSetup s = revolutionSetup();
    {
        // rho' = -1/4: the single closed transform i p - j q e^{-iy}
        const RevolutionOracle o(exampleProfile(), s.f->grid(), -0.25, true);
        const AnalyticSurface fh = o.closedFormDarboux();
        for (double x : {-1.0, 0.5})
            for (double y : {0.3, 3.0}) {
                const double p = -x + x * x * x / 3, q = 1 + x * x;
                const Quaternion expect =
                    Quaternion::i() * p - (Quaternion::j() * q) * expI(-y);
                CHECK((fh.f(x, y) - expect).norm() < 1e-12);
            }
    }
    for (const Cplx rhod : {Cplx(1.0, 1.0), Cplx(-0.7, 0.0)}) {
        const RevolutionOracle o(exampleProfile(), s.f->grid(), rhod, true,
                                 {Cplx(0.9, 0.1), Cplx(0.2, -0.4)});
        const AnalyticSurface fh = o.closedFormDarboux();
        // rotation surface: the j-component modulus is independent of y
        for (double x : {-1.2, 0.8}) {
            const Quaternion a = fh.f(x, 0.3), b = fh.f(x, 2.9);
            const double qa = std::hypot(a.y, a.z), qb = std::hypot(b.y, b.z);
            CHECK(std::abs(qa - qb) < 1e-10 * (1 + qa));
        }
    }
}

TEST_CASE("gauge scale between duals of the cylinder") {
    const CylinderSetup s = cylinderSetup();
    CHECK(dualGaugeScale(*s.f, *s.g) == doctest::Approx(-0.25).epsilon(1e-10));
}
