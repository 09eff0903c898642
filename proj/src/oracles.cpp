#include "quatsurf/oracles.hpp"

#include <cmath>
#include <sstream>

#include "quatsurf/errors.hpp"

namespace quatsurf {

namespace {
const Quaternion kJ = Quaternion::j();

Cplx cexp(const Cplx& z) { return std::exp(z); }
} // namespace

Quaternion CylTerm::eval(double x, double y) const {
    const Quaternion u = expI(y / 2);
    const Quaternion poly = q0 + q1 * y + q2 * x;
    const Cplx E = cexp(Cplx(0, 1) * (kx * x + ky * y));
    return (u * poly).rmul(E);
}

CylTerm CylTerm::dx() const {
    CylTerm d;
    const Cplx ikx = Cplx(0, 1) * kx;
    d.q0 = q2 + q0.rmul(ikx);
    d.q1 = q1.rmul(ikx);
    d.q2 = q2.rmul(ikx);
    d.kx = kx;
    d.ky = ky;
    return d;
}

CylTerm CylTerm::dy() const {
    CylTerm d;
    const Cplx iky = Cplx(0, 1) * ky;
    const Cplx ihalf(0, 0.5);
    d.q0 = q0.lmul(ihalf) + q1 + q0.rmul(iky);
    d.q1 = q1.lmul(ihalf) + q1.rmul(iky);
    d.q2 = q2.lmul(ihalf) + q2.rmul(iky);
    d.kx = kx;
    d.ky = ky;
    return d;
}

Quaternion CylClosed::eval(double x, double y) const {
    Quaternion acc;
    for (const CylTerm& t : terms_) acc += t.eval(x, y);
    return acc;
}
CylClosed CylClosed::dx() const {
    std::vector<CylTerm> out;
    out.reserve(terms_.size());
    for (const CylTerm& t : terms_) out.push_back(t.dx());
    return CylClosed(std::move(out));
}
CylClosed CylClosed::dy() const {
    std::vector<CylTerm> out;
    out.reserve(terms_.size());
    for (const CylTerm& t : terms_) out.push_back(t.dy());
    return CylClosed(std::move(out));
}
CylClosed CylClosed::rmul(const Cplx& c) const {
    std::vector<CylTerm> out = terms_;
    for (CylTerm& t : out) {
        t.q0 = t.q0.rmul(c);
        t.q1 = t.q1.rmul(c);
        t.q2 = t.q2.rmul(c);
    }
    return CylClosed(std::move(out));
}
CylClosed CylClosed::operator+(const CylClosed& o) const {
    std::vector<CylTerm> out = terms_;
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return CylClosed(std::move(out));
}
CylClosed CylClosed::operator*(double s) const {
    std::vector<CylTerm> out = terms_;
    for (CylTerm& t : out) {
        t.q0 = t.q0 * s;
        t.q1 = t.q1 * s;
        t.q2 = t.q2 * s;
    }
    return CylClosed(std::move(out));
}

namespace {

// beta = -f_x^{-1} alpha_x = 2i alpha_x on the cylinder; left multiplication
// by the complex constant 2i keeps the closed form.
CylClosed cylBeta(const CylClosed& alpha) {
    CylClosed ax = alpha.dx();
    std::vector<CylTerm> out = ax.terms();
    const Cplx two_i(0, 2);
    for (CylTerm& t : out) {
        t.q0 = t.q0.lmul(two_i);
        t.q1 = t.q1.lmul(two_i);
        t.q2 = t.q2.lmul(two_i);
    }
    return CylClosed(std::move(out));
}

CylinderSection makeSection(const CylClosed& alpha, const Cplx& mu, const Cplx& h, bool plus,
                            bool has_multiplier = true) {
    CylinderSection s;
    s.alpha = alpha;
    s.beta = cylBeta(alpha);
    s.mu = mu;
    s.multiplier = h;
    s.plus = plus;
    s.has_multiplier = has_multiplier;
    return s;
}

} // namespace

HVector2 CylinderSection::value(double x, double y) const {
    return {alpha.eval(x, y), beta.eval(x, y)};
}
HVector2 CylinderSection::dx(double x, double y) const {
    return {alpha.dx().eval(x, y), beta.dx().eval(x, y)};
}
HVector2 CylinderSection::dy(double x, double y) const {
    return {alpha.dy().eval(x, y), beta.dy().eval(x, y)};
}

SectionField::Analytic CylinderSection::closures() const {
    SectionField::Analytic a;
    const CylClosed al = alpha, be = beta;
    const CylClosed alx = alpha.dx(), bex = beta.dx();
    const CylClosed aly = alpha.dy(), bey = beta.dy();
    a.val = [al, be](double x, double y) { return HVector2{al.eval(x, y), be.eval(x, y)}; };
    a.dx = [alx, bex](double x, double y) {
        return HVector2{alx.eval(x, y), bex.eval(x, y)};
    };
    a.dy = [aly, bey](double x, double y) {
        return HVector2{aly.eval(x, y), bey.eval(x, y)};
    };
    return a;
}

CylinderOracle cylinderSections(const Cplx& rho) {
    if (std::abs(rho) < 1e-300)
        throw DegenerateSpectralError("cylinderSections: rho = 0 (constant sections)");
    CylinderOracle o;
    o.rho = rho;
    const Cplx sr = std::sqrt(rho);
    const Cplx w = std::sqrt(Cplx(1, 0) - rho);
    o.a = 1.0 - 2.0 * rho;
    o.b = 2.0 * sr * w;
    o.mu_plus = o.a + Cplx(0, 1) * o.b;
    o.mu_minus = o.a - Cplx(0, 1) * o.b;
    o.h_plus = -cexp(Cplx(0, M_PI) * w);
    o.h_minus = -cexp(Cplx(0, -M_PI) * w);
    o.degenerate = std::abs(rho - 1.0) < 1e-14;

    if (o.degenerate) {
        // mu_+ = mu_- = -1. Multiplier branch e^{iy/2}(1+j)e^{ix/2} and the
        // linear-in-y branch e^{iy/2}(y+i)(1-j)e^{-ix/2}, which is parallel
        // but carries no multiplier.
        CylTerm t1{Quaternion::one() + kJ, {}, {}, Cplx(0.5, 0), Cplx(0, 0)};
        o.sections.push_back(makeSection(CylClosed({t1}), -1.0, -1.0, true));
        CylTerm t2{(Quaternion::one() - kJ).lmul(Cplx(0, 1)), {}, {}, Cplx(-0.5, 0),
                   Cplx(0, 0)};
        CylTerm t3{{}, Quaternion::one() - kJ, {}, Cplx(-0.5, 0), Cplx(0, 0)};
        o.sections.push_back(
            makeSection(CylClosed({t2, t3}), -1.0, 0.0, true, /*has_multiplier=*/false));
        return o;
    }

    auto quat = [](const Cplx& c) { return Quaternion(c); };
    // alpha^1_pm
    for (int pm : {+1, -1}) {
        CylTerm t;
        t.q0 = quat(sr) + kJ * quat(1.0 + double(pm) * w);
        t.kx = sr * 0.5;
        t.ky = double(pm) * w * 0.5;
        o.sections.push_back(makeSection(CylClosed({t}), pm > 0 ? o.mu_plus : o.mu_minus,
                                         pm > 0 ? o.h_plus : o.h_minus, pm > 0));
    }
    // alpha^2_pm
    for (int pm : {+1, -1}) {
        CylTerm t;
        t.q0 = quat(-sr) + kJ * quat(1.0 - double(pm) * w);
        t.kx = -sr * 0.5;
        t.ky = -double(pm) * w * 0.5;
        o.sections.push_back(makeSection(CylClosed({t}), pm > 0 ? o.mu_plus : o.mu_minus,
                                         pm > 0 ? o.h_minus : o.h_plus, pm > 0));
    }
    return o;
}

std::vector<double> cylinderResonances(int k_max) {
    if (k_max < 2) throw ConfigInvalidError("cylinderResonances: k_max must be >= 2");
    std::vector<double> out;
    for (int k = 2; k <= k_max; ++k) out.push_back(1.0 - double(k) * double(k));
    return out;
}

CylinderMuFamily::CylinderMuFamily(double t, bool normalized) : t_(t) {
    const double sg = std::sin(t / 2), cg = std::cos(t / 2);
    CylTerm base;
    base.q0 = Quaternion(Cplx(sg, 0)) + kJ * (1.0 + cg);
    base.kx = Cplx(sg / 2, 0);
    base.ky = Cplx(cg / 2, 0);
    raw_ = CylClosed({base});

    // spectral derivative: qdot + q * i(kx' x + ky' y)
    const double dsg = cg / 2, dcg = -sg / 2;
    CylTerm dt0 = base;
    dt0.q0 = Quaternion(Cplx(dsg, 0)) + kJ * dcg;
    dt0.q1 = {};
    dt0.q2 = {};
    CylTerm dt1 = base;
    dt1.q0 = {};
    dt1.q1 = base.q0.rmul(Cplx(0, dcg / 2));
    dt1.q2 = base.q0.rmul(Cplx(0, dsg / 2));
    rawt_ = CylClosed({dt0, dt1});

    raw_dx_ = raw_.dx();
    raw_dy_ = raw_.dy();
    rawt_dx_ = rawt_.dx();
    rawt_dy_ = rawt_.dy();

    if (normalized) {
        const Quaternion base0 = raw_.eval(0, 0);
        const Quaternion base0_t = rawt_.eval(0, 0);
        nu_ = base0.inverse();
        nu_t_ = -(nu_ * base0_t * nu_);
    } else {
        nu_ = Quaternion::one();
        nu_t_ = {};
    }
}

Quaternion CylinderMuFamily::value(double x, double y) const { return raw_.eval(x, y) * nu_; }
Quaternion CylinderMuFamily::dx(double x, double y) const { return raw_dx_.eval(x, y) * nu_; }
Quaternion CylinderMuFamily::dy(double x, double y) const { return raw_dy_.eval(x, y) * nu_; }
Quaternion CylinderMuFamily::tDeriv(double x, double y) const {
    return rawt_.eval(x, y) * nu_ + raw_.eval(x, y) * nu_t_;
}
Quaternion CylinderMuFamily::tDerivDx(double x, double y) const {
    return rawt_dx_.eval(x, y) * nu_ + raw_dx_.eval(x, y) * nu_t_;
}
Quaternion CylinderMuFamily::tDerivDy(double x, double y) const {
    return rawt_dy_.eval(x, y) * nu_ + raw_dy_.eval(x, y) * nu_t_;
}

SectionField::Analytic CylinderMuFamily::closures() const {
    SectionField::Analytic a;
    const CylinderMuFamily self = *this;
    a.val = [self](double x, double y) { return HVector2{self.value(x, y), {}}; };
    a.dx = [self](double x, double y) { return HVector2{self.dx(x, y), {}}; };
    a.dy = [self](double x, double y) { return HVector2{self.dy(x, y), {}}; };
    return a;
}

RevolutionOracle::RevolutionOracle(ProfileCurve profile, const DomainGrid& grid,
                                   const Cplx& rho_dual, bool plus, std::array<Cplx, 2> c0,
                                   int ode_substeps_per_cell)
    : profile_(std::move(profile)), grid_(grid), rho_(rho_dual), plus_(plus),
      x0_(grid.x_min) {
    if (std::abs(rho_dual) < 1e-300)
        throw DegenerateSpectralError("RevolutionOracle: rho' = 0");
    s_ = std::sqrt(1.0 + 4.0 * rho_dual);
    step_ = grid.hx() / double(ode_substeps_per_cell);
    const std::size_t n = std::size_t(ode_substeps_per_cell) * (grid.nx - 1);
    table_.resize(n + 1);
    table_[0] = c0;
    double x = x0_;
    for (std::size_t k = 0; k < n; ++k) {
        // classical RK4
        const auto& c = table_[k];
        const auto k1 = rhs(x, c);
        auto add = [](const std::array<Cplx, 2>& a, const std::array<Cplx, 2>& b, double s) {
            return std::array<Cplx, 2>{a[0] + b[0] * s, a[1] + b[1] * s};
        };
        const auto k2 = rhs(x + step_ / 2, add(c, k1, step_ / 2));
        const auto k3 = rhs(x + step_ / 2, add(c, k2, step_ / 2));
        const auto k4 = rhs(x + step_, add(c, k3, step_));
        table_[k + 1] = {c[0] + step_ / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                         c[1] + step_ / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
        x += step_;
        if (!std::isfinite(std::abs(table_[k + 1][0])) ||
            std::abs(table_[k + 1][0]) + std::abs(table_[k + 1][1]) > 1e12)
            throw BlowupError("RevolutionOracle: coefficient ODE blow-up");
    }
}

std::array<Cplx, 2> RevolutionOracle::rhs(double x, const std::array<Cplx, 2>& c) const {
    const double pm = plus_ ? 1.0 : -1.0;
    const double q = profile_.q(x), dq = profile_.dq(x), dp = profile_.dp(x);
    const Cplx A = (1.0 + pm * s_) * dq, B = Cplx(0, 1) * (1.0 - pm * s_) * dp;
    const Cplx C = Cplx(0, 1) * (1.0 + pm * s_) * dp, D = (1.0 - pm * s_) * dq;
    const double inv = 1.0 / (2.0 * q);
    return {(A * c[0] + B * c[1]) * inv, (C * c[0] + D * c[1]) * inv};
}

std::array<Cplx, 2> RevolutionOracle::coeffAt(double x) const {
    const double f = (x - x0_) / step_;
    std::size_t k = f <= 0 ? 0 : std::size_t(std::floor(f));
    if (k >= table_.size() - 1) k = table_.size() - 1;
    const double rem = x - (x0_ + step_ * double(k));
    std::array<Cplx, 2> c = table_[k];
    if (std::abs(rem) < 1e-15) return c;
    // single RK4 step over the remainder
    const auto k1 = rhs(x0_ + step_ * double(k), c);
    auto add = [](const std::array<Cplx, 2>& a, const std::array<Cplx, 2>& b, double s) {
        return std::array<Cplx, 2>{a[0] + b[0] * s, a[1] + b[1] * s};
    };
    const double h = rem;
    const double xk = x0_ + step_ * double(k);
    const auto k2 = rhs(xk + h / 2, add(c, k1, h / 2));
    const auto k3 = rhs(xk + h / 2, add(c, k2, h / 2));
    const auto k4 = rhs(xk + h, add(c, k3, h));
    return {c[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            c[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

std::array<Cplx, 2> RevolutionOracle::coeffDerivAt(double x) const {
    return rhs(x, coeffAt(x));
}

Cplx RevolutionOracle::multiplier() const {
    const double pm = plus_ ? 1.0 : -1.0;
    return -cexp(Cplx(0, pm * M_PI) * s_);
}

SectionField::Analytic RevolutionOracle::closures() const {
    const RevolutionOracle* self = this;
    const double pm = plus_ ? 1.0 : -1.0;
    const Cplx s = s_;
    const auto q = profile_.q, dq = profile_.dq;
    auto alphaBeta = [self, pm, s, q, dq](double x, double y, int what) {
        const auto c = self->coeffAt(x);
        const auto cd = self->coeffDerivAt(x);
        const Quaternion u = expI(y / 2);
        const Cplx E = cexp(Cplx(0, pm * 0.5) * s * y);
        const double qq = q(x);
        const Quaternion calpha = Quaternion(c[0]) + kJ * Quaternion(c[1]);
        const Quaternion cbeta =
            (Quaternion(c[1] * (pm * s - 1.0)) + kJ * Quaternion(c[0] * (1.0 + pm * s))) *
            (1.0 / (2.0 * qq));
        if (what == 0) return HVector2{(u * calpha).rmul(E), (u * cbeta).rmul(E)};
        if (what == 1) { // d/dx
            const Quaternion dca = Quaternion(cd[0]) + kJ * Quaternion(cd[1]);
            const Quaternion dcb =
                (Quaternion(cd[1] * (pm * s - 1.0)) + kJ * Quaternion(cd[0] * (1.0 + pm * s))) *
                    (1.0 / (2.0 * qq)) -
                cbeta * (dq(x) / qq);
            return HVector2{(u * dca).rmul(E), (u * dcb).rmul(E)};
        }
        // d/dy: (i/2) u c E + u c E (pm i s / 2)
        const Cplx iky = Cplx(0, pm * 0.5) * s;
        const Quaternion da = (u * calpha.lmul(Cplx(0, 0.5)) + u * calpha.rmul(iky));
        const Quaternion db = (u * cbeta.lmul(Cplx(0, 0.5)) + u * cbeta.rmul(iky));
        return HVector2{da.rmul(E), db.rmul(E)};
    };
    SectionField::Analytic a;
    a.val = [alphaBeta](double x, double y) { return alphaBeta(x, y, 0); };
    a.dx = [alphaBeta](double x, double y) { return alphaBeta(x, y, 1); };
    a.dy = [alphaBeta](double x, double y) { return alphaBeta(x, y, 2); };
    return a;
}

AnalyticSurface RevolutionOracle::closedFormDarboux() const {
    const RevolutionOracle* self = this;
    const double pm = plus_ ? 1.0 : -1.0;
    const Cplx s = s_;
    const auto p = profile_.p, q = profile_.q;
    auto fhat = [self, pm, s, p, q](double x, double y) {
        const auto c = self->coeffAt(x);
        const double qq = q(x);
        const double n0 = std::norm(c[0]), n1 = std::norm(c[1]);
        const double D = n1 * std::norm(pm * s - 1.0) + n0 * std::norm(1.0 + pm * s);
        if (D < 1e-14)
            throw DegenerateDenominatorError("closedFormDarboux: vanishing denominator");
        const Cplx head = 2.0 * pm * c[0] * std::conj(c[1]) * s.real();
        const Cplx jcoef = n1 * (pm * std::conj(s) - 1.0) - n0 * (1.0 + pm * s);
        const Quaternion T =
            (Quaternion(head) + (kJ * Quaternion(jcoef)).rmul(std::exp(Cplx(0, -y)))) *
            (2.0 * qq / D);
        const Quaternion f = Quaternion::i() * p(x) + (kJ * qq).rmul(std::exp(Cplx(0, -y)));
        return f + T;
    };
    AnalyticSurface sfc;
    sfc.f = fhat;
    const double h = 1e-6;
    sfc.fx = [fhat, h](double x, double y) { return (fhat(x + h, y) - fhat(x - h, y)) * (1 / (2 * h)); };
    sfc.fy = [fhat, h](double x, double y) { return (fhat(x, y + h) - fhat(x, y - h)) * (1 / (2 * h)); };
    return sfc;
}

double dualGaugeScale(const ImmersionField& f, const ImmersionField& g_parallel) {
    const DomainGrid& g = f.grid();
    const std::size_t i = g.nx / 2, j = g.ny / 2;
    const Quaternion prod = f.dx(i, j) * g_parallel.dx(i, j);
    const Quaternion prod2 = f.dx(i / 2 + 1, j) * g_parallel.dx(i / 2 + 1, j);
    if (prod.im().norm() > 1e-6 * std::abs(prod.w) ||
        std::abs(prod.w - prod2.w) > 1e-6 * std::abs(prod.w))
        throw ConfigInvalidError("dualGaugeScale: dg is not a constant real multiple of df^d");
    return prod.w;
}

} // namespace quatsurf
