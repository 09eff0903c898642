#pragma once

#include <array>
#include <vector>

#include "quatsurf/connections.hpp"

namespace quatsurf {

/// Term e^{iy/2} (q0 + q1 y + q2 x) e^{i (kx x + ky y)} with complex kx, ky.
/// The family is closed under d/dx, d/dy and the spectral-parameter
/// derivative, which keeps every oracle derivative exact.
struct CylTerm {
    Quaternion q0, q1, q2;
    Cplx kx, ky;

    Quaternion eval(double x, double y) const;
    CylTerm dx() const;
    CylTerm dy() const;
};

/// Quaternion-valued map assembled from CylTerm summands.
class CylClosed {
  public:
    CylClosed() = default;
    explicit CylClosed(std::vector<CylTerm> terms) : terms_(std::move(terms)) {}

    Quaternion eval(double x, double y) const;
    CylClosed dx() const;
    CylClosed dy() const;
    CylClosed rmul(const Cplx& c) const;
    CylClosed operator+(const CylClosed& o) const;
    CylClosed operator*(double s) const;

    const std::vector<CylTerm>& terms() const { return terms_; }

  private:
    std::vector<CylTerm> terms_;
};

/// Closed-form d_rho-parallel basis of the cylinder f = (ix + j e^{-iy})/2
/// with dual g = f + N:
///   alpha^1_pm = e^{iy/2} (sqrt(rho) + j (1 pm w)) e^{ i(sqrt(rho) x pm w y)/2 }
///   alpha^2_pm = e^{iy/2} (-sqrt(rho) + j (1 mp w)) e^{-i(sqrt(rho) x pm w y)/2 }
/// with w = sqrt(1-rho) and beta^l_pm = (N alpha (a-1) pm alpha b)/2 where
/// a = 1 - 2 rho, b = 2 sqrt(rho) sqrt(1-rho). At rho = 1 the basis
/// degenerates; the oracle then returns the multiplier branch and the
/// linear-in-y branch (which is not a section with multiplier).
struct CylinderSection {
    CylClosed alpha;
    CylClosed beta;
    Cplx mu;        // CMC spectral parameter of the alpha family
    Cplx multiplier;// y-period multiplier h; the linear branch reports 0
    bool plus;      // alpha is d_{mu_+}-parallel
    bool has_multiplier = true;

    HVector2 value(double x, double y) const;
    HVector2 dx(double x, double y) const;
    HVector2 dy(double x, double y) const;

    SectionField::Analytic closures() const;
};

struct CylinderOracle {
    Cplx rho;
    Cplx a, b;
    Cplx mu_plus, mu_minus;
    Cplx h_plus, h_minus; // -e^{+- pi i sqrt(1-rho)}
    bool degenerate = false; // rho = 1
    std::vector<CylinderSection> sections; // 4 generically, 2 at rho = 1
};

/// Builds the closed-form section basis at rho != 0.
CylinderOracle cylinderSections(const Cplx& rho);

/// Resonance points rho_k = 1 - k^2 for k = 2..k_max.
std::vector<double> cylinderResonances(int k_max);

/// Smooth-in-t slice of the family t -> alpha^1_+(rho = sin^2(t/2)), the
/// d^N_{e^{it}}-parallel family of the cylinder. When normalized, the family
/// is right-divided by its value at the base point (0, 0), so it passes
/// through the constant section 1 at t = 0. All derivatives (x, y and the
/// spectral direction t) are exact.
class CylinderMuFamily {
  public:
    explicit CylinderMuFamily(double t, bool normalized = true);

    double t() const { return t_; }
    Quaternion value(double x, double y) const;
    Quaternion dx(double x, double y) const;
    Quaternion dy(double x, double y) const;
    Quaternion tDeriv(double x, double y) const;
    Quaternion tDerivDx(double x, double y) const;
    Quaternion tDerivDy(double x, double y) const;

    /// As a C^2 section (alpha in component a) for d^N_{e^{it}}.
    SectionField::Analytic closures() const;

  private:
    double t_;
    CylClosed raw_, raw_dx_, raw_dy_;
    CylClosed rawt_, rawt_dx_, rawt_dy_;
    Quaternion nu_ = Quaternion::one(), nu_t_;
};

/// Revolution-surface oracle in the isothermic-coordinate dual gauge
/// (df^d = f_x^{-1} dx - f_y^{-1} dy), spectral value rho'. The complex
/// coefficient pair c = (c0, c1) solves
///   c' = 1/(2q) [ (1 pm s) q'   i (1 mp s) p' ; i (1 pm s) p'   (1 mp s) q' ] c
/// with s = sqrt(1 + 4 rho'), and
///   alpha_pm = e^{iy/2} (c0 + j c1) e^{pm i s y / 2},
///   beta_pm  = e^{iy/2} (c1 (pm s - 1) + j c0 (1 pm s)) e^{pm i s y / 2} / (2q).
class RevolutionOracle {
  public:
    RevolutionOracle(ProfileCurve profile, const DomainGrid& grid, const Cplx& rho_dual,
                     bool plus, std::array<Cplx, 2> c0 = {Cplx(1, 0), Cplx(0, 0)},
                     int ode_substeps_per_cell = 512);

    const Cplx& s() const { return s_; }
    Cplx multiplier() const; // -e^{pm i pi s}
    SectionField::Analytic closures() const;

    /// Closed-form Darboux transform f_pm = f + alpha beta^{-1}; the j-part
    /// modulus q_pm is y-independent (rotation surface). Throws
    /// DegenerateDenominatorError when the T denominator vanishes.
    AnalyticSurface closedFormDarboux() const;

    std::array<Cplx, 2> coeffAt(double x) const;      // (c0, c1)
    std::array<Cplx, 2> coeffDerivAt(double x) const; // exact via the ODE right side

  private:
    ProfileCurve profile_;
    DomainGrid grid_;
    Cplx rho_;
    Cplx s_;
    bool plus_;
    double x0_;
    double step_;
    std::vector<std::array<Cplx, 2>> table_; // dense samples across [x_min, x_max]

    std::array<Cplx, 2> rhs(double x, const std::array<Cplx, 2>& c) const;
};

/// Spectral-gauge conversion between two duals with d(dual2) = scale d(dual1):
/// a d_rho-parallel section in gauge 1 is d_{rho/scale}-parallel in gauge 2.
/// For a CMC surface, estimates the real scale rho0 with dg = rho0 df^d.
double dualGaugeScale(const ImmersionField& f, const ImmersionField& g_parallel);

} // namespace quatsurf
