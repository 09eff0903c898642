#pragma once

#include "quatsurf/connections.hpp"
#include "quatsurf/oracles.hpp"
#include "quatsurf/surfaces.hpp"

namespace quatsurf {

/// Darboux transform fhat = f + T with tracked dual, normals and residual
/// diagnostics. Nodes where |beta| or |T| drop below 1e-8 of the median are
/// flagged singular (branch points) and masked in the residual statistics.
struct DarbouxResult {
    ImmersionField surface;
    std::vector<Quaternion> T;
    std::vector<Quaternion> Nhat, Rhat;
    std::vector<Quaternion> Td;
    std::optional<ImmersionField> dual; // fhat^d = f^d + T^d when the dual is supplied
    std::vector<std::size_t> singular_nodes;
    std::vector<double> cmc_residual; // ||(T^d + N)^2 - (rhohat^{-1} - 1)|| per node
    double max_cmc_residual = 0;      // over non-singular nodes
    double riccati_residual = 0;      // ||dT + df - T df^d rhohat T|| (scaled)
    double parallel_residual = 0;     // carried from the driving section
    double realness_residual = 0;     // max |Re fhat - Re fhat(base)|
    SpectralPoint spectral;
};

/// Classical Darboux transform by direct RK4 integration of
/// dT = -df + T df^d r T from T0 at the base node (x-axis row first, then
/// per-column y sweeps). Throws BlowupError past an overflow guard.
DarbouxResult classicalDarbouxRiccati(const ImmersionField& f, const ImmersionField& fd,
                                      double r, const Quaternion& T0,
                                      const TransportSettings& settings = {});

/// rho-Darboux transform D_{phi,rho}(f) = f + alpha beta^{-1} from a
/// d_rho-parallel section, with dual tracked as T^d = beta rho^{-1} alpha^{-1}.
DarbouxResult rhoDarboux(const ImmersionField& f, const ImmersionField& fd,
                         const SectionField& phi, const Cplx& rho);

/// mu-Darboux transform of a CMC surface from a d_mu^N-parallel alpha;
/// beta = (N alpha (a-1) + alpha b)/2. The CMC condition residual must vanish;
/// Re(fhat) is constant and Im(fhat) has mean curvature 1.
DarbouxResult muDarboux(const ImmersionField& f, const GaussData& gauss,
                        const SectionField& alpha, const Cplx& mu);

/// Parallel surface of the mu-Darboux transform by the closed formula
/// g^mu = g + beta rho^{-1} alpha^{-1}.
ImmersionField gMuDarboux(const ImmersionField& f, const GaussData& gauss,
                          const SectionField& alpha, const Cplx& mu);

struct BianchiResult {
    DarbouxResult result;       // relative to f1 = f + T1
    ImmersionField f1;          // the first Darboux transform
    double parallel_residual_1; // residual of phi being d^1_{rho2}-parallel
};

/// Common Darboux transform of D_{phi1,rho1}(f) and D_{phi2,rho2}(f) via
/// phi = phi2 - phi1 chi, chi = rho1^{-1} alpha1^{-1} alpha2 rho2. Throws
/// NotIndependentError when phi1, phi2 are H-linearly dependent at a node.
BianchiResult bianchiCommon(const ImmersionField& f, const SectionField& phi1,
                            const Cplx& rho1, const SectionField& phi2, const Cplx& rho2);

/// Simple factor dressing matrix r_rho^E(lambda) built from the splitting
/// C^4 = E + Ej + L with E = (F phi) C.
class DressingMatrix {
  public:
    DressingMatrix(DomainGrid grid, Cplx rho, std::vector<Mat4c> piE, std::vector<Mat4c> piEj,
                   std::vector<Mat4c> piL);

    const Cplx& rho() const { return rho_; }
    static Cplx gamma(const Cplx& rho, const Cplx& lambda);
    static Cplx sigma(const Cplx& rho, const Cplx& lambda);
    Mat4c eval(std::size_t i, std::size_t j, const Cplx& lambda) const;
    Mat4c evalAtInfinity(std::size_t i, std::size_t j) const;
    const Mat4c& projE(std::size_t i, std::size_t j) const { return piE_[grid_.index(i, j)]; }
    const Mat4c& projEj(std::size_t i, std::size_t j) const { return piEj_[grid_.index(i, j)]; }
    const Mat4c& projL(std::size_t i, std::size_t j) const { return piL_[grid_.index(i, j)]; }

  private:
    DomainGrid grid_;
    Cplx rho_;
    std::vector<Mat4c> piE_, piEj_, piL_;
};

struct SfdResult {
    DressingMatrix dressing;
    ImmersionField dressed;     // affine surface of im(etahat) = the dressed line bundle
    double etahat_sq_residual;  // max ||etahat(X) etahat(Y)|| over directions
    double detahat_residual;    // closedness of etahat
    double gauge_residual;      // r_lam . d_lam vs d + lam etahat at the sample lambdas
    double split_condition;     // worst condition number of [E | Ej | L]
};

/// Simple factor dressing of an isothermic surface along the line bundle of a
/// d_rho-parallel section. Sample lambdas drive the gauge identity check.
/// Throws SplittingDegenerateError when E + Ej + L fails at a node.
SfdResult sfdIsothermic(const ImmersionField& f, const ImmersionField& fd,
                        const SectionField& phi, const Cplx& rho,
                        const std::vector<Cplx>& sample_lambdas = {Cplx(0.3, 0.2),
                                                                   Cplx(-1.1, 0.7),
                                                                   Cplx(2.2, -0.4)});

/// Two-step simple factor dressing r_rho^W with W = span{F phi1, F phi2};
/// returns the original surface values for real rho. Throws
/// SplittingDegenerateError when W + Wj is not a splitting.
ImmersionField sfdTwoStep(const ImmersionField& f, const SectionField& phi1,
                          const SectionField& phi2, const Cplx& rho);

/// CMC simple factor dressing by the closed formula
/// fcheck = f - alpha (b/(a-1)) alpha^{-1}.
ImmersionField cmcSfd(const ImmersionField& f, const SectionField& alpha, const Cplx& mu);

struct CalapsoResult {
    ImmersionField surface; // f^Phi = -alpha1^{-1} alpha2
    double sphere_radius;   // mean of |f^Phi|
    double radius_deviation;
    double mean_curvature_s3;  // mean of H in S^3(radius)
    double curvature_deviation;
    std::vector<std::size_t> masked_nodes; // isolated zeros of alpha1
};

/// Calapso / isothermic associated family member from two H-independent
/// d_r-parallel sections (gauged by F). For CMC input and r in (0,1) the
/// image lies on a sphere and has constant mean curvature in it.
CalapsoResult calapso(const ImmersionField& f, const SectionField& phi1,
                      const SectionField& phi2, double r);

/// Spectral family of d^N_{e^{it}}-parallel sections. dx/dy are required for
/// surface diagnostics; the spectral derivatives are optional and finite
/// differences (with Richardson control) fill in when absent.
struct SpectralFamily {
    std::function<Quaternion(double t, double x, double y)> value;
    std::function<Quaternion(double t, double x, double y)> dx, dy;
    std::function<Quaternion(double t, double x, double y)> tDeriv;   // optional
    std::function<Quaternion(double t, double x, double y)> tDerivDx; // optional
    std::function<Quaternion(double t, double x, double y)> tDerivDy; // optional
};

/// The cylinder's oracle family as a SpectralFamily (normalized at the base
/// point so the family passes through 1 at t = 0).
SpectralFamily cylinderSpectralFamily();

struct SymBobenkoResult {
    ImmersionField surface; // A^N_{alpha,s}(f) = -2 alpha^{-1} d/dt alpha|_s
    std::vector<Quaternion> gauss; // alpha^{-1} N alpha
    double fd_disagreement;        // Richardson delta vs delta/2 difference (0 when analytic)
};

/// Sym-Bobenko associated CMC surface at mu = e^{is}. Finite differencing of
/// the family uses `delta` with one Richardson halving; disagreement beyond
/// `smooth_tol` throws NotSmoothError.
SymBobenkoResult symBobenko(const DomainGrid& grid, const SpectralFamily& family, double s,
                            const SurfaceFn& N, double delta = 1e-4,
                            double smooth_tol = 1e-5);

struct LimitReport {
    std::vector<double> ts;
    std::vector<double> errors; // mean-centred RMS distance to the Sym-Bobenko surface
    double fitted_order = 0;
    double endpoint_error = 0;
};

/// Isothermic associated family A_{Phi, r(t)}(f) with
/// Phi = (phi_+, (phi_+ - phi_-)/t) against the Sym-Bobenko limit surface.
LimitReport limitIsothermicFamily(const DomainGrid& grid, const SpectralFamily& family,
                                  double s, const SurfaceFn& N,
                                  const std::vector<double>& ts = {0.5, 0.25, 0.125, 0.01});

struct CwAssocResult {
    ImmersionField surface; // A^S_{Phi,mu}(f) = -alpha
    double sphere_radius;
    double radius_deviation;
    double mean_curvature_s3;
    double curvature_deviation;
};

/// Constrained Willmore associated family member for mu = e^{is} on the unit
/// circle, given the d_mu^N-parallel alpha.
CwAssocResult cwAssoc(const ImmersionField& f, const SectionField& alpha, const Cplx& mu);

/// Constrained Willmore family limit f^Phi = (2/t)(1 - alpha^{-1}
/// alpha_{e^{i(t+s)}}) against the Sym-Bobenko surface.
LimitReport cwLimit(const DomainGrid& grid, const SpectralFamily& family, double s,
                    const SurfaceFn& N,
                    const std::vector<double>& ts = {0.5, 0.25, 0.125, 0.01});

/// Darboux transform of f from a d_mu^S-parallel section phi = e nu + psi
/// beta: fhat = f + nu beta^{-1}. The right normal is harmonic; fhat is CMC
/// exactly when nu - alpha is zero (the mu-Darboux case).
DarbouxResult cwDarboux(const ImmersionField& f, const GaussData& gauss,
                        const SectionField& phi, const Cplx& mu);

/// Simple factor dressing of the conformal Gauss map with
/// W = span{e n, e alpha + psi beta}: the affine surface of
/// (S + Phi (b/(a-1)) Phi^{-1}) psi beta / 2. Equals cmcSfd up to the
/// constant n (b/(a-1)) n^{-1}.
ImmersionField cwSfd(const ImmersionField& f, const GaussData& gauss,
                     const SectionField& alpha, const Cplx& mu,
                     const Quaternion& n = Quaternion::one());

/// Mean-centred RMS distance between two node fields (translation-normalized
/// comparison used by the limit checks and route-equivalence tests).
double meanCentredRms(const std::vector<Quaternion>& a, const std::vector<Quaternion>& b);

/// Max node distance after removing the base-node offset.
double maxDistanceUpToTranslation(const std::vector<Quaternion>& a,
                                  const std::vector<Quaternion>& b);

} // namespace quatsurf
