#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "quatsurf/hmatrix.hpp"
#include "quatsurf/immersion.hpp"
#include "quatsurf/spectral.hpp"

namespace quatsurf {

enum class ConnectionKind { IsothermicRho, HarmonicGaussN, ConformalGaussS };
enum class Dir { X, Y };

/// One member of an associated family of flat connections, evaluated as the
/// one-form omega with parallel transport solving d phi = -omega phi.
///
///   IsothermicRho:   omega(v) = (df v_b,               df^d v_a rho)       on C^4
///   HarmonicGaussN:  omega(v) = (df (N v_a (a-1) + v_a b)/2,  0)           on C^2
///   ConformalGaussS: omega(v) = (f X, X),  X = dg (N_g v_b (a-1) + v_b b)/2 on C^4
///
/// All evaluation is pure; instances are safe to share across threads.
class ConnectionFamily {
  public:
    using Ptr = std::shared_ptr<const ImmersionField>;

    /// d_rho for the isothermic pair (f, dual). The dual gauge (parallel CMC
    /// surface or the isothermic-coordinate dual) is the caller's choice and
    /// fixes the meaning of rho.
    static ConnectionFamily isothermic(Ptr f, Ptr dual, const Cplx& rho);

    /// d_mu^N for a CMC surface with Gauss map provider N.
    static ConnectionFamily harmonicGauss(Ptr f, SurfaceFn N, const Cplx& mu);

    /// d_mu^S from the conformal Gauss map of f, with parallel surface g and
    /// N_g = -N.
    static ConnectionFamily conformalGauss(Ptr f, Ptr g, SurfaceFn Ng, const Cplx& mu);

    ConnectionKind kind() const { return kind_; }
    const SpectralPoint& spectral() const { return spectral_; }
    const DomainGrid& grid() const { return f_->grid(); }
    const ImmersionField& surface() const { return *f_; }
    const ImmersionField* dual() const { return dual_.get(); }
    const SurfaceFn& normal() const { return normal_; }

    /// Complex dimension of the section space (2 or 4).
    int dim() const { return kind_ == ConnectionKind::HarmonicGaussN ? 2 : 4; }

    HVector2 omega(double x, double y, Dir dir, const HVector2& v) const;
    Eigen::MatrixXcd omegaMatrix(double x, double y, Dir dir) const;

  private:
    ConnectionKind kind_;
    SpectralPoint spectral_;
    Ptr f_;
    Ptr dual_; // isothermic: f^d; conformal: g
    SurfaceFn normal_;
};

struct TransportSettings {
    int substeps = 64;      // RK4 substeps per grid edge
    double check_tol = 0.0; // when > 0, step-doubling check, StepTooCoarseError on failure
};

/// RK4 transport of v along the straight segment (x0,y0)-(x1,y1), which must
/// be axis-parallel.
HVector2 transportEdge(const ConnectionFamily& conn, double x0, double y0, double x1,
                       double y1, const HVector2& v, const TransportSettings& settings = {});

/// Transport along a polyline of axis-parallel segments.
HVector2 transportPath(const ConnectionFamily& conn,
                       const std::vector<std::pair<double, double>>& points,
                       const HVector2& v, const TransportSettings& settings = {});

/// Section sampled on the grid of its connection. HarmonicGaussN sections
/// live in component a only.
struct SectionField {
    struct Analytic {
        std::function<HVector2(double, double)> val, dx, dy;
    };

    ConnectionKind kind = ConnectionKind::IsothermicRho;
    SpectralPoint spectral;
    DomainGrid grid;
    std::vector<HVector2> values;
    double transport_residual = 0;
    std::optional<Analytic> analytic;

    const HVector2& at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
    Quaternion alpha(std::size_t i, std::size_t j) const { return at(i, j).a; }
    Quaternion beta(std::size_t i, std::size_t j) const { return at(i, j).b; }
};

/// Builds a section over the whole grid by transporting an initial value from
/// the base node (x_min, y_min): along the x-axis row, then per column in y.
/// Rejects a zero initial value.
SectionField sectionFromInitial(const ConnectionFamily& conn, const HVector2& initial,
                                const TransportSettings& settings = {});

/// Wraps closed-form closures as a SectionField (values sampled at nodes).
SectionField sectionFromAnalytic(const ConnectionFamily& conn, SectionField::Analytic closures);

/// Max of ||d phi + omega phi|| over usable nodes, scaled by the local
/// magnitude of the compared one-form values (sections grow exponentially
/// across the grid for spectral parameters away from 1, so an absolute
/// residual would be meaningless). Analytic sections are differentiated
/// exactly; sampled ones by interior finite differences that never cross the
/// periodic seam (sections carry a multiplier, the stored field is not
/// periodic).
double transportResidual(const ConnectionFamily& conn, SectionField& section);

struct FlatnessLevel {
    std::size_t cells_per_side;
    double max_plaquette_deviation;
    double total_deviation;
};

struct FlatnessReport {
    std::vector<FlatnessLevel> levels;
    double fitted_order; // least-squares slope of log(total) vs log(h)
};

/// Plaquette-holonomy flatness scan over sub-lattices of the parameter
/// rectangle at the given refinement levels (cells per side).
FlatnessReport flatnessCheck(const ConnectionFamily& conn,
                             const std::vector<std::size_t>& levels,
                             const TransportSettings& settings = {TransportSettings{16, 0.0}});

struct MonodromyResult {
    Eigen::MatrixXcd matrix;       // transport of the canonical complex frame over one y-period
    std::vector<Cplx> multipliers; // eigenvalues, sorted by (Im, Re) descending
    Eigen::MatrixXcd eigenvectors; // columns; initial values at (x0, y_min)
    Cplx h1, h2;                   // representatives of the two multiplier clusters
    bool resonant = false;         // |h1 - h2| < 1e-8
};

/// Period monodromy along y at fixed x0 (grid must be periodic in y).
MonodromyResult monodromy(const ConnectionFamily& conn, double x0,
                          const TransportSettings& settings = {});

} // namespace quatsurf
