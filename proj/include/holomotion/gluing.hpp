#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "holomotion/grid_map.hpp"
#include "holomotion/motions.hpp"
#include "holomotion/normal_forms.hpp"

namespace holomotion {

enum class GlueKind { Koenig, Boettcher };

/// One closed annulus inner <= |z| <= outer, labelled by its index j.
struct Annulus {
  int index = 0;
  double inner = 0.0;
  double outer = 0.0;
};

/// The fundamental-annulus decomposition of the δ-disk for r = r_k.
/// König: A_j = {|λ|^{j+1} r <= |z| <= |λ|^j r} for j = -k .. J, where the
/// innermost kept annulus is the first whose inner radius drops below the
/// cutoff. Böttcher: A_j = {r^{1/n^j} <= |z| <= r^{1/n^{j+1}}} for
/// j = 0 .. k-1 around the core disk |z| <= r; k >= 1.
struct AnnulusDecomposition {
  GlueKind kind = GlueKind::Koenig;
  cplx lambda{};
  std::size_t degree = 1;
  double r = 0.0;
  double delta = 0.0;
  std::size_t k = 0;
  std::vector<Annulus> annuli;  // outermost first; neighbours share a circle

  /// Boundary circles, decreasing.
  std::vector<double> radii() const;
};

/// Throws RadiusUnderflow when r_k < DBL_EPSILON * δ and
/// PreconditionViolated when the germ class does not match the kind.
/// `inner_cutoff` only affects König decompositions.
AnnulusDecomposition decompose(GlueKind kind, const AnalyticGerm& germ, std::size_t k, double delta,
                               double inner_cutoff);

struct GlueOptions {
  std::size_t mesh = 128;            // nodes per annulus in each direction
  std::size_t boundary_points = 128; // samples per circle of the boundary motion
  ExtensionProfile profile = ExtensionProfile::Harmonic;
};

struct GluedPiece {
  Annulus annulus;
  GridMap grid;
  BeltramiEstimate beltrami;
};

/// A piecewise map φ_r on the δ-disk assembled from per-annulus meshes.
struct GluedMap {
  AnnulusDecomposition decomposition;
  std::vector<GluedPiece> pieces;  // same order as decomposition.annuli
  double k_sup = 0.0;
  double K = 1.0;
  std::size_t degenerate = 0;
  double residual = 0.0;    // sup |f(φ(z)) - φ(model(z))| over cell midpoints
  double continuity = 0.0;  // sup mismatch on shared circles
  std::vector<long> windings;  // Böttcher: winding of f∘φ_j on the outer circle of each lift piece

  /// φ_r(z) for |z| <= δ: the core identity (Böttcher), mesh interpolation
  /// on the pieces, 0 at the origin. König maps below the innermost piece
  /// are not represented and throw PreconditionViolated.
  cplx operator()(cplx z) const;
};

/// φ_r on A_0 as the extension of the König motion at c = r/δ.
ExtendedMotion koenig_fundamental(const AnalyticGerm& germ, const AnnulusDecomposition& decomposition,
                                  const GlueOptions& options = {});

/// Pieces φ_r(z) = f^j(φ_r(λ^{-j} z)) on every annulus. Inverse iterates
/// must stay in the disk of radius domain_radius(germ), else EscapedDomain.
/// Throws BoundaryMismatch when neighbouring pieces disagree by more than 1e-9.
GluedMap koenig_glue(const AnalyticGerm& germ, const AnnulusDecomposition& decomposition,
                     const GlueOptions& options = {});

struct LiftResult {
  GridMap grid;
  long winding = 0;            // of f∘φ_j along the outer circle
  double seed_mismatch = 0.0;  // |φ_j - φ_{j-1}| on the shared circle
};

/// Solves f(φ_j(z)) = φ_{j-1}(z^n) on the mesh of `target`, continuing the
/// branch radially outward from the circle shared with `lower`. Throws
/// BranchAmbiguity when a Newton root lands too far from its prediction
/// relative to the spacing of the n preimages.
LiftResult boettcher_lift(const AnalyticGerm& germ, const GridMap& lower, const Annulus& target);

/// Identity on |z| <= r, the motion extension at c = r^{1/n} on A_0 and
/// lifts on A_1 .. A_{k-1}. Needs a germ with leading coefficient 1.
GluedMap boettcher_glue(const AnalyticGerm& germ, const AnnulusDecomposition& decomposition,
                        const GlueOptions& options = {});

/// The constant C in the convergence target K_k - 1 <= C r_k.
inline constexpr double kConvergenceConstant = 4.0;

struct ConvergenceRow {
  std::size_t k = 0;
  double r = 0.0;
  double K = 1.0;
  double k_sup = 0.0;
  double residual = 0.0;
  double continuity = 0.0;
  std::size_t pieces = 0;
  bool monotone = true;  // K_k <= K_{k-1} + 1e-3
  bool within_bound = true;
};

struct ConvergenceReport {
  GlueKind kind = GlueKind::Koenig;
  double delta = 0.0;
  std::vector<ConvergenceRow> rows;
  /// Largest-k glued map against the series conjugacy on |z| = δ/8, both
  /// divided by their derivative-at-0 estimates.
  std::optional<double> overlap_error;

  bool monotone() const noexcept;
  bool within_bound() const noexcept;
};

/// Glues for each k in `k_list` and tabulates dilatation and residuals.
/// δ defaults to half of domain_radius (König) or the Böttcher radius. Germs for
/// Böttcher gluing must have leading coefficient 1. When `largest` is given
/// it receives the glued map of the last k.
ConvergenceReport convergence_report(const AnalyticGerm& germ, GlueKind kind, const std::vector<std::size_t>& k_list,
                                     const GlueOptions& options = {}, std::optional<double> delta = std::nullopt,
                                     std::size_t series_order = kDefaultOrder, GluedMap* largest = nullptr);

/// CSV with columns k,r_k,K,K_minus_1,bound,k_sup,residual,continuity,pieces,monotone,within_bound.
void write_csv(std::ostream& out, const ConvergenceReport& report);

}  // namespace holomotion
