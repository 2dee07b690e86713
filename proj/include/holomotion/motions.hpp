#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "holomotion/grid_map.hpp"
#include "holomotion/normal_forms.hpp"
#include "holomotion/series.hpp"

namespace holomotion {

/// Parameter samples in the disk |c| < radius: c = 0 followed by
/// `samples` equispaced points on each circle |c| = circle_radii[i],
/// starting at angle 0.
struct ParamGrid {
  double radius = 1.0;
  std::vector<double> circle_radii;
  std::size_t samples = 128;

  static ParamGrid circles(double disk_radius, std::vector<double> radii, std::size_t samples);

  std::size_t size() const noexcept { return 1 + circle_radii.size() * samples; }
  std::vector<cplx> points() const;
  /// Index of a grid point equal to c (to 1e-14 relative), if any.
  std::optional<std::size_t> index_of(cplx c) const;
};

/// A circle of base points: points[offset .. offset+count) equispaced on
/// |z| = radius starting at angle 0.
struct Ring {
  double radius = 0.0;
  std::size_t offset = 0;
  std::size_t count = 0;
};

/// A holomorphic motion sampled on a finite set E over a parameter grid.
struct MotionSample {
  std::vector<cplx> base_points;
  std::vector<Ring> rings;
  ParamGrid grid;
  std::vector<cplx> values;  // values[c_index * base_points.size() + z_index]

  /// Non-crossing margin of the two constructions: r - max|h| over the
  /// inner circle (König) or min|h| - r over the outer circle (Böttcher).
  std::optional<double> crossing_margin;
  /// Böttcher only: min|h| - r^{1/n} / 2 over the outer circle.
  std::optional<double> lower_bound_margin;

  cplx value(std::size_t c_index, std::size_t z_index) const noexcept {
    return values[c_index * base_points.size() + z_index];
  }
};

/// Equispaced circle of `count` points starting at angle 0.
std::vector<cplx> circle_points(double radius, std::size_t count);

/// Tabulates h(c, z) over the grid, parallel over parameters.
MotionSample sample_motion(std::vector<cplx> base_points, std::vector<Ring> rings, ParamGrid grid,
                           const std::function<cplx(cplx c, cplx z)>& h);

struct MotionReport {
  double identity_defect = 0.0;    // max |h(0, z) - z|
  double min_separation = 0.0;     // min over c of min pairwise |h(c, z) - h(c, z')|
  double holomorphy_defect = 0.0;  // max negative-frequency energy fraction on parameter circles
  std::size_t worst_point = 0;     // base point index attaining holomorphy_defect
  double holomorphy_tolerance = 1e-8;

  bool identity_ok() const noexcept { return identity_defect == 0.0; }
  bool injective_ok() const noexcept { return min_separation > 0.0; }
  bool holomorphic_ok() const noexcept { return holomorphy_defect <= holomorphy_tolerance; }
  bool passes() const noexcept { return identity_ok() && injective_ok() && holomorphic_ok(); }
};

/// Checks the three motion axioms on the samples. The holomorphy test takes
/// the DFT of c -> h(c, z) on each parameter circle and measures the share
/// of energy in negative frequencies. Throws InsufficientSampling when the
/// grid has no circle or fewer than 64 samples per circle.
MotionReport verify_motion(const MotionSample& sample, double holomorphy_tolerance = 1e-8);

/// König boundary motion: identity on |z| = r and z ψ_r(δ c z / r) on
/// |z| = |λ| r, where ψ_r(w) = f(w/λ)/w. Parameters live in the unit disk.
/// Throws NonCrossingViolated when some |h(c, z)| >= r on the inner circle.
MotionSample build_koenig_motion(const AnalyticGerm& germ, double r, double delta, const ParamGrid& grid,
                                 std::size_t points_per_circle = 128);

/// Böttcher boundary motion for a germ with leading term exactly z^n:
/// identity on |z| = r and z ψ(c z / r^{1/n}) on |z| = r^{1/n}, with ψ the
/// unit factor of the covering lift. ψ is defined on |w| < δ^{1/n}, which is
/// therefore the parameter disk. Throws NonCrossingViolated when some
/// |h(c, z)| <= r on the outer circle.
MotionSample build_boettcher_motion(const AnalyticGerm& germ, double r, double delta, const ParamGrid& grid,
                                    std::size_t points_per_circle = 128);

/// Radial profile used to carry boundary displacements across an annulus.
/// Linear blends the log-displacements linearly in log|z|. Harmonic gives
/// Fourier mode m the profile solving g' - m g = const, which makes the
/// mode's contribution to the Beltrami coefficient uniform across the
/// annulus; for m = 0 it coincides with Linear.
enum class ExtensionProfile { Harmonic, Linear };

/// Explicit quasiconformal surrogate on inner <= |z| <= outer matching given
/// boundary values. Works in w = log z: the log-displacements log(h(z)/z) on
/// the two circles are expanded in Fourier modes and blended across the strip.
class AnnulusExtension {
 public:
  /// Boundary values are given at equispaced points starting at angle 0.
  AnnulusExtension(double inner_radius, std::vector<cplx> inner_values, double outer_radius,
                   std::vector<cplx> outer_values, ExtensionProfile profile = ExtensionProfile::Harmonic);

  double inner_radius() const noexcept { return inner_; }
  double outer_radius() const noexcept { return outer_; }

  cplx operator()(cplx z) const;
  /// Same map at z = exp(log_radius + i angle).
  cplx evaluate_polar(double log_radius, double angle) const;

 private:
  struct Mode {
    int m;
    cplx inner;
    cplx outer;
  };
  double inner_, outer_, width_;
  ExtensionProfile profile_;
  std::vector<Mode> modes_;
};

struct ExtendedMotion {
  AnnulusExtension map;
  GridMap grid;
  OrientationReport orientation;
  double boundary_error = 0.0;  // max |extension - h(c, .)| over E
};

/// Extends h(c, ·) from the two rings of E to the annulus between them and
/// samples it on an nr x nt log-polar mesh. Throws NotInjectiveOnMesh if any
/// mesh cell is folded and PreconditionViolated if c is not a grid point or
/// the rings do not bound a proper annulus.
ExtendedMotion extend_motion(const MotionSample& sample, cplx c, std::size_t nr, std::size_t nt,
                             ExtensionProfile profile = ExtensionProfile::Harmonic);

}  // namespace holomotion
