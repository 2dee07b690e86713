#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "holomotion/parallel.hpp"
#include "holomotion/series.hpp"

namespace holomotion {

/// Coordinates of a rectangular mesh. LogPolar meshes use (log|z|, arg z) and
/// are periodic in the angle; the chart is conformal, so dilatations measured
/// in it equal those of the underlying map.
enum class Chart { Cartesian, LogPolar };

/// A map sampled on the nodes of a rectangular mesh in chart coordinates.
/// Node (i, j) is stored at i * ny + j; i runs along x (Re z or log|z|).
class GridMap {
 public:
  static GridMap cartesian(double x0, double x1, std::size_t nx, double y0, double y1, std::size_t ny);
  /// Annulus inner <= |z| <= outer; both boundary circles are node rows.
  static GridMap log_polar(double inner, double outer, std::size_t nr, std::size_t nt, double angle0 = 0.0);

  Chart chart() const noexcept { return chart_; }
  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double x0() const noexcept { return x0_; }
  double x1() const noexcept { return x1_; }
  double y0() const noexcept { return y0_; }
  double dx() const noexcept;
  double dy() const noexcept;
  bool periodic() const noexcept { return chart_ == Chart::LogPolar; }

  /// Mesh node in the z-plane.
  cplx point(std::size_t i, std::size_t j) const noexcept;
  cplx value(std::size_t i, std::size_t j) const noexcept { return values_[i * ny_ + j]; }
  cplx& value(std::size_t i, std::size_t j) noexcept { return values_[i * ny_ + j]; }
  const std::vector<cplx>& values() const noexcept { return values_; }

  /// values(i, j) = map(point(i, j)), rows in parallel.
  template <typename Map>
  void fill(Map&& map) {
    parallel_for(nx_, [&](std::size_t i) {
      for (std::size_t j = 0; j < ny_; ++j) values_[i * ny_ + j] = map(point(i, j));
    });
  }

  /// True when z lies in the sampled region (up to a relative slack).
  bool contains(cplx z) const noexcept;

  /// Four-point Lagrange interpolation in each chart direction. LogPolar
  /// meshes interpolate the ratio value/z, which is smooth and O(1).
  cplx interpolate(cplx z) const;

 private:
  GridMap(Chart chart, double x0, double x1, std::size_t nx, double y0, double y1, std::size_t ny);

  Chart chart_;
  double x0_, x1_;
  std::size_t nx_;
  double y0_, y1_;
  std::size_t ny_;
  std::vector<cplx> values_;
};

/// Per-node Beltrami coefficient of a grid map.
struct BeltramiEstimate {
  enum class Node : unsigned char { Boundary, Ok, Degenerate };

  std::size_t nx = 0, ny = 0;
  std::vector<cplx> mu;     // in z-plane coordinates; zero where not Ok
  std::vector<Node> status;
  double k_sup = 0.0;
  double K = 1.0;
  std::size_t evaluated = 0;
  std::size_t degenerate = 0;

  bool valid() const noexcept { return k_sup < 1.0; }
};

/// Wirtinger derivatives by fourth-order central differences,
/// mu = f_zbar / f_z on every node with a full stencil. Nodes with
/// |f_z| < 1e-12 are flagged Degenerate and left out of k_sup.
/// Requires at least 64 x 64 nodes.
BeltramiEstimate estimate_dilatation(const GridMap& map);

struct OrientationReport {
  std::size_t cells = 0;
  std::size_t folded = 0;          // image quads with non-positive signed area
  double min_area_ratio = 0.0;     // image area / cell area, minimum over cells
};

/// Signed-area test of every mesh cell image.
OrientationReport check_orientation(const GridMap& map);

/// Discrete winding number of a closed sampled curve around `center`.
long winding_number(const std::vector<cplx>& curve, cplx center = 0.0);

/// CSV rows x,y,re,im,mu_re,mu_im (mu columns are nan off the stencil).
void write_csv(std::ostream& out, const GridMap& map, const BeltramiEstimate* beltrami);

}  // namespace holomotion
