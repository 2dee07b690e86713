#include "holomotion/grid_map.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "holomotion/errors.hpp"

namespace holomotion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::array<double, 4> lagrange_weights(double t) {
  // Nodes at -1, 0, 1, 2.
  return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
          -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

cplx d4(cplx m2, cplx m1, cplx p1, cplx p2, double h) { return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h); }

}  // namespace

GridMap::GridMap(Chart chart, double x0, double x1, std::size_t nx, double y0, double y1, std::size_t ny)
    : chart_(chart), x0_(x0), x1_(x1), nx_(nx), y0_(y0), y1_(y1), ny_(ny), values_(nx * ny) {}

GridMap GridMap::cartesian(double x0, double x1, std::size_t nx, double y0, double y1, std::size_t ny) {
  require(nx >= 2 && ny >= 2 && x1 > x0 && y1 > y0, "cartesian mesh needs a non-degenerate rectangle");
  return GridMap(Chart::Cartesian, x0, x1, nx, y0, y1, ny);
}

GridMap GridMap::log_polar(double inner, double outer, std::size_t nr, std::size_t nt, double angle0) {
  require(inner > 0.0 && outer > inner, "annulus needs 0 < inner < outer");
  require(nr >= 2 && nt >= 4, "annulus mesh too small");
  return GridMap(Chart::LogPolar, std::log(inner), std::log(outer), nr, angle0, angle0 + kTwoPi, nt);
}

double GridMap::dx() const noexcept { return (x1_ - x0_) / static_cast<double>(nx_ - 1); }

double GridMap::dy() const noexcept {
  return periodic() ? (y1_ - y0_) / static_cast<double>(ny_) : (y1_ - y0_) / static_cast<double>(ny_ - 1);
}

cplx GridMap::point(std::size_t i, std::size_t j) const noexcept {
  const double x = i + 1 == nx_ ? x1_ : x0_ + static_cast<double>(i) * dx();
  const double y = y0_ + static_cast<double>(j) * dy();
  if (chart_ == Chart::Cartesian) return {x, y};
  return std::polar(std::exp(x), y);
}

bool GridMap::contains(cplx z) const noexcept {
  const double slack = 1e-12 * (1.0 + std::abs(x1_ - x0_));
  if (chart_ == Chart::Cartesian)
    return z.real() >= x0_ - slack && z.real() <= x1_ + slack && z.imag() >= y0_ - slack && z.imag() <= y1_ + slack;
  if (z == cplx{}) return false;
  const double s = std::log(std::abs(z));
  return s >= x0_ - slack && s <= x1_ + slack;
}

cplx GridMap::interpolate(cplx z) const {
  require(contains(z), "interpolation point outside the mesh");
  double u, v;
  if (chart_ == Chart::Cartesian) {
    u = (z.real() - x0_) / dx();
    v = (z.imag() - y0_) / dy();
  } else {
    u = (std::log(std::abs(z)) - x0_) / dx();
    v = std::fmod(std::arg(z) - y0_, kTwoPi);
    if (v < 0.0) v += kTwoPi;
    v /= dy();
  }
  const auto stencil = [](double t, std::size_t n, bool wrap) {
    long base = static_cast<long>(std::floor(t)) - 1;
    if (!wrap) base = std::clamp<long>(base, 0, static_cast<long>(n) - 4);
    return std::pair{base, t - static_cast<double>(base + 1)};
  };
  const auto [bi, ti] = stencil(u, nx_, false);
  const auto [bj, tj] = stencil(v, ny_, periodic());
  const auto wi = lagrange_weights(ti);
  const auto wj = lagrange_weights(tj);
  cplx acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    const auto i = static_cast<std::size_t>(bi + a);
    for (int b = 0; b < 4; ++b) {
      long jj = bj + b;
      if (periodic()) jj = ((jj % static_cast<long>(ny_)) + static_cast<long>(ny_)) % static_cast<long>(ny_);
      const auto j = static_cast<std::size_t>(jj);
      const cplx sample = chart_ == Chart::LogPolar ? value(i, j) / point(i, j) : value(i, j);
      acc += wi[static_cast<std::size_t>(a)] * wj[static_cast<std::size_t>(b)] * sample;
    }
  }
  return chart_ == Chart::LogPolar ? acc * z : acc;
}

BeltramiEstimate estimate_dilatation(const GridMap& map) {
  if (map.nx() < 64 || map.ny() < 64)
    fail(ErrorKind::InsufficientSampling, "dilatation estimates need at least 64 x 64 nodes");
  const std::size_t nx = map.nx(), ny = map.ny();
  BeltramiEstimate est;
  est.nx = nx;
  est.ny = ny;
  est.mu.assign(nx * ny, 0.0);
  est.status.assign(nx * ny, BeltramiEstimate::Node::Boundary);
  const bool log_chart = map.chart() == Chart::LogPolar;
  const double hx = map.dx(), hy = map.dy();

  // In the log chart F = z q with q smooth; then F_z = q + q_w and
  // F_zbar = (z / zbar) q_wbar in the w = log z coordinate.
  const auto sample = [&](long i, long j) {
    if (map.periodic()) j = ((j % static_cast<long>(ny)) + static_cast<long>(ny)) % static_cast<long>(ny);
    const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
    return log_chart ? map.value(ii, jj) / map.point(ii, jj) : map.value(ii, jj);
  };
  const std::size_t j_lo = map.periodic() ? 0 : 2;
  const std::size_t j_hi = map.periodic() ? ny : ny - 2;
  parallel_for(nx, [&](std::size_t i) {
    if (i < 2 || i + 2 >= nx) return;
    const long li = static_cast<long>(i);
    for (std::size_t j = j_lo; j < j_hi; ++j) {
      const long lj = static_cast<long>(j);
      const cplx fx = d4(sample(li - 2, lj), sample(li - 1, lj), sample(li + 1, lj), sample(li + 2, lj), hx);
      const cplx fy = d4(sample(li, lj - 2), sample(li, lj - 1), sample(li, lj + 1), sample(li, lj + 2), hy);
      const cplx dz = 0.5 * (fx - cplx(0, 1) * fy);
      const cplx dzbar = 0.5 * (fx + cplx(0, 1) * fy);
      cplx fz = dz, fzbar = dzbar;
      if (log_chart) {
        const cplx z = map.point(i, j);
        fz = sample(li, lj) + dz;
        fzbar = dzbar * (z / std::conj(z));
      }
      const std::size_t idx = i * ny + j;
      if (std::abs(fz) < 1e-12) {
        est.status[idx] = BeltramiEstimate::Node::Degenerate;
        continue;
      }
      est.mu[idx] = fzbar / fz;
      est.status[idx] = BeltramiEstimate::Node::Ok;
    }
  });
  for (std::size_t idx = 0; idx < nx * ny; ++idx) {
    if (est.status[idx] == BeltramiEstimate::Node::Ok) {
      ++est.evaluated;
      est.k_sup = std::max(est.k_sup, std::abs(est.mu[idx]));
    } else if (est.status[idx] == BeltramiEstimate::Node::Degenerate) {
      ++est.degenerate;
    }
  }
  est.K = est.k_sup < 1.0 ? (1.0 + est.k_sup) / (1.0 - est.k_sup) : std::numeric_limits<double>::infinity();
  return est;
}

OrientationReport check_orientation(const GridMap& map) {
  const std::size_t nx = map.nx(), ny = map.ny();
  const std::size_t cols = map.periodic() ? ny : ny - 1;
  std::vector<double> row_min(nx - 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> row_folds(nx - 1, 0);
  const auto signed_area = [](const std::array<cplx, 4>& q) {
    double a = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const cplx p = q[k], r = q[(k + 1) % 4];
      a += p.real() * r.imag() - r.real() * p.imag();
    }
    return 0.5 * a;
  };
  parallel_for(nx - 1, [&](std::size_t i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t j1 = (j + 1) % ny;
      const std::array<cplx, 4> domain{map.point(i, j), map.point(i + 1, j), map.point(i + 1, j1), map.point(i, j1)};
      const std::array<cplx, 4> image{map.value(i, j), map.value(i + 1, j), map.value(i + 1, j1), map.value(i, j1)};
      const double ratio = signed_area(image) / signed_area(domain);
      row_min[i] = std::min(row_min[i], ratio);
      if (!(ratio > 0.0)) ++row_folds[i];
    }
  });
  OrientationReport report;
  report.cells = (nx - 1) * cols;
  report.min_area_ratio = *std::min_element(row_min.begin(), row_min.end());
  for (auto c : row_folds) report.folded += c;
  return report;
}

long winding_number(const std::vector<cplx>& curve, cplx center) {
  double total = 0.0;
  for (std::size_t k = 0; k < curve.size(); ++k)
    total += std::arg((curve[(k + 1) % curve.size()] - center) / (curve[k] - center));
  return std::lround(total / kTwoPi);
}

void write_csv(std::ostream& out, const GridMap& map, const BeltramiEstimate* beltrami) {
  out << "x,y,re,im,mu_re,mu_im\n";
  for (std::size_t i = 0; i < map.nx(); ++i) {
    for (std::size_t j = 0; j < map.ny(); ++j) {
      const cplx z = map.point(i, j);
      const cplx v = map.value(i, j);
      const std::size_t idx = i * map.ny() + j;
      if (beltrami && beltrami->status[idx] == BeltramiEstimate::Node::Ok) {
        const cplx m = beltrami->mu[idx];
        fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", z.real(), z.imag(), v.real(), v.imag(),
                   m.real(), m.imag());
      } else {
        fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},nan,nan\n", z.real(), z.imag(), v.real(), v.imag());
      }
    }
  }
}

}  // namespace holomotion
