#include "holomotion/motions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "fourier.hpp"
#include "holomotion/errors.hpp"
#include "holomotion/parallel.hpp"

namespace holomotion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string describe(cplx z) { return fmt::format("({:.17g}, {:.17g})", z.real(), z.imag()); }

// Continuous branch of log(values[k] / points[k]) along a closed ring.
std::vector<cplx> log_displacement(double radius, const std::vector<cplx>& values) {
  const std::size_t n = values.size();
  const auto points = circle_points(radius, n);
  std::vector<cplx> out(n);
  std::vector<cplx> ratio(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] == cplx{}) fail(ErrorKind::NotInjectiveOnMesh, "boundary value hits the origin");
    ratio[k] = values[k] / points[k];
  }
  out[0] = std::log(ratio[0]);
  double turn = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double step = std::arg(ratio[k] / ratio[k - 1]);
    turn += step;
    out[k] = cplx(std::log(std::abs(ratio[k])), out[0].imag() + turn);
  }
  turn += std::arg(ratio[0] / ratio[n - 1]);
  if (std::abs(turn) > std::numbers::pi)
    fail(ErrorKind::NotInjectiveOnMesh, "boundary image does not wind once around the origin");
  return out;
}

// Fourier modes of a periodic sample, indexed by signed frequency; an even
// count splits the Nyquist term between +N/2 and -N/2.
std::map<int, cplx> fourier_modes(const std::vector<cplx>& samples) {
  const std::size_t n = samples.size();
  const auto spectrum = detail::dft(samples);
  std::map<int, cplx> modes;
  for (std::size_t m = 0; m < n; ++m) {
    const cplx acc = spectrum[m] / static_cast<double>(n);
    const int mi = static_cast<int>(m);
    const int ni = static_cast<int>(n);
    if (n % 2 == 0 && 2 * m == n) {
      modes[mi] += 0.5 * acc;
      modes[mi - ni] += 0.5 * acc;
    } else if (2 * m < n) {
      modes[mi] += acc;
    } else {
      modes[mi - ni] += acc;
    }
  }
  return modes;
}

// pin_identity: the row c = 0 is E itself, as ψ(0) = 1 holds only up to rounding.
template <typename H>
MotionSample tabulate(std::vector<cplx> base_points, std::vector<Ring> rings, ParamGrid grid, H&& h,
                      bool pin_identity) {
  require(!base_points.empty(), "a motion needs base points");
  MotionSample sample;
  sample.base_points = std::move(base_points);
  sample.rings = std::move(rings);
  sample.grid = std::move(grid);
  const auto params = sample.grid.points();
  const std::size_t e = sample.base_points.size();
  sample.values.resize(params.size() * e);
  parallel_for(params.size(), [&](std::size_t ci) {
    for (std::size_t zi = 0; zi < e; ++zi)
      sample.values[ci * e + zi] =
          ci == 0 && pin_identity ? sample.base_points[zi] : h(params[ci], zi, sample.base_points[zi]);
  });
  return sample;
}

}  // namespace

ParamGrid ParamGrid::circles(double disk_radius, std::vector<double> radii, std::size_t samples) {
  require(disk_radius > 0.0, "parameter disk radius must be positive");
  require(samples >= 1, "parameter circles need samples");
  for (double rho : radii) require(rho > 0.0 && rho <= disk_radius, "parameter circle outside the disk");
  return ParamGrid{disk_radius, std::move(radii), samples};
}

std::vector<cplx> ParamGrid::points() const {
  std::vector<cplx> out;
  out.reserve(size());
  out.push_back(0.0);
  for (double rho : circle_radii) {
    const auto ring = circle_points(rho, samples);
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

std::optional<std::size_t> ParamGrid::index_of(cplx c) const {
  const auto pts = points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::abs(pts[i] - c) <= 1e-14 * std::max(1.0, std::abs(c))) return i;
  return std::nullopt;
}

std::vector<cplx> circle_points(double radius, std::size_t count) {
  std::vector<cplx> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = std::polar(radius, kTwoPi * static_cast<double>(k) / static_cast<double>(count));
  return out;
}

MotionSample sample_motion(std::vector<cplx> base_points, std::vector<Ring> rings, ParamGrid grid,
                           const std::function<cplx(cplx c, cplx z)>& h) {
  return tabulate(std::move(base_points), std::move(rings), std::move(grid),
                  [&](cplx c, std::size_t, cplx z) { return h(c, z); }, false);
}

MotionReport verify_motion(const MotionSample& sample, double holomorphy_tolerance) {
  const auto& grid = sample.grid;
  if (grid.circle_radii.empty() || grid.samples < 64)
    fail(ErrorKind::InsufficientSampling,
         fmt::format("holomorphy test needs a parameter circle with at least 64 samples (have {} circles of {})",
                     grid.circle_radii.size(), grid.samples));
  const std::size_t e = sample.base_points.size();
  const std::size_t nc = grid.size();
  require(sample.values.size() == nc * e, "motion table does not match its grid");

  MotionReport report;
  report.holomorphy_tolerance = holomorphy_tolerance;
  for (std::size_t zi = 0; zi < e; ++zi)
    report.identity_defect = std::max(report.identity_defect, std::abs(sample.value(0, zi) - sample.base_points[zi]));

  std::vector<double> separation(nc, std::numeric_limits<double>::infinity());
  parallel_for(nc, [&](std::size_t ci) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < e; ++a)
      for (std::size_t b = a + 1; b < e; ++b) best = std::min(best, std::abs(sample.value(ci, a) - sample.value(ci, b)));
    separation[ci] = best;
  });
  report.min_separation = *std::min_element(separation.begin(), separation.end());

  const std::size_t n = grid.samples;
  std::vector<double> defect(e, 0.0);
  parallel_for(e, [&](std::size_t zi) {
    double worst = 0.0;
    std::vector<cplx> values(n);
    for (std::size_t circle = 0; circle < grid.circle_radii.size(); ++circle) {
      for (std::size_t s = 0; s < n; ++s) values[s] = sample.value(1 + circle * n + s, zi);
      if (std::all_of(values.begin(), values.end(), [&](cplx v) { return v == values[0]; })) continue;
      double negative = 0.0, moving = 0.0, total = 0.0;
      const auto spectrum = detail::dft(values);
      for (std::size_t m = 0; m < n; ++m) {
        const double energy = std::norm(spectrum[m]);
        total += energy;
        if (m == 0) continue;
        moving += energy;
        if (2 * m > n) negative += energy;
      }
      const double scale = std::max(moving, 1e-20 * total);
      if (scale > 0.0) worst = std::max(worst, negative / scale);
    }
    defect[zi] = worst;
  });
  for (std::size_t zi = 0; zi < e; ++zi) {
    if (defect[zi] > report.holomorphy_defect) {
      report.holomorphy_defect = defect[zi];
      report.worst_point = zi;
    }
  }
  return report;
}

MotionSample build_koenig_motion(const AnalyticGerm& germ, double r, double delta, const ParamGrid& grid,
                                 std::size_t points_per_circle) {
  require(germ.kind == FixedPointClass::Attracting, "König motion needs an attracting germ");
  require(r > 0.0 && r <= delta, "König motion needs 0 < r <= delta");
  require(points_per_circle >= 128, "König motion needs at least 128 points per circle");
  require(grid.radius <= 1.0 + 1e-12, "König motion parameters live in the unit disk");
  const cplx lambda = germ.multiplier;
  const double inner = std::abs(lambda) * r;
  const PowerSeries psi = shift_down(germ.series.argument_scaled(1.0 / lambda), 1);

  auto points = circle_points(r, points_per_circle);
  const auto t_ring = circle_points(inner, points_per_circle);
  points.insert(points.end(), t_ring.begin(), t_ring.end());
  std::vector<Ring> rings{{r, 0, points_per_circle}, {inner, points_per_circle, points_per_circle}};
  const std::size_t split = points_per_circle;
  const std::vector<cplx> base = points;

  auto sample = tabulate(points, rings, grid, [&, split](cplx c, std::size_t zi, cplx z) {
    if (zi < split) return z;
    return z * evaluate(psi, delta * c * z / r);
  }, true);

  const auto params = grid.points();
  double worst = 0.0;
  std::size_t worst_c = 0, worst_z = split;
  for (std::size_t ci = 0; ci < params.size(); ++ci)
    for (std::size_t zi = split; zi < base.size(); ++zi)
      if (std::abs(sample.value(ci, zi)) > worst) {
        worst = std::abs(sample.value(ci, zi));
        worst_c = ci;
        worst_z = zi;
      }
  sample.crossing_margin = r - worst;
  if (!(worst < r))
    fail(ErrorKind::NonCrossingViolated,
         fmt::format("|h(c, z)| = {:.17g} >= r = {:.17g} at c = {}, z = {}", worst, r, describe(params[worst_c]),
                     describe(base[worst_z])));
  return sample;
}

MotionSample build_boettcher_motion(const AnalyticGerm& germ, double r, double delta, const ParamGrid& grid,
                                    std::size_t points_per_circle) {
  require(germ.kind == FixedPointClass::Superattracting, "Böttcher motion needs a superattracting germ");
  require(germ.leading_coefficient() == cplx(1.0), "Böttcher motion needs leading coefficient 1");
  require(points_per_circle >= 128, "Böttcher motion needs at least 128 points per circle");
  const auto n = static_cast<double>(germ.leading_degree);
  const double bound = std::min(std::pow(0.5, n / (n - 1.0)), std::pow(delta, n));
  require(r > 0.0 && r <= bound * (1.0 + 1e-12),
          fmt::format("Böttcher motion needs 0 < r <= {:.17g}", bound));
  const double root_delta = std::pow(delta, 1.0 / n);
  require(grid.radius <= root_delta * (1.0 + 1e-12),
          fmt::format("Böttcher motion parameters must lie in |c| <= {:.17g}", root_delta));
  const double outer = std::pow(r, 1.0 / n);
  const CoveringLift lift(germ);

  auto points = circle_points(r, points_per_circle);
  const auto t_ring = circle_points(outer, points_per_circle);
  points.insert(points.end(), t_ring.begin(), t_ring.end());
  std::vector<Ring> rings{{r, 0, points_per_circle}, {outer, points_per_circle, points_per_circle}};
  const std::size_t split = points_per_circle;
  const std::vector<cplx> base = points;

  auto sample = tabulate(points, rings, grid, [&, split](cplx c, std::size_t zi, cplx z) {
    if (zi < split) return z;
    return z * lift.unit_factor(c * z / outer);
  }, true);

  const auto params = grid.points();
  double least = std::numeric_limits<double>::infinity();
  std::size_t worst_c = 0, worst_z = split;
  for (std::size_t ci = 0; ci < params.size(); ++ci)
    for (std::size_t zi = split; zi < base.size(); ++zi)
      if (std::abs(sample.value(ci, zi)) < least) {
        least = std::abs(sample.value(ci, zi));
        worst_c = ci;
        worst_z = zi;
      }
  sample.crossing_margin = least - r;
  sample.lower_bound_margin = least - outer / 2.0;
  if (!(least > r))
    fail(ErrorKind::NonCrossingViolated,
         fmt::format("|h(c, z)| = {:.17g} <= r = {:.17g} at c = {}, z = {}", least, r, describe(params[worst_c]),
                     describe(base[worst_z])));
  return sample;
}

AnnulusExtension::AnnulusExtension(double inner_radius, std::vector<cplx> inner_values, double outer_radius,
                                   std::vector<cplx> outer_values, ExtensionProfile profile)
    : inner_(inner_radius), outer_(outer_radius), width_(0.0), profile_(profile) {
  require(inner_radius > 0.0 && outer_radius > inner_radius, "extension needs 0 < inner < outer");
  require(inner_values.size() >= 4 && outer_values.size() >= 4, "extension needs at least 4 boundary values");
  width_ = std::log(outer_ / inner_);
  const auto a = fourier_modes(log_displacement(inner_, inner_values));
  const auto b = fourier_modes(log_displacement(outer_, outer_values));
  std::map<int, Mode> merged;
  for (const auto& [m, v] : a) merged[m] = Mode{m, v, 0.0};
  for (const auto& [m, v] : b) {
    auto& slot = merged[m];
    slot.m = m;
    slot.outer = v;
  }
  double largest = 0.0;
  for (const auto& [m, mode] : merged) largest = std::max({largest, std::abs(mode.inner), std::abs(mode.outer)});
  for (const auto& [m, mode] : merged)
    if (m == 0 || std::abs(mode.inner) + std::abs(mode.outer) > 1e-18 * largest) modes_.push_back(mode);
}

cplx AnnulusExtension::operator()(cplx z) const { return evaluate_polar(std::log(std::abs(z)), std::arg(z)); }

cplx AnnulusExtension::evaluate_polar(double log_radius, double angle) const {
  const double s = log_radius - std::log(inner_);
  const double l = width_;
  cplx d = 0.0;
  for (const auto& mode : modes_) {
    double p, q;
    if (profile_ == ExtensionProfile::Linear || mode.m == 0) {
      q = s / l;
      p = 1.0 - q;
    } else if (mode.m > 0) {
      const double m = mode.m;
      p = std::expm1(m * (s - l)) / std::expm1(-m * l);
      q = (std::exp(m * (s - l)) - std::exp(-m * l)) / -std::expm1(-m * l);
    } else {
      const double m = -mode.m;
      p = (std::exp(-m * s) - std::exp(-m * l)) / -std::expm1(-m * l);
      q = std::expm1(-m * s) / std::expm1(-m * l);
    }
    d += (p * mode.inner + q * mode.outer) * std::polar(1.0, mode.m * angle);
  }
  return std::polar(std::exp(log_radius), angle) * std::exp(d);
}

ExtendedMotion extend_motion(const MotionSample& sample, cplx c, std::size_t nr, std::size_t nt,
                             ExtensionProfile profile) {
  require(sample.rings.size() == 2, "extension needs exactly two boundary circles");
  const auto ci = sample.grid.index_of(c);
  require(ci.has_value(), fmt::format("parameter {} is not in the grid", describe(c)));
  Ring inner = sample.rings[0], outer = sample.rings[1];
  if (inner.radius > outer.radius) std::swap(inner, outer);
  require(outer.radius > inner.radius * (1.0 + 1e-12), "extension needs circles of different radii");
  const auto ring_values = [&](const Ring& ring) {
    std::vector<cplx> v(ring.count);
    for (std::size_t k = 0; k < ring.count; ++k) v[k] = sample.value(*ci, ring.offset + k);
    return v;
  };
  AnnulusExtension map(inner.radius, ring_values(inner), outer.radius, ring_values(outer), profile);

  auto grid = GridMap::log_polar(inner.radius, outer.radius, nr, nt);
  grid.fill([&](cplx z) { return map(z); });
  const auto orientation = check_orientation(grid);
  if (orientation.folded > 0)
    fail(ErrorKind::NotInjectiveOnMesh,
         fmt::format("{} of {} mesh cells fold (min area ratio {:.3g})", orientation.folded, orientation.cells,
                     orientation.min_area_ratio));

  double boundary_error = 0.0;
  for (const Ring& ring : {inner, outer})
    for (std::size_t k = 0; k < ring.count; ++k) {
      const std::size_t zi = ring.offset + k;
      boundary_error = std::max(boundary_error, std::abs(map(sample.base_points[zi]) - sample.value(*ci, zi)));
    }
  return ExtendedMotion{std::move(map), std::move(grid), orientation, boundary_error};
}

}  // namespace holomotion
