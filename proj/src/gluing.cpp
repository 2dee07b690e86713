#include "holomotion/gluing.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "holomotion/errors.hpp"
#include "holomotion/parallel.hpp"

namespace holomotion {

namespace {

constexpr double kContinuityTolerance = 1e-9;

bool close_radius(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); }

// Largest mismatch between the inner row of each piece and the outer row of
// the next one.
double shared_circle_mismatch(const std::vector<GluedPiece>& pieces) {
  double worst = 0.0;
  for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
    const GridMap& a = pieces[p].grid;
    const GridMap& b = pieces[p + 1].grid;
    for (std::size_t t = 0; t < a.ny(); ++t)
      worst = std::max(worst, std::abs(a.value(0, t) - b.value(b.nx() - 1, t)));
  }
  return worst;
}

// sup over cell midpoints of piece p of |f(φ(z)) - φ(model(z))|, where the
// model image lies in piece `next`.
double midpoint_residual(const PowerSeries& f, const GridMap& piece, const GridMap& next,
                         const std::function<cplx(cplx)>& model) {
  std::vector<double> rows(piece.nx() - 1, 0.0);
  parallel_for(piece.nx() - 1, [&](std::size_t i) {
    const double x = piece.x0() + (static_cast<double>(i) + 0.5) * piece.dx();
    double worst = 0.0;
    for (std::size_t t = 0; t < piece.ny(); ++t) {
      const double y = piece.y0() + (static_cast<double>(t) + 0.5) * piece.dy();
      const cplx z = std::polar(std::exp(x), y);
      worst = std::max(worst, std::abs(evaluate(f, piece.interpolate(z)) - next.interpolate(model(z))));
    }
    rows[i] = worst;
  });
  return *std::max_element(rows.begin(), rows.end());
}

void finish(GluedMap& glued) {
  for (auto& piece : glued.pieces) {
    piece.beltrami = estimate_dilatation(piece.grid);
    glued.k_sup = std::max(glued.k_sup, piece.beltrami.k_sup);
    glued.degenerate += piece.beltrami.degenerate;
  }
  glued.K = glued.k_sup < 1.0 ? (1.0 + glued.k_sup) / (1.0 - glued.k_sup) : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<double> AnnulusDecomposition::radii() const {
  std::vector<double> out;
  for (const auto& a : annuli) {
    if (out.empty()) out.push_back(a.outer);
    out.push_back(a.inner);
  }
  return out;
}

AnnulusDecomposition decompose(GlueKind kind, const AnalyticGerm& germ, std::size_t k, double delta,
                               double inner_cutoff) {
  require(k >= 1, "decomposition needs k >= 1");
  require(delta > 0.0, "decomposition needs delta > 0");
  AnnulusDecomposition d;
  d.kind = kind;
  d.delta = delta;
  d.k = k;
  if (kind == GlueKind::Koenig) {
    require(germ.kind == FixedPointClass::Attracting, "König decomposition needs an attracting germ");
    require(inner_cutoff > 0.0 && inner_cutoff < delta, "König decomposition needs 0 < cutoff < delta");
    d.lambda = germ.multiplier;
    const double mod = std::abs(d.lambda);
    const auto radius = [&](long j) { return delta * std::pow(mod, static_cast<double>(j + static_cast<long>(k))); };
    d.r = radius(0);
    if (d.r < DBL_EPSILON * delta)
      fail(ErrorKind::RadiusUnderflow, fmt::format("r_k = {:.3g} is below double resolution; use a smaller k", d.r));
    for (long j = -static_cast<long>(k); radius(j) >= inner_cutoff * (1.0 - 1e-12); ++j)
      d.annuli.push_back(Annulus{static_cast<int>(j), radius(j + 1), radius(j)});
  } else {
    require(germ.kind == FixedPointClass::Superattracting, "Böttcher decomposition needs a superattracting germ");
    d.degree = germ.leading_degree;
    const auto n = static_cast<double>(d.degree);
    const auto radius = [&](std::size_t j) { return std::pow(delta, std::pow(n, static_cast<double>(k - j))); };
    d.r = radius(0);
    if (!(d.r >= DBL_EPSILON * delta))
      fail(ErrorKind::RadiusUnderflow,
           fmt::format("r_k = delta^(n^k) = {:.3g} is below double resolution; use a smaller k", d.r));
    for (std::size_t j = k; j-- > 0;) d.annuli.push_back(Annulus{static_cast<int>(j), radius(j), radius(j + 1)});
  }
  require(!d.annuli.empty() && close_radius(d.annuli.front().outer, delta), "decomposition does not reach delta");
  for (std::size_t p = 0; p + 1 < d.annuli.size(); ++p)
    require(d.annuli[p].inner == d.annuli[p + 1].outer && d.annuli[p].inner < d.annuli[p].outer,
            "decomposition annuli do not tile");
  return d;
}

cplx GluedMap::operator()(cplx z) const {
  if (z == cplx{}) return 0.0;
  const double m = std::abs(z);
  if (decomposition.kind == GlueKind::Boettcher && m < decomposition.annuli.back().inner) return z;
  for (const auto& piece : pieces)
    if (piece.grid.contains(z)) return piece.grid.interpolate(z);
  fail(ErrorKind::PreconditionViolated, fmt::format("|z| = {:.17g} is outside the glued pieces", m));
}

ExtendedMotion koenig_fundamental(const AnalyticGerm& germ, const AnnulusDecomposition& decomposition,
                                  const GlueOptions& options) {
  require(decomposition.kind == GlueKind::Koenig, "König fundamental piece needs a König decomposition");
  require(germ.kind == FixedPointClass::Attracting, "König fundamental piece needs an attracting germ");
  const double r = decomposition.r;
  const double c = r / decomposition.delta;
  const auto grid = ParamGrid::circles(1.0, {c}, 64);
  const auto motion = build_koenig_motion(germ, r, decomposition.delta, grid, options.boundary_points);
  return extend_motion(motion, c, options.mesh, options.mesh, options.profile);
}

GluedMap koenig_glue(const AnalyticGerm& germ, const AnnulusDecomposition& decomposition, const GlueOptions& options) {
  const auto fundamental = koenig_fundamental(germ, decomposition, options);
  const PowerSeries& f = germ.series;
  const cplx lambda = germ.multiplier;
  const PowerSeries inverse = reverse(f.truncated(std::max(f.order(), kDefaultOrder)));
  const double reach = domain_radius(germ);

  GluedMap glued;
  glued.decomposition = decomposition;
  for (const auto& annulus : decomposition.annuli) {
    auto grid = GridMap::log_polar(annulus.inner, annulus.outer, options.mesh, options.mesh);
    const int j = annulus.index;
    const cplx shift = std::pow(lambda, -j);
    grid.fill([&](cplx z) {
      cplx v = fundamental.map(z * shift);
      for (int s = 0; s < j; ++s) v = evaluate(f, v);
      for (int s = 0; s > j; --s) {
        v = newton_preimage(f, v, evaluate(inverse, v));
        if (std::abs(v) > reach)
          fail(ErrorKind::EscapedDomain,
               fmt::format("inverse iterate |{:.6g}| left the disk of radius {:.6g}; use a smaller delta",
                           std::abs(v), reach));
      }
      return v;
    });
    glued.pieces.push_back(GluedPiece{annulus, std::move(grid), {}});
  }

  glued.continuity = shared_circle_mismatch(glued.pieces);
  if (glued.continuity > kContinuityTolerance)
    fail(ErrorKind::BoundaryMismatch, fmt::format("pieces disagree by {:.3g} on a shared circle", glued.continuity));
  for (std::size_t p = 0; p + 1 < glued.pieces.size(); ++p)
    glued.residual = std::max(glued.residual, midpoint_residual(f, glued.pieces[p].grid, glued.pieces[p + 1].grid,
                                                                [&](cplx z) { return lambda * z; }));
  finish(glued);
  return glued;
}

LiftResult boettcher_lift(const AnalyticGerm& germ, const GridMap& lower, const Annulus& target) {
  require(germ.kind == FixedPointClass::Superattracting && germ.leading_coefficient() == cplx(1.0),
          "lift needs a superattracting germ with leading coefficient 1");
  require(lower.chart() == Chart::LogPolar, "lift needs a log-polar lower piece");
  const std::size_t n = germ.leading_degree;
  const auto nd = static_cast<double>(n);
  const double lower_inner = std::exp(lower.x0()), lower_outer = std::exp(lower.x1());
  require(close_radius(target.inner, lower_outer) && close_radius(std::pow(target.inner, nd), lower_inner) &&
              close_radius(std::pow(target.outer, nd), lower_outer),
          "target annulus is not the n-th root preimage of the lower piece");
  const std::size_t nr = lower.nx(), nt = lower.ny();
  LiftResult out{GridMap::log_polar(target.inner, target.outer, nr, nt), 0, 0.0};
  GridMap& grid = out.grid;
  const PowerSeries& f = germ.series;
  const double spread = 2.0 * std::sin(std::numbers::pi / nd);

  std::vector<double> seed(nt, 0.0);
  parallel_for(nt, [&](std::size_t t) {
    const std::size_t source = (n * t) % nt;
    cplx prev{}, prev2{};
    for (std::size_t i = 0; i < nr; ++i) {
      const cplx w = lower.value(i, source);
      cplx guess;
      if (i == 0)
        guess = lower.value(nr - 1, t);
      else if (i == 1)
        guess = prev * (grid.point(1, t) / grid.point(0, t));
      else
        guess = prev * (prev / prev2);
      const cplx zeta = newton_preimage(f, w, guess);
      if (std::abs(zeta - guess) > 0.25 * spread * std::abs(zeta))
        fail(ErrorKind::BranchAmbiguity,
             fmt::format("lift branch jumps by {:.3g} at |z| = {:.6g}; refine the mesh", std::abs(zeta - guess),
                         std::abs(grid.point(i, t))));
      if (i == 0) seed[t] = std::abs(zeta - guess);
      grid.value(i, t) = zeta;
      prev2 = prev;
      prev = zeta;
    }
  });
  out.seed_mismatch = *std::max_element(seed.begin(), seed.end());
  std::vector<cplx> image(nt);
  for (std::size_t t = 0; t < nt; ++t) image[t] = evaluate(f, grid.value(nr - 1, t));
  out.winding = winding_number(image);
  return out;
}

GluedMap boettcher_glue(const AnalyticGerm& germ, const AnnulusDecomposition& decomposition,
                        const GlueOptions& options) {
  require(decomposition.kind == GlueKind::Boettcher, "Böttcher gluing needs a Böttcher decomposition");
  require(germ.kind == FixedPointClass::Superattracting && germ.leading_coefficient() == cplx(1.0),
          "Böttcher gluing needs a superattracting germ with leading coefficient 1");
  const auto n = static_cast<double>(germ.leading_degree);
  const double r = decomposition.r;
  const double c = std::pow(r, 1.0 / n);
  const auto grid = ParamGrid::circles(std::pow(decomposition.delta, 1.0 / n), {c}, 64);
  const auto motion = build_boettcher_motion(germ, r, decomposition.delta, grid, options.boundary_points);
  auto fundamental = extend_motion(motion, c, options.mesh, options.mesh, options.profile);

  GluedMap glued;
  glued.decomposition = decomposition;
  const auto& annuli = decomposition.annuli;
  std::vector<GluedPiece> inside_out;
  inside_out.push_back(GluedPiece{annuli.back(), std::move(fundamental.grid), {}});
  for (std::size_t p = annuli.size() - 1; p-- > 0;) {
    auto lift = boettcher_lift(germ, inside_out.back().grid, annuli[p]);
    glued.windings.push_back(lift.winding);
    inside_out.push_back(GluedPiece{annuli[p], std::move(lift.grid), {}});
  }
  glued.pieces.assign(std::make_move_iterator(inside_out.rbegin()), std::make_move_iterator(inside_out.rend()));

  glued.continuity = shared_circle_mismatch(glued.pieces);
  const GridMap& core_edge = glued.pieces.back().grid;
  for (std::size_t t = 0; t < core_edge.ny(); ++t)
    glued.continuity = std::max(glued.continuity, std::abs(core_edge.value(0, t) - core_edge.point(0, t)));
  if (glued.continuity > kContinuityTolerance)
    fail(ErrorKind::BoundaryMismatch, fmt::format("pieces disagree by {:.3g} on a shared circle", glued.continuity));

  const std::size_t degree = germ.leading_degree;
  for (std::size_t p = 0; p + 1 < glued.pieces.size(); ++p)
    glued.residual =
        std::max(glued.residual, midpoint_residual(germ.series, glued.pieces[p].grid, glued.pieces[p + 1].grid,
                                                   [&](cplx z) { return std::pow(z, static_cast<int>(degree)); }));
  finish(glued);
  return glued;
}

bool ConvergenceReport::monotone() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.monotone; });
}

bool ConvergenceReport::within_bound() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.within_bound; });
}

ConvergenceReport convergence_report(const AnalyticGerm& germ, GlueKind kind, const std::vector<std::size_t>& k_list,
                                     const GlueOptions& options, std::optional<double> delta,
                                     std::size_t series_order, GluedMap* largest) {
  require(!k_list.empty(), "convergence report needs at least one k");
  ConvergenceReport report;
  report.kind = kind;
  std::optional<ConjugacyResult> series;
  if (kind == GlueKind::Koenig) {
    require(germ.kind == FixedPointClass::Attracting, "König gluing needs an attracting germ");
    report.delta = delta ? *delta : 0.5 * domain_radius(germ);
    series = koenig_series(germ, series_order);
  } else {
    require(germ.kind == FixedPointClass::Superattracting && germ.leading_coefficient() == cplx(1.0),
            "Böttcher gluing needs a superattracting germ with leading coefficient 1");
    report.delta = delta ? *delta : boettcher_radius(germ).delta;
    series = boettcher_series(germ, series_order);
  }
  const double cutoff = 8.0 * report.delta / static_cast<double>(options.mesh);

  std::optional<GluedMap> last;
  for (std::size_t k : k_list) {
    const auto d = decompose(kind, germ, k, report.delta, cutoff);
    GluedMap glued = kind == GlueKind::Koenig ? koenig_glue(germ, d, options) : boettcher_glue(germ, d, options);
    ConvergenceRow row;
    row.k = k;
    row.r = d.r;
    row.K = glued.K;
    row.k_sup = glued.k_sup;
    row.residual = glued.residual;
    row.continuity = glued.continuity;
    row.pieces = glued.pieces.size();
    row.within_bound = glued.K - 1.0 <= kConvergenceConstant * d.r;
    if (!report.rows.empty()) row.monotone = glued.K <= report.rows.back().K + 1e-3;
    report.rows.push_back(row);
    last = std::move(glued);
  }

  // φ_r ≈ φ(a z); a is the circle mean of φ_r(z)/z on the innermost ring.
  const GridMap& inner = last->pieces.back().grid;
  cplx a = 0.0;
  for (std::size_t t = 0; t < inner.ny(); ++t) a += inner.value(0, t) / inner.point(0, t);
  a /= static_cast<double>(inner.ny());
  const double probe = report.delta / 8.0;
  double worst = 0.0;
  for (const cplx z : circle_points(probe, 64)) worst = std::max(worst, std::abs((*last)(z) - evaluate(series->phi, a * z)));
  report.overlap_error = worst;
  if (largest) *largest = std::move(*last);
  return report;
}

void write_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "k,r_k,K,K_minus_1,bound,k_sup,residual,continuity,pieces,monotone,within_bound\n";
  for (const auto& row : report.rows)
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{},{}\n", row.k, row.r, row.K,
               row.K - 1.0, kConvergenceConstant * row.r, row.k_sup, row.residual, row.continuity, row.pieces,
               row.monotone ? 1 : 0, row.within_bound ? 1 : 0);
}

}  // namespace holomotion
