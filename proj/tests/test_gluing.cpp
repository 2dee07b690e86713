#include <doctest.h>

#include <sstream>

#include "holomotion/errors.hpp"
#include "holomotion/gluing.hpp"

using namespace holomotion;

namespace {

ErrorKind kind_of(auto&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::PreconditionViolated;
}

const AnalyticGerm& attracting() {
  static const auto g = classify(PowerSeries({0, 0.5, 1}));
  return g;
}

const AnalyticGerm& superattracting() {
  static const auto g = classify(PowerSeries({0, 0, 1, 1}));
  return g;
}

}  // namespace

TEST_CASE("König decomposition") {
  const auto lin = classify(PowerSeries({0, 0.5}));
  const auto d = decompose(GlueKind::Koenig, lin, 2, 0.2, 0.01);
  CHECK(d.r == doctest::Approx(0.05).epsilon(1e-15));
  const auto radii = d.radii();
  const std::vector<double> expected{0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625};
  REQUIRE(radii.size() == expected.size());
  for (std::size_t i = 0; i < radii.size(); ++i) CHECK(radii[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  CHECK(d.annuli.front().index == -2);
  CHECK(d.annuli[2].index == 0);
  CHECK(d.annuli[2].outer == doctest::Approx(d.r));
  for (std::size_t p = 0; p + 1 < d.annuli.size(); ++p) CHECK(d.annuli[p].inner == d.annuli[p + 1].outer);
}

TEST_CASE("Böttcher decomposition") {
  const auto d = decompose(GlueKind::Boettcher, superattracting(), 2, 0.25, 0.0);
  CHECK(d.r == 0.00390625);
  const auto radii = d.radii();
  REQUIRE(radii.size() == 3);
  CHECK(radii[0] == 0.25);
  CHECK(radii[1] == 0.0625);
  CHECK(radii[2] == 0.00390625);
  CHECK(d.annuli.back().index == 0);
  CHECK(d.degree == 2);
}

TEST_CASE("decomposition guards") {
  CHECK(kind_of([] { (void)decompose(GlueKind::Boettcher, superattracting(), 6, 0.25, 0.0); }) ==
        ErrorKind::RadiusUnderflow);
  CHECK(kind_of([] { (void)decompose(GlueKind::Koenig, attracting(), 60, 0.05, 1e-3); }) ==
        ErrorKind::RadiusUnderflow);
  CHECK(kind_of([] { (void)decompose(GlueKind::Koenig, superattracting(), 2, 0.05, 1e-3); }) ==
        ErrorKind::PreconditionViolated);
  CHECK(kind_of([] { (void)decompose(GlueKind::Boettcher, attracting(), 2, 0.05, 0.0); }) ==
        ErrorKind::PreconditionViolated);
  CHECK(kind_of([] { (void)decompose(GlueKind::Koenig, attracting(), 0, 0.05, 1e-3); }) ==
        ErrorKind::PreconditionViolated);
}

TEST_CASE("König fundamental piece restricts to the boundary formulas") {
  const auto& germ = attracting();
  const double delta = domain_radius(germ) / 2;
  const auto d = decompose(GlueKind::Koenig, germ, 1, delta, delta / 16);
  const auto fund = koenig_fundamental(germ, d);
  const auto& g = fund.grid;
  CHECK(fund.boundary_error <= 1e-12);
  for (std::size_t j = 0; j < g.ny(); j += 8) {
    const cplx outer = g.point(g.nx() - 1, j);
    const cplx inner = g.point(0, j);
    CHECK(std::abs(g.value(g.nx() - 1, j) - outer) <= 1e-12 * d.r);
    CHECK(std::abs(g.value(0, j) - evaluate(germ.series, inner / germ.multiplier)) <= 1e-12 * d.r);
  }
  const auto bd = decompose(GlueKind::Boettcher, superattracting(), 1, 0.25, 0.0);
  CHECK(kind_of([&] { (void)koenig_fundamental(germ, bd); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("gluing a linear germ gives the identity") {
  const auto lin = classify(PowerSeries({0, 0.5}));
  const auto d = decompose(GlueKind::Koenig, lin, 2, 0.2, 0.2 / 16);
  const auto glued = koenig_glue(lin, d, GlueOptions{64, 128});
  CHECK(glued.K == doctest::Approx(1.0));
  CHECK(glued.residual <= 1e-15);
  CHECK(glued(0.0) == cplx(0.0));
  CHECK(std::abs(glued(cplx(0.03, 0.04)) - cplx(0.03, 0.04)) <= 1e-15);
}

TEST_CASE("König glue of 0.5z + z^2") {
  const auto& germ = attracting();
  const double delta = domain_radius(germ) / 2;
  const auto d = decompose(GlueKind::Koenig, germ, 3, delta, 8 * delta / 128);
  const auto glued = koenig_glue(germ, d);
  CHECK(glued.residual <= 1e-7);
  CHECK(glued.continuity <= 1e-9);
  CHECK(glued.K <= (1 + d.r) / (1 - d.r) + 0.05);
  CHECK(glued(0.0) == cplx(0.0));
  // φ_r conjugates on interior points of the glued region.
  const cplx z(0.3 * delta, 0.2 * delta);
  CHECK(std::abs(evaluate(germ.series, glued(z)) - glued(0.5 * z)) <= 1e-7);
}

TEST_CASE("property: glue residual drops under mesh refinement") {
  const auto& germ = attracting();
  const double delta = domain_radius(germ) / 2;
  const auto d = decompose(GlueKind::Koenig, germ, 1, delta, delta / 2);
  const double coarse = koenig_glue(germ, d, GlueOptions{64, 128}).residual;
  const double fine = koenig_glue(germ, d, GlueOptions{128, 128}).residual;
  CHECK(fine * 3 <= coarse);
}

TEST_CASE("Böttcher glue of z^2 is the identity") {
  const auto square = classify(PowerSeries({0, 0, 1}));
  const auto d = decompose(GlueKind::Boettcher, square, 2, 0.25, 0.0);
  const auto glued = boettcher_glue(square, d, GlueOptions{64, 128});
  CHECK(glued.K == doctest::Approx(1.0));
  CHECK(glued.residual <= 1e-15);
  CHECK(std::abs(glued(cplx(0.1, 0.1)) - cplx(0.1, 0.1)) <= 1e-15);
  CHECK(glued(cplx(1e-4, 0)) == cplx(1e-4, 0));
}

TEST_CASE("Böttcher glue and lifts of z^2 + z^3") {
  const auto& germ = superattracting();
  const auto d = decompose(GlueKind::Boettcher, germ, 2, 0.25, 0.0);
  const auto glued = boettcher_glue(germ, d);
  CHECK(glued.residual <= 1e-6);
  CHECK(glued.continuity <= 1e-9);
  for (long w : glued.windings) CHECK(w == 2);

  const auto lift = boettcher_lift(germ, glued.pieces.back().grid, d.annuli.front());
  CHECK(lift.winding == 2);
  CHECK(lift.seed_mismatch <= 1e-10);
  const auto& g = lift.grid;
  double residual = 0.0;
  for (std::size_t i = 1; i + 1 < g.nx(); i += 7)
    for (std::size_t j = 0; j < g.ny(); j += 7) {
      const cplx z = g.point(i, j);
      residual = std::max(residual, std::abs(evaluate(germ.series, g.value(i, j)) - glued(z * z)));
    }
  CHECK(residual <= 1e-9);
}

TEST_CASE("convergence report") {
  const auto lin = classify(PowerSeries({0, 0.5}));
  const auto linear = convergence_report(lin, GlueKind::Koenig, {1, 2}, GlueOptions{64, 128}, 0.2);
  for (const auto& row : linear.rows) {
    CHECK(row.K == doctest::Approx(1.0));
    CHECK(row.residual <= 1e-15);
  }
  CHECK(linear.monotone());

  const auto report = convergence_report(superattracting(), GlueKind::Boettcher, {1, 2}, {}, 0.25);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[1].K <= report.rows[0].K + 1e-3);
  CHECK(report.monotone());
  CHECK(report.within_bound());

  std::ostringstream csv;
  write_csv(csv, report);
  const std::string text = csv.str();
  CHECK(text.rfind("k,r_k,K,K_minus_1,bound,k_sup,residual,continuity,pieces,monotone,within_bound\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
