#include <doctest.h>

#include "holomotion/errors.hpp"
#include "holomotion/motions.hpp"

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

ParamGrid four_circles(double radius) {
  return ParamGrid::circles(radius, {0.2 * radius, 0.4 * radius, 0.6 * radius, 0.8 * radius}, 128);
}

std::pair<std::vector<cplx>, std::vector<Ring>> two_rings(double inner, double outer, std::size_t n) {
  auto points = circle_points(outer, n);
  const auto in = circle_points(inner, n);
  points.insert(points.end(), in.begin(), in.end());
  return {points, {Ring{outer, 0, n}, Ring{inner, n, n}}};
}

}  // namespace

TEST_CASE("parameter grid layout") {
  const auto g = ParamGrid::circles(1.0, {0.5}, 64);
  CHECK(g.size() == 65);
  const auto pts = g.points();
  CHECK(pts[0] == cplx(0.0));
  CHECK(pts[1] == cplx(0.5));
  CHECK(g.index_of(cplx(0.5)) == std::optional<std::size_t>(1));
  CHECK_FALSE(g.index_of(cplx(0.25)).has_value());
}

TEST_CASE("constant motion passes every axiom") {
  const auto s = sample_motion({0.0, 1.0, cplx(0, 1)}, {}, ParamGrid::circles(1.0, {0.5}, 64),
                               [](cplx, cplx z) { return z; });
  const auto r = verify_motion(s);
  CHECK(r.passes());
  CHECK(r.identity_defect == 0.0);
  CHECK(r.holomorphy_defect == 0.0);
}

TEST_CASE("affine motion z + c on two points") {
  const auto s = sample_motion({0.0, 1.0}, {}, four_circles(0.4), [](cplx c, cplx z) { return z + c; });
  const auto r = verify_motion(s);
  CHECK(r.passes());
  CHECK(r.min_separation == doctest::Approx(1.0));
}

TEST_CASE("anti-holomorphic motion fails axiom three") {
  const auto s = sample_motion({0.0, 1.0}, {}, four_circles(0.5), [](cplx c, cplx z) { return z + std::conj(c); });
  const auto r = verify_motion(s);
  CHECK(r.identity_ok());
  CHECK(r.injective_ok());
  CHECK_FALSE(r.holomorphic_ok());
  CHECK(r.holomorphy_defect >= 0.5);
}

TEST_CASE("identity and injectivity failures") {
  const auto shifted = sample_motion({0.0, 1.0}, {}, four_circles(0.5), [](cplx c, cplx z) { return z + c + 1e-3; });
  CHECK_FALSE(verify_motion(shifted).identity_ok());
  const auto collapse = sample_motion({0.0, 1.0}, {}, four_circles(0.5), [](cplx c, cplx z) { return z * (1.0 - c / 0.2); });
  CHECK_FALSE(verify_motion(collapse).injective_ok());
}

TEST_CASE("verify_motion needs enough parameter samples") {
  const auto few = sample_motion({0.0}, {}, ParamGrid::circles(1.0, {0.5}, 32), [](cplx, cplx z) { return z; });
  CHECK(kind_of([&] { (void)verify_motion(few); }) == ErrorKind::InsufficientSampling);
  const auto none = sample_motion({0.0}, {}, ParamGrid::circles(1.0, {}, 128), [](cplx, cplx z) { return z; });
  CHECK(kind_of([&] { (void)verify_motion(none); }) == ErrorKind::InsufficientSampling);
}

TEST_CASE("König motion of a linear germ is the identity") {
  const auto germ = classify(PowerSeries({0, cplx(0.3, 0.3)}));
  const auto s = build_koenig_motion(germ, 0.1, 0.5, four_circles(1.0));
  for (std::size_t ci = 0; ci < s.grid.size(); ++ci)
    for (std::size_t zi = 0; zi < s.base_points.size(); ++zi) CHECK(s.value(ci, zi) == s.base_points[zi]);
  CHECK(verify_motion(s).passes());
}

TEST_CASE("König motion of 0.5z + z^2") {
  const auto germ = classify(PowerSeries({0, 0.5, 1}));
  const double delta = domain_radius(germ);
  const double r = delta / 2;
  const auto s = build_koenig_motion(germ, r, delta, four_circles(1.0));
  for (std::size_t zi = 0; zi < s.base_points.size(); ++zi) CHECK(s.value(0, zi) == s.base_points[zi]);
  const auto report = verify_motion(s);
  CHECK(report.passes());
  REQUIRE(s.crossing_margin.has_value());
  CHECK(*s.crossing_margin > 0.0);
  CHECK(kind_of([&] { (void)build_koenig_motion(germ, 2.0 * delta, delta, four_circles(1.0)); }) ==
        ErrorKind::PreconditionViolated);
  CHECK(kind_of([&] { (void)build_koenig_motion(germ, 0.1, 2.0, four_circles(1.0)); }) ==
        ErrorKind::NonCrossingViolated);
}

TEST_CASE("Böttcher motions") {
  const auto square = classify(PowerSeries({0, 0, 1}));
  const auto id = build_boettcher_motion(square, 0.01, 0.25, four_circles(0.5));
  for (std::size_t ci = 0; ci < id.grid.size(); ++ci)
    for (std::size_t zi = 0; zi < id.base_points.size(); ++zi) CHECK(std::abs(id.value(ci, zi) - id.base_points[zi]) <= 1e-15);

  const auto germ = classify(PowerSeries({0, 0, 1, 1}));
  const double delta = boettcher_radius(germ).delta;
  const double r = delta * delta;
  const auto s = build_boettcher_motion(germ, r, delta, four_circles(std::sqrt(delta)));
  CHECK(verify_motion(s).passes());
  REQUIRE(s.lower_bound_margin.has_value());
  CHECK(*s.lower_bound_margin >= 0.0);
  CHECK(*s.crossing_margin >= std::sqrt(r) / 2 - r);
  CHECK(kind_of([&] { (void)build_boettcher_motion(classify(PowerSeries({0, 0, 2})), r, delta, four_circles(0.01)); }) ==
        ErrorKind::PreconditionViolated);
}

TEST_CASE("extension of identity boundary data is the identity") {
  const AnnulusExtension ext(0.5, circle_points(0.5, 64), 1.0, circle_points(1.0, 64));
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(0.5 + k / 32.0, 0.37 * k);
    CHECK(std::abs(ext(z) - z) <= 1e-15);
  }
}

TEST_CASE("extension matches boundary values") {
  const auto [points, rings] = two_rings(0.5, 1.0, 128);
  const auto s = sample_motion(points, rings, ParamGrid::circles(1.0, {0.3}, 64),
                               [](cplx c, cplx z) { return z + c * z * z / 4.0; });
  for (auto profile : {ExtensionProfile::Harmonic, ExtensionProfile::Linear}) {
    const auto e = extend_motion(s, 0.3, 128, 128, profile);
    CHECK(e.boundary_error <= 1e-12);
    CHECK(e.orientation.folded == 0);
  }
  CHECK(kind_of([&] { (void)extend_motion(s, 0.2, 128, 128); }) == ErrorKind::PreconditionViolated);
  CHECK(kind_of([] { (void)AnnulusExtension(0.5, circle_points(0.5, 8), 0.5, circle_points(0.5, 8)); }) ==
        ErrorKind::PreconditionViolated);
  const auto [flat_points, flat_rings] = two_rings(0.5, 0.5, 16);
  const auto flat = sample_motion(flat_points, flat_rings, ParamGrid::circles(1.0, {0.3}, 64),
                                  [](cplx, cplx z) { return z; });
  CHECK(kind_of([&] { (void)extend_motion(flat, 0.3, 64, 64); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("extension of the König motion respects the dilatation bound") {
  const auto germ = classify(PowerSeries({0, 0.5, 1}));
  const double delta = domain_radius(germ);
  const double r = delta / 2;
  const double c = r / delta;
  const auto s = build_koenig_motion(germ, r, delta, ParamGrid::circles(1.0, {c}, 64));
  const auto e = extend_motion(s, c, 128, 128);
  CHECK(e.boundary_error <= 1e-12);
  const auto b = estimate_dilatation(e.grid);
  CHECK(b.K <= (1 + c) / (1 - c) + 0.05);
}
