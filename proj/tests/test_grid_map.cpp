#include <doctest.h>

#include <sstream>

#include "holomotion/errors.hpp"
#include "holomotion/grid_map.hpp"

using namespace holomotion;

TEST_CASE("identity map has zero Beltrami coefficient") {
  auto g = GridMap::cartesian(-1, 1, 64, -1, 1, 64);
  g.fill([](cplx z) { return z; });
  const auto b = estimate_dilatation(g);
  CHECK(b.k_sup <= 1e-14);
  CHECK(b.K == doctest::Approx(1.0));
  CHECK(b.degenerate == 0);
  CHECK(b.evaluated == 60 * 60);
}

TEST_CASE("affine map z + 0.3 conj(z)") {
  auto g = GridMap::cartesian(-1, 1, 64, -1, 1, 64);
  g.fill([](cplx z) { return z + 0.3 * std::conj(z); });
  const auto b = estimate_dilatation(g);
  CHECK(b.k_sup == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(b.K == doctest::Approx(13.0 / 7.0).epsilon(1e-12));
  for (std::size_t n = 0; n < b.mu.size(); ++n)
    if (b.status[n] == BeltramiEstimate::Node::Ok) CHECK(std::abs(b.mu[n] - 0.3) <= 1e-12);
}

TEST_CASE("holomorphic maps measure as conformal") {
  auto annulus = GridMap::log_polar(0.5, 1.0, 64, 64);
  annulus.fill([](cplx z) { return z * z; });
  CHECK(estimate_dilatation(annulus).k_sup <= 1e-6);

  auto square = GridMap::cartesian(-0.5, 0.5, 256, -0.5, 0.5, 256);
  square.fill([](cplx z) { return std::exp(z) + 0.2 * z * z * z; });
  CHECK(estimate_dilatation(square).K <= 1.0 + 1e-4);

  auto ring = GridMap::log_polar(0.1, 0.4, 256, 256);
  ring.fill([](cplx z) { return z - 0.5 * z * z; });
  CHECK(estimate_dilatation(ring).K <= 1.0 + 1e-4);
}

TEST_CASE("degenerate nodes are flagged, not counted") {
  auto g = GridMap::cartesian(-1, 1, 65, -1, 1, 65);
  g.fill([](cplx z) { return z * z; });
  const auto b = estimate_dilatation(g);
  CHECK(b.degenerate >= 1);
  CHECK(b.k_sup <= 1e-6);
}

TEST_CASE("coarse meshes are rejected") {
  auto g = GridMap::cartesian(-1, 1, 32, -1, 1, 64);
  g.fill([](cplx z) { return z; });
  try {
    (void)estimate_dilatation(g);
    FAIL("expected InsufficientSampling");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientSampling);
  }
}

TEST_CASE("orientation detects folds") {
  auto g = GridMap::log_polar(0.5, 1.0, 64, 64);
  g.fill([](cplx z) { return z; });
  const auto ok = check_orientation(g);
  CHECK(ok.folded == 0);
  CHECK(ok.min_area_ratio > 0.9);
  g.fill([](cplx z) { return std::conj(z); });
  CHECK(check_orientation(g).folded == check_orientation(g).cells);
}

TEST_CASE("winding numbers") {
  std::vector<cplx> circle, squared, off;
  for (int k = 0; k < 128; ++k) {
    const cplx z = std::polar(1.0, 6.283185307179586 * k / 128);
    circle.push_back(z);
    squared.push_back(z * z);
    off.push_back(z + 3.0);
  }
  CHECK(winding_number(circle) == 1);
  CHECK(winding_number(squared) == 2);
  CHECK(winding_number(off) == 0);
}

TEST_CASE("interpolation is fourth order and periodic") {
  auto g = GridMap::log_polar(0.1, 0.2, 128, 128);
  const auto f = [](cplx z) { return z * (1.0 + z) + 0.5 * z * z * z; };
  g.fill(f);
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(0.1 + 0.1 * k / 16.0, 0.4 * k - 3.0);
    CHECK(std::abs(g.interpolate(z) - f(z)) <= 1e-8);
  }
  CHECK(g.contains(0.15));
  CHECK_FALSE(g.contains(0.3));
  CHECK_THROWS_AS((void)g.interpolate(0.3), Error);

  auto c = GridMap::cartesian(0, 1, 64, 0, 1, 64);
  c.fill([](cplx z) { return z * z; });
  CHECK(std::abs(c.interpolate(cplx(0.31, 0.77)) - cplx(0.31, 0.77) * cplx(0.31, 0.77)) <= 1e-14);
}

TEST_CASE("CSV dump") {
  auto g = GridMap::cartesian(0, 1, 64, 0, 1, 64);
  g.fill([](cplx z) { return z; });
  const auto b = estimate_dilatation(g);
  std::ostringstream out;
  write_csv(out, g, &b);
  const std::string text = out.str();
  CHECK(text.rfind("x,y,re,im,mu_re,mu_im\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 64 * 64 + 1);
}
