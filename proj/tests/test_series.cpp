#include <doctest.h>

#include <random>

#include "holomotion/errors.hpp"
#include "holomotion/series.hpp"

using namespace holomotion;

namespace {

PowerSeries poly(std::vector<cplx> c) { return PowerSeries(std::move(c)); }

void check_coeffs(const PowerSeries& f, const std::vector<cplx>& expected, double tol = 1e-14) {
  REQUIRE(f.order() + 1 == expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j) CHECK(std::abs(f[j] - expected[j]) <= tol);
}

PowerSeries random_germ(std::mt19937& rng, std::size_t order) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> mod(0.1, 10.0);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::vector<cplx> c(order + 1);
  c[1] = std::polar(mod(rng), angle(rng));
  for (std::size_t j = 2; j <= order; ++j) c[j] = cplx(unit(rng), unit(rng)) / static_cast<double>(j * j);
  return PowerSeries(std::move(c));
}

// Series of coefficient moduli; composing these bounds the terms summed
// into each coefficient of a composition.
PowerSeries moduli(const PowerSeries& f) {
  std::vector<cplx> c;
  for (const cplx& a : f.coeffs()) c.push_back(std::abs(a));
  return PowerSeries(std::move(c));
}

}  // namespace

TEST_CASE("construction validates coefficients and radius") {
  CHECK_THROWS_AS(PowerSeries(std::vector<cplx>{}), Error);
  CHECK_THROWS_AS(PowerSeries({1.0, cplx(std::nan(""), 0.0)}), Error);
  CHECK_THROWS_AS(PowerSeries({1.0}, 0.0), Error);
  const auto f = PowerSeries::monomial(2.0, 3, 5, 0.5);
  CHECK(f.order() == 5);
  CHECK(f.radius() == 0.5);
  CHECK(f[3] == cplx(2.0));
  CHECK(f[7] == cplx(0.0));
}

TEST_CASE("add truncates to the smaller order and radius") {
  check_coeffs(add(poly({1, 1, 0}), poly({2, 0, 1})), {3, 1, 1});
  const auto f = poly({0, 1, -4});
  check_coeffs(add(f, PowerSeries::zero(2)), {0, 1, -4});
  check_coeffs(add(f, poly({0, 0, 4})), {0, 1, 0});
  const auto g = add(PowerSeries({1, 2, 3}, 2.0), PowerSeries({1, 1}, 0.5));
  CHECK(g.order() == 1);
  CHECK(g.radius() == 0.5);
}

TEST_CASE("multiply is the truncated Cauchy product") {
  check_coeffs(multiply(poly({1, 1, 0}), poly({1, -1, 0})), {1, 0, -1});
  const auto f = poly({0.5, 2, 3});
  check_coeffs(multiply(f, PowerSeries::constant(1.0, 2)), {0.5, 2, 3});
  const auto s = poly({0, 1, 1, 0});
  check_coeffs(multiply(s, s), {0, 0, 1, 2});
}

TEST_CASE("compose substitutes and rejects a constant term") {
  check_coeffs(compose(poly({0, 0.5, 0}), poly({0, 0, 1})), {0, 0, 0.5});
  const auto f = poly({0.25, -1, 2, 3});
  check_coeffs(compose(f, PowerSeries::identity(3)), {0.25, -1, 2, 3});
  check_coeffs(compose(poly({0, 1, 1}), poly({0, 2, 0})), {0, 2, 4});
  try {
    (void)compose(f, poly({0.1, 1, 0, 0}));
    FAIL("expected NonZeroConstantTerm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonZeroConstantTerm);
  }
}

TEST_CASE("reverse inverts germs") {
  const cplx lambda(0.3, 0.4);
  check_coeffs(reverse(poly({0, lambda, 0})), {0, 1.0 / lambda, 0});
  check_coeffs(reverse(PowerSeries::identity(4)), {0, 1, 0, 0, 0});
  check_coeffs(reverse(poly({0, 1, 1, 0})), {0, 1, -1, 2});
  for (const auto& bad : {poly({0.1, 1, 0}), poly({0, 0, 1})}) {
    try {
      (void)reverse(bad);
      FAIL("expected NonInvertibleGerm");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonInvertibleGerm);
    }
  }
}

TEST_CASE("evaluate by Horner") {
  CHECK(std::abs(evaluate(poly({0, 1, -4}), 0.1) - 0.06) < 1e-16);
  CHECK(evaluate(poly({cplx(2, 1), 3, 4}), 0.0) == cplx(2, 1));
  CHECK(evaluate(poly({0, cplx(0.5, 0.5)}), 1.0) == cplx(0.5, 0.5));
  const auto [v, d] = evaluate_with_derivative(poly({1, 2, 3}), 2.0);
  CHECK(v == cplx(17.0));
  CHECK(d == cplx(14.0));
}

TEST_CASE("power, shift and scaling helpers") {
  const auto u = poly({1, 1, 0, 0, 0});
  const auto root = power(u, 0.5);
  check_coeffs(multiply(root, root), {1, 1, 0, 0, 0}, 1e-15);
  check_coeffs(shift_down(poly({0, 0, 1, 2}), 2), {1, 2});
  const auto f = poly({0, 1, 1});
  check_coeffs(f.argument_scaled(2.0), {0, 2, 4});
  CHECK(f.argument_scaled(2.0).radius() == 0.5);
  check_coeffs(f.derivative(), {1, 2});
}

TEST_CASE("property: compose with reverse is the identity") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_germ(rng, 30);
    const auto g = reverse(f);
    const auto fg = compose(f, g);
    const auto gf = compose(g, f);
    const auto fg_scale = compose(moduli(f), moduli(g));
    const auto gf_scale = compose(moduli(g), moduli(f));
    for (std::size_t j = 0; j <= 30; ++j) {
      const cplx id = j == 1 ? 1.0 : 0.0;
      CHECK(std::abs(fg[j] - id) <= 1e-12 * std::max(1.0, std::abs(fg_scale[j])));
      CHECK(std::abs(gf[j] - id) <= 1e-12 * std::max(1.0, std::abs(gf_scale[j])));
    }
  }
}

TEST_CASE("property: composition commutes with evaluation inside a quarter radius") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> fc(13), gc(13);
    for (std::size_t j = 0; j <= 12; ++j) {
      fc[j] = cplx(unit(rng), unit(rng));
      if (j > 0) gc[j] = cplx(unit(rng), unit(rng)) * 0.5;
    }
    const PowerSeries f(fc), g(gc);
    const auto fg = compose(f, g);
    for (int k = 0; k < 8; ++k) {
      const cplx z = std::polar(0.1, 0.7 * k);
      // Truncation bound: the discarded tail is O(|z|^{13}).
      CHECK(std::abs(evaluate(fg, z) - evaluate(f, evaluate(g, z))) <= 1e-10);
    }
  }
}

TEST_CASE("property: add and multiply commute and associate") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto random = [&] {
    std::vector<cplx> c(9);
    for (auto& x : c) x = cplx(unit(rng), unit(rng));
    return PowerSeries(std::move(c));
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random(), b = random(), c = random();
    CHECK(max_coefficient_distance(add(a, b), add(b, a)) == 0.0);
    CHECK(max_coefficient_distance(multiply(a, b), multiply(b, a)) <= 1e-13);
    CHECK(max_coefficient_distance(add(add(a, b), c), add(a, add(b, c))) <= 1e-13);
    CHECK(max_coefficient_distance(multiply(multiply(a, b), c), multiply(a, multiply(b, c))) <= 1e-13);
  }
}
