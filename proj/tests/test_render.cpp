#include <doctest.h>

#include "holomotion/render.hpp"

using namespace holomotion;

TEST_CASE("z^2 renders concentric circles") {
  const auto result = boettcher_series(classify(PowerSeries({0, 0, 1})), 10);
  const auto image = render_equipotentials(result, 65);
  CHECK(image.pixels.size() == 65 * 65);
  CHECK(image.pixels[0] == 0);
  for (std::size_t row = 0; row < 65; ++row)
    for (std::size_t col = 0; col < 65; ++col) {
      const auto p = image.pixels[row * 65 + col];
      CHECK(p == image.pixels[col * 65 + row]);
      CHECK(p == image.pixels[row * 65 + (64 - col)]);
    }
}

TEST_CASE("a deformed square moves pixels by a bounded amount") {
  auto plain = boettcher_series(classify(PowerSeries({0, 0, 1})), 20);
  const auto bent = boettcher_series(classify(PowerSeries({0, 0, 1, 0.1})), 20);
  plain.delta = bent.delta;
  const std::size_t size = 64;
  const int bands = 8;
  const auto a = render_equipotentials(plain, size, bands);
  const auto b = render_equipotentials(bent, size, bands);
  // |d intensity / d level| <= 255 π bands and the levels differ by |φ^{-1}(z) - z| / δ.
  double shift = 0.0;
  for (int k = 0; k < 256; ++k) {
    const cplx z = std::polar(bent.delta, 0.0245 * k);
    shift = std::max(shift, std::abs(evaluate(bent.phi_inverse, z)) - std::abs(z));
  }
  const double bound = 255.0 * 3.141592653589793 * bands * std::abs(shift) / bent.delta + 1.0;
  int differing = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const int d = std::abs(int(a.pixels[i]) - int(b.pixels[i]));
    CHECK(d <= bound);
    differing += d > 0;
  }
  CHECK(differing > 0);
}
