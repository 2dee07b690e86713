#include "holomotion/render.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "holomotion/errors.hpp"
#include "holomotion/parallel.hpp"

namespace holomotion {

GrayImage render_equipotentials(const ConjugacyResult& result, std::size_t size, int bands) {
  require(size >= 1, "image size must be positive");
  require(bands >= 1, "band count must be positive");
  GrayImage image{size, size, std::vector<std::uint8_t>(size * size, 0)};
  const double delta = result.delta;
  const double n = static_cast<double>(size);
  parallel_for(size, [&](std::size_t row) {
    const double y = delta * (1.0 - 2.0 * (static_cast<double>(row) + 0.5) / n);
    for (std::size_t col = 0; col < size; ++col) {
      const double x = delta * (2.0 * (static_cast<double>(col) + 0.5) / n - 1.0);
      const cplx z(x, y);
      if (std::abs(z) > delta) continue;
      const double level = std::abs(evaluate(result.phi_inverse, z)) / delta;
      const double v = 0.5 + 0.5 * std::cos(2.0 * std::numbers::pi * bands * level);
      image.pixels[row * size + col] = static_cast<std::uint8_t>(std::lround(255.0 * v));
    }
  });
  return image;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::PreconditionViolated, "cannot write " + path.string());
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

}  // namespace holomotion
