#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "holomotion/normal_forms.hpp"

namespace holomotion {

/// Row-major 8-bit grayscale image.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;
};

/// Level sets of |φ^{-1}(z)| on the square [-δ, δ]^2: intensity
/// 0.5 + 0.5 cos(2π bands |φ^{-1}(z)| / δ), black outside |z| <= δ.
/// Rows run from Im z = δ downward.
GrayImage render_equipotentials(const ConjugacyResult& result, std::size_t size, int bands = 8);

/// Binary PGM (P5).
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace holomotion
