#pragma once

#include <vector>

#include "holomotion/series.hpp"

namespace holomotion::detail {

/// Unnormalised forward DFT, X_m = sum_k x_k exp(-2 pi i m k / n). Thread-safe.
std::vector<cplx> dft(const std::vector<cplx>& samples);

}  // namespace holomotion::detail
