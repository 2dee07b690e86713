#include "fourier.hpp"

#include <map>
#include <mutex>

#include <fftw3.h>

namespace holomotion::detail {

namespace {

// Planning is not thread-safe in FFTW; execution of an existing plan is.
fftw_plan plan_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(mutex);
  if (const auto it = plans.find(n); it != plans.end()) return it->second;
  std::vector<cplx> in(n), out(n);
  const fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(n, plan);
  return plan;
}

}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& samples) {
  if (samples.empty()) return {};
  std::vector<cplx> in = samples, out(samples.size());
  fftw_execute_dft(plan_for(samples.size()), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace holomotion::detail
