#include "holomotion/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "holomotion/errors.hpp"

namespace holomotion {

namespace {

bool finite(cplx c) noexcept { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

std::vector<cplx> cauchy(std::span<const cplx> a, std::span<const cplx> b, std::size_t order) {
  std::vector<cplx> out(order + 1);
  for (std::size_t i = 0; i <= order && i < a.size(); ++i) {
    if (a[i] == cplx{}) continue;
    const std::size_t top = std::min(order - i, b.size() - 1);
    for (std::size_t j = 0; j <= top; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

PowerSeries::PowerSeries(std::vector<cplx> coeffs, double radius)
    : coeffs_(std::move(coeffs)), radius_(radius) {
  require(!coeffs_.empty(), "power series needs at least one coefficient");
  require(radius_ > 0.0 && std::isfinite(radius_), "power series radius must be positive and finite");
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    require(finite(coeffs_[j]), "coefficient " + std::to_string(j) + " is not finite");
}

PowerSeries PowerSeries::zero(std::size_t order, double radius) {
  return PowerSeries(std::vector<cplx>(order + 1), radius);
}

PowerSeries PowerSeries::constant(cplx value, std::size_t order, double radius) {
  std::vector<cplx> c(order + 1);
  c[0] = value;
  return PowerSeries(std::move(c), radius);
}

PowerSeries PowerSeries::identity(std::size_t order, double radius) {
  return monomial(1.0, 1, order, radius);
}

PowerSeries PowerSeries::monomial(cplx c, std::size_t degree, std::size_t order, double radius) {
  std::vector<cplx> coeffs(order + 1);
  if (degree <= order) coeffs[degree] = c;
  return PowerSeries(std::move(coeffs), radius);
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
  std::vector<cplx> c(order + 1);
  std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), order + 1), c.begin());
  return PowerSeries(std::move(c), radius_);
}

PowerSeries PowerSeries::with_radius(double radius) const { return PowerSeries(coeffs_, radius); }

PowerSeries PowerSeries::scaled(cplx factor) const {
  std::vector<cplx> c(coeffs_);
  for (auto& x : c) x *= factor;
  return PowerSeries(std::move(c), radius_);
}

PowerSeries PowerSeries::argument_scaled(cplx c) const {
  require(c != cplx{}, "argument scale must be non-zero");
  std::vector<cplx> out(coeffs_);
  cplx p = 1.0;
  for (auto& x : out) {
    x *= p;
    p *= c;
  }
  return PowerSeries(std::move(out), radius_ / std::abs(c));
}

PowerSeries PowerSeries::derivative() const {
  if (order() == 0) return zero(0, radius_);
  std::vector<cplx> c(order());
  for (std::size_t j = 1; j <= order(); ++j) c[j - 1] = coeffs_[j] * static_cast<double>(j);
  return PowerSeries(std::move(c), radius_);
}

PowerSeries add(const PowerSeries& f, const PowerSeries& g) {
  const std::size_t n = std::min(f.order(), g.order());
  std::vector<cplx> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j) c[j] = f[j] + g[j];
  return PowerSeries(std::move(c), std::min(f.radius(), g.radius()));
}

PowerSeries subtract(const PowerSeries& f, const PowerSeries& g) { return add(f, g.scaled(-1.0)); }

PowerSeries multiply(const PowerSeries& f, const PowerSeries& g) {
  const std::size_t n = std::min(f.order(), g.order());
  return PowerSeries(cauchy(f.coeffs(), g.coeffs(), n), std::min(f.radius(), g.radius()));
}

PowerSeries compose(const PowerSeries& f, const PowerSeries& g) {
  if (g[0] != cplx{}) fail(ErrorKind::NonZeroConstantTerm, "inner series of a composition must vanish at 0");
  const std::size_t n = std::min(f.order(), g.order());
  // Horner: ((a_n g + a_{n-1}) g + ...) g + a_0, every product truncated at n.
  std::vector<cplx> acc(n + 1);
  acc[0] = f[n];
  for (std::size_t j = n; j-- > 0;) {
    acc = cauchy(acc, g.coeffs(), n);
    acc[0] += f[j];
  }
  return PowerSeries(std::move(acc), std::min(f.radius(), g.radius()));
}

PowerSeries reverse(const PowerSeries& f) {
  if (f[0] != cplx{} || f[1] == cplx{} || f.order() < 1)
    fail(ErrorKind::NonInvertibleGerm, "reversion needs f(0) = 0 and f'(0) != 0");
  const std::size_t n = f.order();
  const cplx a1 = f[1];
  std::vector<cplx> g(n + 1);
  g[1] = 1.0 / a1;
  // Solve [f∘g]_m = 0 for m >= 2 one coefficient at a time: with g_m still 0,
  // [f∘g]_m collects only lower-order data and the a_1 g_m term is missing.
  for (std::size_t m = 2; m <= n; ++m) {
    const PowerSeries partial(std::vector<cplx>(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(m) + 1));
    const PowerSeries lhs = compose(f.truncated(m), partial);
    g[m] = -lhs[m] / a1;
  }
  // Koebe quarter estimate for the disk covered by the image.
  return PowerSeries(std::move(g), std::abs(a1) * f.radius() / 4.0);
}

cplx evaluate(const PowerSeries& f, cplx z) noexcept {
  const auto c = f.coeffs();
  cplx acc = c.back();
  for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * z + c[j];
  return acc;
}

ValueAndDerivative evaluate_with_derivative(const PowerSeries& f, cplx z) noexcept {
  const auto c = f.coeffs();
  cplx value = c.back();
  cplx deriv = 0.0;
  for (std::size_t j = c.size() - 1; j-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + c[j];
  }
  return {value, deriv};
}

PowerSeries power(const PowerSeries& f, double alpha) {
  const cplx f0 = f[0];
  require(f0 != cplx{}, "power needs a non-zero constant term");
  const std::size_t n = f.order();
  std::vector<cplx> g(n + 1);
  g[0] = std::pow(f0, alpha);
  for (std::size_t m = 1; m <= n; ++m) {
    cplx acc = 0.0;
    for (std::size_t k = 1; k <= m; ++k)
      acc += ((alpha + 1.0) * static_cast<double>(k) - static_cast<double>(m)) * f[k] * g[m - k];
    g[m] = acc / (static_cast<double>(m) * f0);
  }
  return PowerSeries(std::move(g), f.radius());
}

PowerSeries shift_down(const PowerSeries& f, std::size_t shift) {
  require(shift <= f.order(), "shift exceeds truncation order");
  const auto c = f.coeffs();
  return PowerSeries(std::vector<cplx>(c.begin() + static_cast<std::ptrdiff_t>(shift), c.end()), f.radius());
}

double max_coefficient_distance(const PowerSeries& f, const PowerSeries& g) noexcept {
  const std::size_t n = std::min(f.order(), g.order());
  double d = 0.0;
  for (std::size_t j = 0; j <= n; ++j) d = std::max(d, std::abs(f[j] - g[j]));
  return d;
}

}  // namespace holomotion
