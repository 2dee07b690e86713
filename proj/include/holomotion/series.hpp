#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace holomotion {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultOrder = 30;

/// Truncated power series a_0 + a_1 z + ... + a_N z^N over the complex numbers.
///
/// `radius` is metadata: the disk inside which evaluation is considered
/// meaningful. Binary operations propagate the smaller radius and the smaller
/// truncation order. Values are immutable once built.
class PowerSeries {
 public:
  /// Throws PreconditionViolated on an empty coefficient list, a non-finite
  /// coefficient or a non-positive radius.
  explicit PowerSeries(std::vector<cplx> coeffs, double radius = 1.0);

  static PowerSeries zero(std::size_t order, double radius = 1.0);
  static PowerSeries constant(cplx value, std::size_t order, double radius = 1.0);
  static PowerSeries identity(std::size_t order, double radius = 1.0);
  /// c * z^degree, truncated at `order`.
  static PowerSeries monomial(cplx c, std::size_t degree, std::size_t order, double radius = 1.0);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  double radius() const noexcept { return radius_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of z^j; zero above the truncation order.
  cplx operator[](std::size_t j) const noexcept { return j < coeffs_.size() ? coeffs_[j] : cplx{}; }

  PowerSeries truncated(std::size_t order) const;
  PowerSeries with_radius(double radius) const;
  PowerSeries scaled(cplx factor) const;
  /// f(c z): coefficient j multiplied by c^j. Radius becomes radius/|c|.
  PowerSeries argument_scaled(cplx c) const;
  PowerSeries derivative() const;

  /// True when |z| <= radius. Evaluating outside is allowed but flagged by callers.
  bool within_radius(cplx z) const noexcept { return std::abs(z) <= radius_; }

 private:
  std::vector<cplx> coeffs_;
  double radius_;
};

PowerSeries add(const PowerSeries& f, const PowerSeries& g);
PowerSeries subtract(const PowerSeries& f, const PowerSeries& g);
PowerSeries multiply(const PowerSeries& f, const PowerSeries& g);

/// f∘g truncated to min(order_f, order_g). Requires g(0) == 0 exactly.
PowerSeries compose(const PowerSeries& f, const PowerSeries& g);

/// Compositional inverse g with f∘g = g∘f = z up to the truncation order.
/// Requires f(0) == 0 and f'(0) != 0.
PowerSeries reverse(const PowerSeries& f);

/// Horner evaluation of the truncated polynomial.
cplx evaluate(const PowerSeries& f, cplx z) noexcept;

/// Value and first derivative at z in one Horner pass.
struct ValueAndDerivative {
  cplx value;
  cplx derivative;
};
ValueAndDerivative evaluate_with_derivative(const PowerSeries& f, cplx z) noexcept;

/// f^alpha for a series with f(0) != 0, using the principal branch at the
/// constant term (J.C.P. Miller recurrence).
PowerSeries power(const PowerSeries& f, double alpha);

/// Coefficients divided by z^shift: a_shift + a_{shift+1} z + ...
PowerSeries shift_down(const PowerSeries& f, std::size_t shift);

/// max_j |f_j - g_j| over the common truncation order.
double max_coefficient_distance(const PowerSeries& f, const PowerSeries& g) noexcept;

}  // namespace holomotion
