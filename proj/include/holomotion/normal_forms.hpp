#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "holomotion/series.hpp"

namespace holomotion {

enum class FixedPointClass { Attracting, Repelling, Superattracting, Unsupported };

std::string_view to_string(FixedPointClass c) noexcept;

/// A series fixing the origin together with its classification.
struct AnalyticGerm {
  PowerSeries series;
  FixedPointClass kind = FixedPointClass::Unsupported;
  cplx multiplier{};               // a_1
  std::size_t leading_degree = 0;  // smallest j with a_j != 0; 0 for the zero series

  cplx leading_coefficient() const noexcept { return series[leading_degree]; }
};

/// Throws NotAFixedPoint when a_0 != 0.
AnalyticGerm classify(const PowerSeries& f);

/// The model map a conjugacy straightens the germ to: z -> λz or z -> z^n.
struct NormalForm {
  enum class Kind { Linear, Power };
  Kind kind = Kind::Linear;
  cplx lambda{};           // Linear
  std::size_t degree = 0;  // Power

  static NormalForm linear(cplx lambda) { return {Kind::Linear, lambda, 1}; }
  static NormalForm power(std::size_t n) { return {Kind::Power, 0.0, n}; }
  cplx apply(cplx z) const noexcept;
};

/// phi conjugates the model map to the germ: f(phi(z)) = phi(model(z)).
///
/// For Linear forms phi'(0) = 1. For Power forms with leading coefficient a_n
/// the germ is first conjugated by z -> b z with b^{n-1} = a_n (principal
/// branch) and phi'(0) = 1/b; `scale` records b. Linear results carry scale 1.
struct ConjugacyResult {
  PowerSeries phi;
  PowerSeries phi_inverse;
  NormalForm normal_form;
  double delta = 0.0;     // validity radius in the model coordinate
  double residual = 0.0;  // sup |f(phi(z)) - phi(model(z))| on the test circle
  cplx scale = 1.0;
};

/// Radius δ on whose closed disk |f(z)| < |z| and |f'(z) - λ| < |λ| hold on a
/// 256 x 64 polar mesh, found by halving from the series radius. Attracting
/// germs only.
double domain_radius(const AnalyticGerm& germ);

struct BoettcherRadii {
  double delta1;  // the unit factor is tame on the disk of radius 2 δ1
  double delta;   // preimages of the δ-disk stay inside the δ1-disk
};

/// Radii for a superattracting germ, measured after normalising a_n to 1.
BoettcherRadii boettcher_radius(const AnalyticGerm& germ);

/// Germ conjugated by z -> b z so that its leading coefficient is 1.
struct NormalizedGerm {
  AnalyticGerm germ;
  cplx scale;  // b with b^{n-1} = a_n
};
NormalizedGerm normalize_leading(const AnalyticGerm& germ);

/// Linearizing conjugacy by coefficient recursion. Repelling germs are solved
/// through their compositional inverse.
ConjugacyResult koenig_series(const AnalyticGerm& germ, std::size_t order = kDefaultOrder);

/// f^k(z) / λ^k, which converges to phi^{-1}(z). Attracting germs only.
/// `delta` defaults to domain_radius(germ).
cplx koenig_iterative(const AnalyticGerm& germ, cplx z, std::size_t iterations,
                      std::optional<double> delta = std::nullopt);

/// Böttcher conjugacy by coefficient recursion.
ConjugacyResult boettcher_series(const AnalyticGerm& germ, std::size_t order = kDefaultOrder);

/// Branch-tracked (f^k(z))^{1/n^k}, which converges to phi^{-1}(z). Germs with
/// a_n != 1 are normalised internally. `delta` defaults to the Böttcher radius.
cplx boettcher_iterative(const AnalyticGerm& germ, cplx z, std::size_t iterations,
                         std::optional<double> delta = std::nullopt);

/// sup over `samples` points of |f(phi(z)) - phi(model(z))| on |z| = radius.
double conjugacy_residual(const PowerSeries& f, const ConjugacyResult& result, double radius,
                          std::size_t samples = 64);

/// Radius of the circle on which koenig_series/boettcher_series report residuals.
double residual_test_radius(const ConjugacyResult& result);

/// The conjugacy z -> phi(c z), with inverse phi^{-1}(w) / c. The residual is
/// recomputed against f.
ConjugacyResult rescaled(const PowerSeries& f, const ConjugacyResult& result, cplx c);

enum class Uniqueness { Constant, RootOfUnity, Mismatch };
std::string_view to_string(Uniqueness u) noexcept;

struct UniquenessReport {
  Uniqueness verdict = Uniqueness::Mismatch;
  cplx factor{};  // Φ'(0) for Φ = phi2^{-1} ∘ phi1
  /// max over j != 1 of |Φ_j| ρ^{j-1}, with ρ a quarter of the smaller delta.
  double max_higher_coefficient = 0.0;
};

/// Compares two conjugacies of the same germ through Φ = phi2^{-1} ∘ phi1.
UniquenessReport uniqueness_check(const ConjugacyResult& r1, const ConjugacyResult& r2);

/// Newton's method on f(ζ) = target from `guess`. Throws RootFindingDivergence.
cplx newton_preimage(const PowerSeries& f, cplx target, cplx guess, int max_iterations = 60);

/// The lift h(w) = w ψ(w) with f(h(w)) = w^n and h'(0) = 1, for a germ with
/// leading term exactly z^n. The series seeds Newton polishing on f(·) - w^n.
class CoveringLift {
 public:
  explicit CoveringLift(const AnalyticGerm& germ, std::size_t order = kDefaultOrder);

  cplx operator()(cplx w) const;
  /// ψ(w) = h(w)/w, with ψ(0) = 1.
  cplx unit_factor(cplx w) const;
  const PowerSeries& series() const noexcept { return series_; }

 private:
  PowerSeries f_;
  PowerSeries series_;
  std::size_t degree_;
};

}  // namespace holomotion
