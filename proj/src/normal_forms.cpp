#include "holomotion/normal_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holomotion/errors.hpp"

namespace holomotion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kAngular = 256;
constexpr std::size_t kRadial = 64;
constexpr double kMinRadius = 1e-8;
constexpr double kDivergenceGuard = 1e12;

cplx on_circle(double radius, std::size_t k, std::size_t count) {
  return std::polar(radius, kTwoPi * static_cast<double>(k) / static_cast<double>(count));
}

bool attracting_disk_ok(const PowerSeries& f, const PowerSeries& df, cplx lambda, double delta) {
  const double lam = std::abs(lambda);
  for (std::size_t i = 1; i <= kRadial; ++i) {
    const double rho = delta * static_cast<double>(i) / static_cast<double>(kRadial);
    for (std::size_t k = 0; k < kAngular; ++k) {
      const cplx z = on_circle(rho, k, kAngular);
      if (!(std::abs(evaluate(f, z)) < std::abs(z))) return false;
      if (!(std::abs(evaluate(df, z) - lambda) < lam)) return false;
    }
  }
  return true;
}

// Discrete winding number of a closed sampled curve around 0.
long winding(const std::vector<cplx>& curve) {
  double total = 0.0;
  for (std::size_t k = 0; k < curve.size(); ++k)
    total += std::arg(curve[(k + 1) % curve.size()] / curve[k]);
  return std::lround(total / kTwoPi);
}

bool unit_factor_ok(const PowerSeries& u, std::size_t n, double outer) {
  const double cap = std::pow(2.0, static_cast<double>(n));  // |u|^{-1/n} >= 1/2
  if (std::abs(evaluate(u, 0.0)) > cap) return false;
  for (std::size_t i = 1; i <= kRadial; ++i) {
    const double rho = outer * static_cast<double>(i) / static_cast<double>(kRadial);
    for (std::size_t k = 0; k < kAngular; ++k) {
      const double m = std::abs(evaluate(u, on_circle(rho, k, kAngular)));
      if (!(m > 0.0) || m > cap) return false;
    }
  }
  std::vector<cplx> boundary(kAngular);
  for (std::size_t k = 0; k < kAngular; ++k) boundary[k] = evaluate(u, on_circle(outer, k, kAngular));
  return winding(boundary) == 0;
}

double min_modulus_on_annulus(const PowerSeries& f, double inner, double outer) {
  double m = std::abs(evaluate(f, inner));
  for (std::size_t i = 0; i <= kRadial; ++i) {
    const double rho = inner + (outer - inner) * static_cast<double>(i) / static_cast<double>(kRadial);
    for (std::size_t k = 0; k < kAngular; ++k) m = std::min(m, std::abs(evaluate(f, on_circle(rho, k, kAngular))));
  }
  return m;
}

void require_class(const AnalyticGerm& germ, FixedPointClass expected, std::string_view op) {
  if (germ.kind != expected)
    fail(ErrorKind::UnsupportedClass, std::string(op) + " does not apply to a " + std::string(to_string(germ.kind)) +
                                          " germ");
}

PowerSeries koenig_coefficients(const AnalyticGerm& attracting, std::size_t order, double delta) {
  const cplx lambda = attracting.multiplier;
  const std::size_t n = order;
  const PowerSeries f = attracting.series.truncated(n);
  std::vector<cplx> b(n + 1);
  if (n >= 1) b[1] = 1.0;
  cplx lambda_j = lambda;
  for (std::size_t j = 2; j <= n; ++j) {
    lambda_j *= lambda;
    // With b_j still zero, [f∘phi]_j holds only lower-order data; the
    // recursion is λ^j b_j = λ b_j + (that data).
    const cplx known = compose(f, PowerSeries(b))[j];
    b[j] = known / (lambda_j - lambda);
    if (std::abs(b[j]) * std::pow(delta, static_cast<double>(j - 1)) > kDivergenceGuard)
      fail(ErrorKind::DivergentCoefficients, "coefficient " + std::to_string(j) + " outgrew the validity disk");
  }
  return PowerSeries(std::move(b), delta);
}

}  // namespace

std::string_view to_string(FixedPointClass c) noexcept {
  switch (c) {
    case FixedPointClass::Attracting: return "attracting";
    case FixedPointClass::Repelling: return "repelling";
    case FixedPointClass::Superattracting: return "superattracting";
    case FixedPointClass::Unsupported: return "unsupported";
  }
  return "unsupported";
}

std::string_view to_string(Uniqueness u) noexcept {
  switch (u) {
    case Uniqueness::Constant: return "constant";
    case Uniqueness::RootOfUnity: return "root_of_unity";
    case Uniqueness::Mismatch: return "mismatch";
  }
  return "mismatch";
}

AnalyticGerm classify(const PowerSeries& f) {
  if (f[0] != cplx{}) fail(ErrorKind::NotAFixedPoint, "a_0 must be exactly zero");
  AnalyticGerm germ{f};
  std::size_t lead = 0;
  for (std::size_t j = 1; j <= f.order(); ++j) {
    if (f[j] != cplx{}) {
      lead = j;
      break;
    }
  }
  const cplx lambda = f[1];
  const double modulus = std::abs(lambda);
  if (lead == 0) {
    germ.kind = FixedPointClass::Unsupported;
  } else if (lead == 1 && std::abs(modulus - 1.0) <= 1e-12) {
    germ.kind = FixedPointClass::Unsupported;
  } else if (lead == 1) {
    germ.kind = modulus < 1.0 ? FixedPointClass::Attracting : FixedPointClass::Repelling;
    germ.multiplier = lambda;
    germ.leading_degree = 1;
  } else {
    germ.kind = FixedPointClass::Superattracting;
    germ.leading_degree = lead;
  }
  return germ;
}

cplx NormalForm::apply(cplx z) const noexcept {
  if (kind == Kind::Linear) return lambda * z;
  cplx p = 1.0;
  for (std::size_t i = 0; i < degree; ++i) p *= z;
  return p;
}

double domain_radius(const AnalyticGerm& germ) {
  require_class(germ, FixedPointClass::Attracting, "domain_radius");
  const PowerSeries df = germ.series.derivative();
  for (double d = germ.series.radius(); d >= kMinRadius; d /= 2.0)
    if (attracting_disk_ok(germ.series, df, germ.multiplier, d)) return d;
  fail(ErrorKind::NoValidRadius, "halving reached 1e-8 without |f(z)| < |z| on the disk");
}

NormalizedGerm normalize_leading(const AnalyticGerm& germ) {
  require_class(germ, FixedPointClass::Superattracting, "normalize_leading");
  const std::size_t n = germ.leading_degree;
  const cplx an = germ.leading_coefficient();
  const cplx b = std::exp(std::log(an) / static_cast<double>(n - 1));
  if (an == cplx{1.0}) return {germ, 1.0};
  // g(z) = b f(z / b) has leading coefficient a_n b^{1-n} = 1.
  const PowerSeries g = germ.series.argument_scaled(1.0 / b).scaled(b);
  std::vector<cplx> c(g.coeffs().begin(), g.coeffs().end());
  c[n] = 1.0;
  return {classify(PowerSeries(std::move(c), g.radius())), b};
}

BoettcherRadii boettcher_radius(const AnalyticGerm& germ) {
  require_class(germ, FixedPointClass::Superattracting, "boettcher_radius");
  const auto [g, b] = normalize_leading(germ);
  const std::size_t n = g.leading_degree;
  const PowerSeries u = shift_down(g.series, n);
  const double start = 0.99 * std::min(0.5, g.series.radius() / 2.0);
  double delta1 = 0.0;
  for (double d = start; d >= kMinRadius; d /= 2.0) {
    if (unit_factor_ok(u, n, 2.0 * d)) {
      delta1 = d;
      break;
    }
  }
  if (delta1 == 0.0) fail(ErrorKind::NoValidRadius, "unit factor never tame on a disk above 1e-8");
  // f^{-1}(Δ_δ) ⊂ Δ_δ1 inside the covering disk: |f| >= δ on δ1 <= |z| <= 2 δ1.
  const double floor = min_modulus_on_annulus(g.series, delta1, 2.0 * delta1);
  for (double d = delta1 / 2.0; d >= kMinRadius; d /= 2.0)
    if (d < floor) return {delta1, d};
  fail(ErrorKind::NoValidRadius, "preimage condition never satisfied above 1e-8");
}

ConjugacyResult koenig_series(const AnalyticGerm& germ, std::size_t order) {
  if (germ.kind != FixedPointClass::Attracting && germ.kind != FixedPointClass::Repelling)
    require_class(germ, FixedPointClass::Attracting, "koenig_series");
  ConjugacyResult result{PowerSeries::identity(1), PowerSeries::identity(1), NormalForm::linear(germ.multiplier)};
  if (germ.kind == FixedPointClass::Attracting) {
    result.delta = domain_radius(germ);
    result.phi = koenig_coefficients(germ, order, result.delta);
  } else {
    // φ linearizing f^{-1} (multiplier 1/λ) also satisfies f(φ(z)) = φ(λz).
    const AnalyticGerm inverse = classify(reverse(germ.series.truncated(std::max(order, germ.series.order()))));
    result.delta = domain_radius(inverse);
    result.phi = koenig_coefficients(inverse, order, result.delta);
  }
  result.phi_inverse = reverse(result.phi);
  result.residual = conjugacy_residual(germ.series, result, residual_test_radius(result));
  return result;
}

cplx koenig_iterative(const AnalyticGerm& germ, cplx z, std::size_t iterations, std::optional<double> delta) {
  require_class(germ, FixedPointClass::Attracting, "koenig_iterative");
  const double d = delta ? *delta : domain_radius(germ);
  if (std::abs(z) > d) fail(ErrorKind::EscapedDomain, "starting point lies outside the δ-disk");
  cplx orbit = z;
  cplx lambda_k = 1.0;
  cplx previous = z;
  for (std::size_t k = 0; k < iterations; ++k) {
    orbit = evaluate(germ.series, orbit);
    if (std::abs(orbit) > d) fail(ErrorKind::EscapedDomain, "iterate left the δ-disk");
    lambda_k *= germ.multiplier;
    const cplx value = orbit / lambda_k;
    const bool settled = std::abs(value - previous) < 1e-14;
    previous = value;
    if (settled) break;
  }
  return previous;
}

ConjugacyResult boettcher_series(const AnalyticGerm& germ, std::size_t order) {
  require_class(germ, FixedPointClass::Superattracting, "boettcher_series");
  const auto [g, b] = normalize_leading(germ);
  const std::size_t n = g.leading_degree;
  const std::size_t top = order;
  require(top >= 1, "series order must be positive");
  const double delta = boettcher_radius(germ).delta;

  std::vector<cplx> coeffs(top + 1);
  coeffs[1] = 1.0;
  for (std::size_t j = 2; j <= top; ++j) {
    // Match z^{n+j-1}: b_j enters f(φ) linearly as n b_j, and φ(z^n) there
    // only holds b_m with n m = n + j - 1, m < j.
    const std::size_t m = n + j - 1;
    std::vector<cplx> padded(m + 1);
    std::copy_n(coeffs.begin(), std::min(j, m + 1), padded.begin());
    const cplx lhs = compose(g.series.truncated(m), PowerSeries(std::move(padded)))[m];
    const cplx rhs = (m % n == 0) ? coeffs[m / n] : cplx{};
    coeffs[j] = (rhs - lhs) / static_cast<double>(n);
  }
  ConjugacyResult result{PowerSeries(std::move(coeffs), delta).scaled(1.0 / b), PowerSeries::identity(1),
                         NormalForm::power(n)};
  result.phi_inverse = reverse(result.phi);
  result.delta = delta;
  result.scale = b;
  result.residual = conjugacy_residual(germ.series, result, residual_test_radius(result));
  return result;
}

cplx boettcher_iterative(const AnalyticGerm& germ, cplx z, std::size_t iterations, std::optional<double> delta) {
  require_class(germ, FixedPointClass::Superattracting, "boettcher_iterative");
  if (z == cplx{}) return 0.0;
  const auto [g, b] = normalize_leading(germ);
  const std::size_t n = g.leading_degree;
  const double d = delta ? *delta : boettcher_radius(germ).delta;
  const PowerSeries u = shift_down(g.series, n);

  cplx orbit = b * z;
  if (std::abs(orbit) > d) fail(ErrorKind::EscapedDomain, "starting point lies outside the δ-disk");
  cplx w = orbit;
  double root = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < iterations; ++k) {
    const cplx unit = evaluate(u, orbit);
    if (std::abs(unit - 1.0) >= 0.5) fail(ErrorKind::BranchBreakdown, "unit factor left the disk |u - 1| < 1/2");
    const cplx next = w * std::pow(unit, root);
    orbit = evaluate(g.series, orbit);
    if (std::abs(orbit) > d) fail(ErrorKind::EscapedDomain, "iterate left the δ-disk");
    const bool settled = std::abs(next - w) < 1e-14;
    w = next;
    root /= static_cast<double>(n);
    if (settled || orbit == cplx{}) break;
  }
  return w;
}

double conjugacy_residual(const PowerSeries& f, const ConjugacyResult& result, double radius, std::size_t samples) {
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const cplx z = on_circle(radius, k, samples);
    const cplx lhs = evaluate(f, evaluate(result.phi, z));
    const cplx rhs = evaluate(result.phi, result.normal_form.apply(z));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double residual_test_radius(const ConjugacyResult& result) {
  const double base = result.delta / 4.0;
  if (result.normal_form.kind == NormalForm::Kind::Linear && std::abs(result.normal_form.lambda) > 1.0)
    return base / std::abs(result.normal_form.lambda);
  return base;
}

ConjugacyResult rescaled(const PowerSeries& f, const ConjugacyResult& result, cplx c) {
  require(c != cplx{}, "rescale factor must be non-zero");
  ConjugacyResult out = result;
  out.phi = result.phi.argument_scaled(c);
  out.phi_inverse = result.phi_inverse.scaled(1.0 / c);
  out.delta = result.delta / std::abs(c);
  out.scale = result.scale / c;
  out.residual = conjugacy_residual(f, out, residual_test_radius(out));
  return out;
}

UniquenessReport uniqueness_check(const ConjugacyResult& r1, const ConjugacyResult& r2) {
  const NormalForm& a = r1.normal_form;
  const NormalForm& b = r2.normal_form;
  const bool compatible =
      a.kind == b.kind && (a.kind == NormalForm::Kind::Linear
                               ? std::abs(a.lambda - b.lambda) <= 1e-12 * std::max(1.0, std::abs(a.lambda))
                               : a.degree == b.degree);
  if (!compatible) fail(ErrorKind::IncompatibleNormalForms, "conjugacies target different normal forms");

  const PowerSeries transition = compose(r2.phi_inverse, r1.phi);
  // Coefficients are compared on a disk where both maps are valid; raw
  // coefficients of truncated series grow geometrically past that scale.
  const double rho = std::min(r1.delta, r2.delta) / 4.0;
  UniquenessReport report;
  report.factor = transition[1];
  for (std::size_t j = 0; j <= transition.order(); ++j) {
    if (j == 1) continue;
    const double scaled = std::abs(transition[j]) * std::pow(rho, static_cast<double>(j) - 1.0);
    report.max_higher_coefficient = std::max(report.max_higher_coefficient, scaled);
  }
  if (report.max_higher_coefficient > 1e-8) {
    report.verdict = Uniqueness::Mismatch;
  } else if (a.kind == NormalForm::Kind::Linear) {
    report.verdict = Uniqueness::Constant;
  } else {
    const cplx p = std::pow(report.factor, static_cast<double>(a.degree - 1));
    report.verdict = std::abs(p - 1.0) <= 1e-8 ? Uniqueness::RootOfUnity : Uniqueness::Mismatch;
  }
  return report;
}

cplx newton_preimage(const PowerSeries& f, cplx target, cplx guess, int max_iterations) {
  cplx zeta = guess;
  for (int it = 0; it < max_iterations; ++it) {
    const auto [value, slope] = evaluate_with_derivative(f, zeta);
    if (slope == cplx{}) fail(ErrorKind::RootFindingDivergence, "vanishing derivative during Newton polish");
    const cplx step = (value - target) / slope;
    zeta -= step;
    if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()))
      fail(ErrorKind::RootFindingDivergence, "Newton iterate is not finite");
    if (std::abs(step) <= 1e-14 * std::abs(zeta)) {
      const auto [v2, s2] = evaluate_with_derivative(f, zeta);
      return zeta - (v2 - target) / s2;
    }
  }
  if (std::abs(evaluate(f, zeta) - target) <= 1e-12 * std::abs(target)) return zeta;
  fail(ErrorKind::RootFindingDivergence, "Newton polish did not converge");
}

CoveringLift::CoveringLift(const AnalyticGerm& germ, std::size_t order)
    : f_(germ.series), series_(PowerSeries::identity(1)), degree_(germ.leading_degree) {
  require_class(germ, FixedPointClass::Superattracting, "CoveringLift");
  require(germ.leading_coefficient() == cplx{1.0}, "covering lift needs a normalised germ (a_n = 1)");
  // h inverts z u(z)^{1/n}: f(h(w)) = h^n u(h) = w^n.
  const PowerSeries u = shift_down(f_, degree_).truncated(order);
  const PowerSeries root = power(u, 1.0 / static_cast<double>(degree_));
  std::vector<cplx> c(root.order() + 2);
  for (std::size_t j = 0; j <= root.order(); ++j) c[j + 1] = root[j];
  series_ = reverse(PowerSeries(std::move(c), f_.radius()));
}

cplx CoveringLift::operator()(cplx w) const {
  if (w == cplx{}) return 0.0;
  cplx target = 1.0;
  for (std::size_t i = 0; i < degree_; ++i) target *= w;
  return newton_preimage(f_, target, evaluate(series_, w));
}

cplx CoveringLift::unit_factor(cplx w) const { return w == cplx{} ? cplx{1.0} : (*this)(w) / w; }

}  // namespace holomotion
