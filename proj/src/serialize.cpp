#include "holomotion/serialize.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "holomotion/errors.hpp"

namespace holomotion {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::ParseError, what); }

double number_at(const Json& v, const std::string& field) {
  if (!v.is_number()) parse_fail(fmt::format("field {}: expected a number", field));
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(fmt::format("field {}: value is not finite", field));
  return x;
}

std::string_view kind_name(GlueKind kind) { return kind == GlueKind::Koenig ? "koenig" : "boettcher"; }

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json complex_list(const std::vector<cplx>& v) {
  Json out = Json::array();
  for (const cplx& z : v) out.push_back(to_json(z));
  return out;
}

}  // namespace

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const PowerSeries& f) {
  Json coeffs = Json::array();
  for (const cplx& a : f.coeffs()) coeffs.push_back(to_json(a));
  return Json{{"order", f.order()}, {"radius", f.radius()}, {"coeffs", std::move(coeffs)}};
}

PowerSeries series_from_json(const Json& doc) {
  if (!doc.is_object()) parse_fail("series document must be a JSON object");
  for (const char* key : {"order", "radius", "coeffs"})
    if (!doc.contains(key)) parse_fail(fmt::format("missing field {}", key));
  const Json& order = doc["order"];
  if (!order.is_number_integer() || order.get<long long>() < 0)
    parse_fail("field order: expected a non-negative integer");
  const double radius = number_at(doc["radius"], "radius");
  if (radius <= 0.0) parse_fail("field radius: must be positive");
  const Json& coeffs = doc["coeffs"];
  if (!coeffs.is_array()) parse_fail("field coeffs: expected an array of [re, im] pairs");
  const auto n = static_cast<std::size_t>(order.get<long long>());
  if (coeffs.size() != n + 1)
    parse_fail(fmt::format("field coeffs: expected order + 1 = {} entries, found {}", n + 1, coeffs.size()));
  std::vector<cplx> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const Json& pair = coeffs[j];
    const std::string field = fmt::format("coeffs[{}]", j);
    if (!pair.is_array() || pair.size() != 2) parse_fail(fmt::format("field {}: expected [re, im]", field));
    c[j] = cplx(number_at(pair[0], field + "[0]"), number_at(pair[1], field + "[1]"));
  }
  return PowerSeries(std::move(c), radius);
}

PowerSeries parse_series(std::string_view text, std::string_view source) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    parse_fail(fmt::format("{}:{}:{}: malformed JSON", source, line, column));
  }
  try {
    return series_from_json(doc);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    parse_fail(fmt::format("{}: {}", source, std::string(e.what()).substr(to_string(ErrorKind::ParseError).size() + 2)));
  }
}

PowerSeries read_series_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail(fmt::format("{}: cannot open file", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_series(text.str(), path.string());
}

Json to_json(const NormalForm& form) {
  if (form.kind == NormalForm::Kind::Linear) return Json{{"kind", "linear"}, {"lambda", to_json(form.lambda)}};
  return Json{{"kind", "power"}, {"degree", form.degree}};
}

Json to_json(const ConjugacyResult& result) {
  return Json{{"phi", to_json(result.phi)},
              {"phi_inverse", to_json(result.phi_inverse)},
              {"normal_form", to_json(result.normal_form)},
              {"delta", result.delta},
              {"residual", result.residual},
              {"scale", to_json(result.scale)}};
}

Json to_json(const ParamGrid& grid) {
  return Json{{"radius", grid.radius}, {"circles", numbers(grid.circle_radii)}, {"samples", grid.samples}};
}

Json to_json(const MotionSample& sample) {
  Json rings = Json::array();
  for (const Ring& ring : sample.rings)
    rings.push_back(Json{{"radius", ring.radius}, {"offset", ring.offset}, {"count", ring.count}});
  Json values = Json::array();
  const std::size_t e = sample.base_points.size();
  for (std::size_t ci = 0; ci < sample.grid.size(); ++ci)
    values.push_back(complex_list({sample.values.begin() + static_cast<long>(ci * e),
                                   sample.values.begin() + static_cast<long>((ci + 1) * e)}));
  Json out{{"points", complex_list(sample.base_points)},
           {"rings", std::move(rings)},
           {"grid", to_json(sample.grid)},
           {"params", complex_list(sample.grid.points())},
           {"values", std::move(values)}};
  if (sample.crossing_margin) out["crossing_margin"] = *sample.crossing_margin;
  if (sample.lower_bound_margin) out["lower_bound_margin"] = *sample.lower_bound_margin;
  return out;
}

Json to_json(const MotionReport& report) {
  return Json{{"identity_defect", report.identity_defect},
              {"min_separation", report.min_separation},
              {"holomorphy_defect", report.holomorphy_defect},
              {"holomorphy_tolerance", report.holomorphy_tolerance},
              {"worst_point", report.worst_point},
              {"identity_ok", report.identity_ok()},
              {"injective_ok", report.injective_ok()},
              {"holomorphic_ok", report.holomorphic_ok()},
              {"passes", report.passes()}};
}

Json to_json(const BeltramiEstimate& estimate) {
  return Json{{"nx", estimate.nx},
              {"ny", estimate.ny},
              {"k_sup", estimate.k_sup},
              {"K", estimate.K},
              {"evaluated", estimate.evaluated},
              {"degenerate", estimate.degenerate}};
}

Json summary_json(const GluedMap& glued) {
  const auto& d = glued.decomposition;
  Json pieces = Json::array();
  for (const auto& piece : glued.pieces)
    pieces.push_back(Json{{"index", piece.annulus.index},
                          {"inner", piece.annulus.inner},
                          {"outer", piece.annulus.outer},
                          {"k_sup", piece.beltrami.k_sup},
                          {"K", piece.beltrami.K},
                          {"degenerate", piece.beltrami.degenerate}});
  Json out{{"kind", kind_name(d.kind)},
           {"k", d.k},
           {"r", d.r},
           {"delta", d.delta},
           {"radii", numbers(d.radii())},
           {"pieces", std::move(pieces)},
           {"k_sup", glued.k_sup},
           {"K", glued.K},
           {"residual", glued.residual},
           {"continuity", glued.continuity}};
  if (d.kind == GlueKind::Koenig) out["lambda"] = to_json(d.lambda);
  else {
    out["degree"] = d.degree;
    out["windings"] = glued.windings;
  }
  return out;
}

Json to_json(const ConvergenceReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows)
    rows.push_back(Json{{"k", row.k},
                        {"r", row.r},
                        {"K", row.K},
                        {"K_minus_1", row.K - 1.0},
                        {"bound", kConvergenceConstant * row.r},
                        {"k_sup", row.k_sup},
                        {"residual", row.residual},
                        {"continuity", row.continuity},
                        {"pieces", row.pieces},
                        {"monotone", row.monotone},
                        {"within_bound", row.within_bound}});
  Json out{{"kind", kind_name(report.kind)},
           {"delta", report.delta},
           {"rows", std::move(rows)},
           {"monotone", report.monotone()},
           {"within_bound", report.within_bound()}};
  if (report.overlap_error) out["overlap_error"] = *report.overlap_error;
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace holomotion
