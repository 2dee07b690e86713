#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "holomotion/gluing.hpp"
#include "holomotion/motions.hpp"
#include "holomotion/normal_forms.hpp"
#include "holomotion/series.hpp"

namespace holomotion {

using Json = nlohmann::ordered_json;

/// {"order": N, "radius": ρ, "coeffs": [[re, im], ...]}
Json to_json(const PowerSeries& f);
/// Throws ParseError naming the offending field.
PowerSeries series_from_json(const Json& doc);
/// Reads a series file; syntax errors report line and column.
PowerSeries read_series_file(const std::filesystem::path& path);
/// Parses series text; `source` labels diagnostics.
PowerSeries parse_series(std::string_view text, std::string_view source = "<input>");

Json to_json(cplx z);
Json to_json(const NormalForm& form);
Json to_json(const ConjugacyResult& result);
Json to_json(const ParamGrid& grid);
Json to_json(const MotionSample& sample);
Json to_json(const MotionReport& report);
Json to_json(const BeltramiEstimate& estimate);
/// Radii, K per piece, residual and continuity; no mesh values.
Json summary_json(const GluedMap& glued);
Json to_json(const ConvergenceReport& report);

/// Two-space indented text with a trailing newline; doubles round-trip exactly.
std::string dump(const Json& doc);

}  // namespace holomotion
