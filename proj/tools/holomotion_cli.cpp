// holomotion: normal-form conjugacies and holomorphic-motion experiments for
// fixed points of analytic germs read from series JSON files.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "holomotion/errors.hpp"
#include "holomotion/gluing.hpp"
#include "holomotion/motions.hpp"
#include "holomotion/normal_forms.hpp"
#include "holomotion/render.hpp"
#include "holomotion/serialize.hpp"

namespace fs = std::filesystem;
using namespace holomotion;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedClass:
      return 2;
    case ErrorKind::NonCrossingViolated:
      return 3;
    case ErrorKind::RadiusUnderflow:
    case ErrorKind::NoValidRadius:
    case ErrorKind::BranchAmbiguity:
    case ErrorKind::BranchBreakdown:
    case ErrorKind::NotInjectiveOnMesh:
    case ErrorKind::RootFindingDivergence:
    case ErrorKind::DivergentCoefficients:
    case ErrorKind::InsufficientSampling:
    case ErrorKind::BoundaryMismatch:
      return 4;
    default:
      return 1;
  }
}

std::string hint(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BranchAmbiguity:
      return "hint: the lift continuation step is too coarse; increase --mesh";
    case ErrorKind::NonCrossingViolated:
      return "hint: the boundary images cross; reduce --r or --delta";
    default:
      return {};
  }
}

// Output directory plus the list of files written, recorded in manifest.json.
class Output {
 public:
  Output(std::string command, std::string dir) : command_(std::move(command)), dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }

  bool enabled() const { return !dir_.empty(); }
  Json& parameters() { return parameters_; }

  fs::path path(const std::string& name) {
    files_.push_back(name);
    return fs::path(dir_) / name;
  }

  void write_text(const std::string& name, const std::string& text) {
    if (!enabled()) return;
    std::ofstream out(path(name), std::ios::binary);
    out << text;
  }

  void finish() {
    if (!enabled()) return;
    Json manifest{{"command", command_}, {"parameters", parameters_}, {"files", files_}};
    std::ofstream out(fs::path(dir_) / "manifest.json", std::ios::binary);
    out << dump(manifest);
  }

 private:
  std::string command_;
  std::string dir_;
  Json parameters_ = Json::object();
  std::vector<std::string> files_;
};

AnalyticGerm load_germ(const std::string& file) { return classify(read_series_file(file)); }

void require_supported(const AnalyticGerm& germ) {
  if (germ.kind == FixedPointClass::Unsupported)
    fail(ErrorKind::UnsupportedClass, "fixed point is neither attracting, repelling nor superattracting");
}

// Attracting germ carrying the same linearizer as a repelling one.
AnalyticGerm attracting_form(const AnalyticGerm& germ) {
  if (germ.kind != FixedPointClass::Repelling) return germ;
  return classify(reverse(germ.series.truncated(std::max(germ.series.order(), kDefaultOrder))));
}

ConjugacyResult series_conjugacy(const AnalyticGerm& germ, std::size_t order) {
  return germ.kind == FixedPointClass::Superattracting ? boettcher_series(germ, order) : koenig_series(germ, order);
}

// Deterministic probe points filling the disk |z| <= radius.
std::vector<cplx> probe_points(double radius, std::size_t count) {
  std::vector<cplx> out;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(count);
    out.push_back(std::polar(radius * std::sqrt(t), golden * static_cast<double>(k)));
  }
  return out;
}

cplx iterative_inverse(const AnalyticGerm& germ, cplx z) {
  if (germ.kind == FixedPointClass::Superattracting) return boettcher_iterative(germ, z, 8);
  return koenig_iterative(attracting_form(germ), z, 400);
}

int run_classify(const std::string& file, Output& out) {
  const auto germ = load_germ(file);
  Json report{{"class", std::string(to_string(germ.kind))}};
  out.parameters()["germ"] = file;
  switch (germ.kind) {
    case FixedPointClass::Attracting:
      report["lambda"] = to_json(germ.multiplier);
      report["delta"] = domain_radius(germ);
      break;
    case FixedPointClass::Repelling:
      report["lambda"] = to_json(germ.multiplier);
      report["delta"] = domain_radius(attracting_form(germ));
      break;
    case FixedPointClass::Superattracting: {
      report["degree"] = germ.leading_degree;
      report["leading_coefficient"] = to_json(germ.leading_coefficient());
      const auto radii = boettcher_radius(germ);
      report["delta1"] = radii.delta1;
      report["delta"] = radii.delta;
      break;
    }
    case FixedPointClass::Unsupported:
      break;
  }
  std::cout << dump(report);
  out.write_text("classify.json", dump(report));
  out.finish();
  return germ.kind == FixedPointClass::Unsupported ? 2 : 0;
}

int run_conjugate(const std::string& file, std::size_t order, const std::string& method, Output& out) {
  const auto germ = load_germ(file);
  require_supported(germ);
  out.parameters() = Json{{"germ", file}, {"order", order}, {"method", method}};
  Json report = Json::object();
  std::optional<ConjugacyResult> result;
  if (method != "iterative") {
    result = series_conjugacy(germ, order);
    report = to_json(*result);
  }
  if (method != "series") {
    const double delta = germ.kind == FixedPointClass::Superattracting ? boettcher_radius(germ).delta
                                                                       : domain_radius(attracting_form(germ));
    Json samples = Json::array();
    double discrepancy = 0.0;
    for (const cplx z : probe_points(delta / 8.0, 20)) {
      const cplx psi = iterative_inverse(germ, z);
      samples.push_back(Json{{"z", to_json(z)}, {"phi_inverse", to_json(psi)}});
      if (result) discrepancy = std::max(discrepancy, std::abs(psi - evaluate(result->phi_inverse, z)));
    }
    report["iterative"] = Json{{"delta", delta}, {"samples", std::move(samples)}};
    if (result) report["cross_oracle_discrepancy"] = discrepancy;
  }
  std::cout << dump(report);
  out.write_text("conjugacy.json", dump(report));
  out.finish();
  return 0;
}

struct MotionFlags {
  std::optional<double> r;
  std::optional<double> delta;
  std::size_t points = 128;
  std::size_t circles = 4;
  std::size_t samples = 128;
};

int run_motion(const std::string& file, const MotionFlags& flags, Output& out) {
  const auto loaded = load_germ(file);
  require_supported(loaded);
  Json report = Json::object();
  MotionSample sample;
  double r = 0.0, delta = 0.0, disk = 1.0;
  const auto circles = [&](double radius) {
    std::vector<double> radii;
    for (std::size_t i = 1; i <= flags.circles; ++i)
      radii.push_back(radius * static_cast<double>(i) / static_cast<double>(flags.circles + 1));
    return ParamGrid::circles(radius, radii, flags.samples);
  };
  if (loaded.kind == FixedPointClass::Superattracting) {
    const auto normalized = normalize_leading(loaded);
    const auto& germ = normalized.germ;
    delta = flags.delta ? *flags.delta : boettcher_radius(germ).delta;
    r = flags.r ? *flags.r : delta * delta;
    disk = std::pow(delta, 1.0 / static_cast<double>(germ.leading_degree));
    report["construction"] = "boettcher";
    report["scale"] = to_json(normalized.scale);
    sample = build_boettcher_motion(germ, r, delta, circles(disk), flags.points);
    report["lower_bound_margin"] = *sample.lower_bound_margin;
  } else {
    const auto germ = attracting_form(loaded);
    delta = flags.delta ? *flags.delta : domain_radius(germ);
    r = flags.r ? *flags.r : delta / 2.0;
    report["construction"] = "koenig";
    report["reduced_to_inverse"] = loaded.kind == FixedPointClass::Repelling;
    sample = build_koenig_motion(germ, r, delta, circles(1.0), flags.points);
  }
  out.parameters() = Json{{"germ", file},         {"r", r},
                          {"delta", delta},       {"mesh", flags.points},
                          {"param_circles", flags.circles}, {"param_samples", flags.samples}};
  report["r"] = r;
  report["delta"] = delta;
  report["param_radius"] = disk;
  report["crossing_margin"] = *sample.crossing_margin;
  const auto verdict = verify_motion(sample);
  report["axioms"] = to_json(verdict);
  std::cout << dump(report);
  out.write_text("motion_report.json", dump(report));
  out.write_text("motion.json", dump(to_json(sample)));
  out.finish();
  return verdict.passes() ? 0 : 4;
}

struct GlueFlags {
  std::vector<std::size_t> k_list{1, 2, 3};
  std::size_t mesh = 128;
  std::optional<double> delta;
  std::size_t order = kDefaultOrder;
};

int run_glue(const std::string& file, const GlueFlags& flags, Output& out) {
  const auto loaded = load_germ(file);
  require_supported(loaded);
  GlueOptions options;
  options.mesh = flags.mesh;
  GlueKind kind = GlueKind::Koenig;
  AnalyticGerm germ = attracting_form(loaded);
  if (loaded.kind == FixedPointClass::Superattracting) {
    kind = GlueKind::Boettcher;
    germ = normalize_leading(loaded).germ;
  }
  GluedMap largest;
  const auto report = convergence_report(germ, kind, flags.k_list, options, flags.delta, flags.order, &largest);
  out.parameters() = Json{{"germ", file},
                          {"k_list", flags.k_list},
                          {"mesh", flags.mesh},
                          {"delta", report.delta},
                          {"order", flags.order}};
  for (const auto& row : report.rows) std::cout << fmt::format("k={} r_k={:.6g} K={:.10g}\n", row.k, row.r, row.K);
  std::cout << fmt::format("monotone={} within_bound={} overlap_error={:.3g}\n", report.monotone(),
                           report.within_bound(), report.overlap_error.value_or(0.0));
  if (out.enabled()) {
    {
      std::ofstream csv(out.path("convergence.csv"), std::ios::binary);
      write_csv(csv, report);
    }
    out.write_text("convergence.json", dump(to_json(report)));
    out.write_text("glued_summary.json", dump(summary_json(largest)));
    for (const auto& piece : largest.pieces) {
      std::ofstream csv(out.path(fmt::format("piece_{}.csv", piece.annulus.index)), std::ios::binary);
      write_csv(csv, piece.grid, &piece.beltrami);
    }
  }
  out.finish();
  return 0;
}

int run_render(const std::string& file, std::size_t grid, int bands, std::size_t order, Output& out) {
  const auto germ = load_germ(file);
  require_supported(germ);
  const auto result = series_conjugacy(germ, order);
  const auto image = render_equipotentials(result, grid, bands);
  out.parameters() = Json{{"germ", file}, {"grid", grid}, {"bands", bands}, {"order", order}, {"delta", result.delta}};
  if (out.enabled()) write_pgm(out.path("equipotential.pgm"), image);
  std::cout << fmt::format("rendered {}x{} over |z| <= {:.6g}\n", grid, grid, result.delta);
  out.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal-form conjugacies and holomorphic-motion experiments for analytic germs"};
  app.require_subcommand(1);

  std::string germ_file, out_dir;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("germ", germ_file, "series JSON file")->required();
    cmd->add_option("--out", out_dir, "output directory (manifest.json lists the files written)");
  };

  auto* classify_cmd = app.add_subcommand("classify", "classify the fixed point at 0");
  add_common(classify_cmd);

  std::size_t order = kDefaultOrder;
  std::string method = "series";
  auto* conjugate_cmd = app.add_subcommand("conjugate", "compute the König or Böttcher conjugacy");
  add_common(conjugate_cmd);
  conjugate_cmd->add_option("--order", order, "truncation order")->check(CLI::Range(1, 200));
  conjugate_cmd->add_option("--method", method, "series, iterative or both")
      ->check(CLI::IsMember({"series", "iterative", "both"}));

  MotionFlags motion_flags;
  auto* motion_cmd = app.add_subcommand("motion", "build and verify the boundary holomorphic motion");
  add_common(motion_cmd);
  motion_cmd->add_option("--r", motion_flags.r, "inner radius r")->check(CLI::PositiveNumber);
  motion_cmd->add_option("--delta", motion_flags.delta, "override the validity radius")->check(CLI::PositiveNumber);
  motion_cmd->add_option("--mesh", motion_flags.points, "points per boundary circle")->check(CLI::Range(128, 1 << 16));
  motion_cmd->add_option("--param-circles", motion_flags.circles, "number of parameter circles")
      ->check(CLI::Range(1, 64));
  motion_cmd->add_option("--param-samples", motion_flags.samples, "samples per parameter circle")
      ->check(CLI::Range(64, 1 << 14));

  GlueFlags glue_flags;
  auto* glue_cmd = app.add_subcommand("glue", "glue annulus pieces and report dilatation convergence");
  add_common(glue_cmd);
  glue_cmd->add_option("--k-list", glue_flags.k_list, "comma-separated k values")->delimiter(',')->check(
      CLI::PositiveNumber);
  glue_cmd->add_option("--mesh", glue_flags.mesh, "nodes per annulus direction")->check(CLI::Range(64, 4096));
  glue_cmd->add_option("--delta", glue_flags.delta, "outer radius of the glued disk")->check(CLI::PositiveNumber);
  glue_cmd->add_option("--order", glue_flags.order, "series order for the overlap comparison")
      ->check(CLI::Range(1, 200));

  std::size_t grid = 512;
  int bands = 8;
  auto* render_cmd = app.add_subcommand("render", "render level sets of the normal-form coordinate");
  add_common(render_cmd);
  render_cmd->add_option("--grid", grid, "image size in pixels")->check(CLI::Range(1, 1 << 14));
  render_cmd->add_option("--bands", bands, "level-set bands across the disk")->check(CLI::Range(1, 1000));
  render_cmd->add_option("--order", order, "truncation order")->check(CLI::Range(1, 200));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Output out(command, out_dir);
    if (command == "classify") return run_classify(germ_file, out);
    if (command == "conjugate") return run_conjugate(germ_file, order, method, out);
    if (command == "motion") return run_motion(germ_file, motion_flags, out);
    if (command == "glue") return run_glue(germ_file, glue_flags, out);
    return run_render(germ_file, grid, bands, order, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (const auto h = hint(e.kind()); !h.empty()) std::cerr << h << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
