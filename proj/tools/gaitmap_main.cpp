#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaitmap/attitude_map.hpp"
#include "gaitmap/decoupling.hpp"
#include "gaitmap/gait.hpp"
#include "gaitmap/io.hpp"
#include "gaitmap/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gaitmap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct RangeFlag {
  double lo = -1.5, hi = 1.5;
};

RangeFlag parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("range", "expected <lo>:<hi>, got \"" + text + "\"");
  RangeFlag r;
  try {
    r.lo = std::stod(text.substr(0, colon));
    r.hi = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected numbers in \"" + text + "\"");
  }
  return r;
}

std::string gait_stem(const std::string& uri, const GaitProgram& g) {
  if (!g.name.empty()) return g.name;
  const fs::path p(uri);
  std::string stem = p.stem().string();
  if (stem.empty()) stem = "gait";
  return stem;
}

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string full_gait_csv(const std::vector<FullGaitSample>& samples) {
  std::string out = "t,a1,a2,a3,a4\n";
  for (const FullGaitSample& s : samples) {
    out += format_sig9(s.t);
    out += ',';
    out += format_sig9(s.a1);
    out += ',';
    out += format_sig9(s.a2);
    out += ',';
    out += format_sig9(s.a3);
    out += ',';
    out += format_sig9(s.a4);
    out += '\n';
  }
  return out;
}

std::vector<FullGaitSample> parse_full_gait_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "t,a1,a2,a3,a4")
    throw ParseError("full-gait CSV must start with header t,a1,a2,a3,a4");
  std::vector<FullGaitSample> samples;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    FullGaitSample s;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &s.t, &s.a1, &s.a2, &s.a3, &s.a4) != 5)
      throw ParseError("bad CSV row at line " + std::to_string(lineno));
    samples.push_back(s);
  }
  return samples;
}

void print_report_human(const std::string& label, const ValidationReport& report) {
  std::cout << label << ": " << (report.valid() ? "Valid" : "Invalid") << "\n";
  if (report.switch_count > 0)
    std::cout << "  switches: " << report.switch_count << "/period\n";
  if (std::isfinite(report.min_abs_R_red))
    std::cout << "  min |R| while red: " << report.min_abs_R_red << "\n";
  for (const Violation& v : report.violations)
    std::cout << "  violation " << to_string(v.code) << " at t=" << v.t << ": " << v.detail
              << "\n";
  for (const std::string& w : report.warnings) std::cout << "  warning: " << w << "\n";
}

json report_to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations)
    violations.push_back(json{{"code", to_string(v.code)}, {"t", v.t}, {"detail", v.detail}});
  json j{{"verdict", report.valid() ? "valid" : "invalid"},
         {"malformed", report.malformed},
         {"switches", report.switch_count},
         {"violations", std::move(violations)},
         {"warnings", report.warnings}};
  if (std::isfinite(report.min_abs_R_red)) j["min_abs_R_red"] = report.min_abs_R_red;
  return j;
}

struct ModelChoice {
  DeterminantModel model;
  std::string description;
};

// --model flag, then GAITMAP_MODEL, then a fresh calibration run.
ModelChoice resolve_model(const std::string& model_flag) {
  std::string path = model_flag;
  if (path.empty()) {
    if (const char* env = std::getenv("GAITMAP_MODEL")) path = env;
  }
  if (!path.empty()) {
    ModelChoice mc;
    mc.model = load_model(path);
    mc.description = "file " + path + " (" + to_string(mc.model.mode) + ")";
    return mc;
  }
  const CalibrationResult cal = calibrate_mixing(canonical_hover_table());
  ModelChoice mc;
  if (cal.accepted) {
    mc.model = cal.model;
    std::ostringstream ss;
    ss << "calibrated (residual " << cal.calibration.residual << ", kappa "
       << cal.calibration.kappa << ")";
    mc.description = ss.str();
  } else if (cal.first_order_model) {
    mc.model = *cal.first_order_model;
    mc.description = "first-order fallback (calibration residual too large)";
  } else {
    mc.model = cal.model;
    mc.description = "hover-only fallback";
  }
  return mc;
}

std::string min_distance_str(double d) {
  if (std::isinf(d)) return "inf";
  std::ostringstream ss;
  ss << d;
  return ss.str();
}

int cmd_validate(const std::string& gait_uri, bool classic, bool as_json, double tol) {
  const GaitProgram g = load_gait(gait_uri);
  ValidatorConfig cfg;
  cfg.boundary_tol = tol;
  const ValidationReport report = validate_generalized(g, cfg);
  std::optional<ValidationReport> classic_report;
  if (classic) classic_report = validate_axis_motion(g);

  if (as_json) {
    json j{{"gait", gait_stem(gait_uri, g)}, {"generalized", report_to_json(report)}};
    if (classic_report) j["axis_motion"] = report_to_json(*classic_report);
    std::cout << j.dump(2) << "\n";
  } else {
    print_report_human("generalized", report);
    if (classic_report) print_report_human("axis-motion (classic)", *classic_report);
  }
  const bool malformed =
      report.malformed || (classic_report && classic_report->malformed);
  if (malformed) return kExitIo;
  const bool ok = report.valid() && (!classic_report || classic_report->valid());
  return ok ? kExitOk : kExitInvalid;
}

int cmd_complete(const std::string& gait_uri, const std::string& out_dir, bool to_stdout) {
  const GaitProgram g = load_gait(gait_uri);
  const std::vector<FullGaitSample> full = complete_gait(g);
  const std::string csv = full_gait_csv(full);
  if (to_stdout) {
    std::cout << csv;
    return kExitOk;
  }
  const fs::path out = fs::path(out_dir) / (gait_stem(gait_uri, g) + "_full.csv");
  write_text_file(out.string(), csv);
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

int cmd_bias(const std::string& input, double eta, const std::string& out_dir, bool to_stdout) {
  const std::string text = input == "-"
                               ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                               : read_text_file(input);
  const std::vector<FullGaitSample> biased = bias_gait(parse_full_gait_csv(text), eta);
  const std::string csv = full_gait_csv(biased);
  if (to_stdout || input == "-") {
    std::cout << csv;
    return kExitOk;
  }
  const fs::path in_path(input);
  const fs::path out = fs::path(out_dir) / (in_path.stem().string() + "_biased.csv");
  write_text_file(out.string(), csv);
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

json report_summary_json(const RobustnessReport& report, const ContourSet& contours) {
  return json{{"contours", contours.polylines.size()},
              {"min_distance", std::isinf(report.min_distance)
                                   ? json("inf")
                                   : json(report.min_distance)},
              {"acceptable_fraction", report.acceptable_fraction}};
}

int cmd_map(const std::string& gait_uri, double bias_eta, const RangeFlag& phi,
            const RangeFlag& theta, int grid_res, int phases, const std::string& model_flag,
            const std::string& out_dir, bool as_json) {
  const GaitProgram g = load_gait(gait_uri);
  const ModelChoice mc = resolve_model(model_flag);
  AttitudeGrid grid;
  grid.phi_min = phi.lo;
  grid.phi_max = phi.hi;
  grid.theta_min = theta.lo;
  grid.theta_max = theta.hi;
  grid.resolution = grid_res;

  const GaitMapResult result = map_for_gait(g, mc.model, grid, phases);
  const std::string stem = gait_stem(gait_uri, g);
  const fs::path dir(out_dir);

  auto open_out = [](const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ParseError("cannot open \"" + p.string() + "\" for writing");
    return f;
  };
  {
    std::ofstream f = open_out(dir / (stem + "_field.csv"));
    write_field_csv(f, result.first_phase_field);
  }
  {
    std::ofstream f = open_out(dir / (stem + "_contours.csv"));
    write_contour_csv(f, result.contours);
  }

  std::vector<PlotLayer> layers;
  PlotLayer main_layer;
  main_layer.polylines = result.contours.polylines;
  main_layer.color = "#c03030";
  layers.push_back(std::move(main_layer));

  std::optional<GaitMapResult> biased_result;
  if (bias_eta > 0.0) {
    const std::vector<FullGaitSample> full = bias_gait(complete_gait(g), bias_eta);
    biased_result = map_for_completed(full, g.periodic, g.period, mc.model, grid, phases);
  }

  if (biased_result) {
    std::ofstream f = open_out(dir / (stem + "_biased_contours.csv"));
    write_contour_csv(f, biased_result->contours);
    PlotLayer biased_layer;
    biased_layer.polylines = biased_result->contours.polylines;
    biased_layer.color = "#3050c0";
    biased_layer.dashed = true;
    layers.push_back(std::move(biased_layer));
  }

  const std::string svg =
      render_map_svg("unacceptable attitudes: " + stem, grid, layers);
  write_text_file((dir / (stem + "_map.svg")).string(), svg);

  if (as_json) {
    json j{{"gait", stem},
           {"model", mc.description},
           {"map", report_summary_json(result.report, result.contours)}};
    if (biased_result) {
      j["biased_map"] = report_summary_json(biased_result->report, biased_result->contours);
      j["biased_eta"] = bias_eta;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "model: " << mc.description << "\n";
    std::cout << "contours: " << result.contours.polylines.size()
              << ", min_distance: " << min_distance_str(result.report.min_distance)
              << ", acceptable_fraction: " << result.report.acceptable_fraction << "\n";
    if (biased_result) {
      std::cout << "biased contours: " << biased_result->contours.polylines.size()
                << ", min_distance: " << min_distance_str(biased_result->report.min_distance)
                << ", acceptable_fraction: " << biased_result->report.acceptable_fraction
                << "\n";
      const RobustnessOrdering order =
          compare_robustness(result.report, biased_result->report);
      std::string verdict = "indeterminate";
      if (order == RobustnessOrdering::FirstMoreRobust) verdict = "gait more robust";
      if (order == RobustnessOrdering::SecondMoreRobust) verdict = "biased more robust";
      std::cout << "comparison: " << verdict << "\n";
    }
  }
  return kExitOk;
}

int cmd_plane(const std::vector<std::string>& gait_uris, int grid_res,
              const std::string& out_dir) {
  std::vector<GaitProgram> gaits;
  for (const std::string& uri : gait_uris) gaits.push_back(load_gait(uri));
  const std::string svg = render_plane_svg(gaits, grid_res);
  const fs::path out = fs::path(out_dir) / "plane.svg";
  write_text_file(out.string(), svg);
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

int cmd_calibrate(const std::string& out_dir, bool as_json, std::optional<double> fixed_kappa) {
  CalibrationConfig cfg;
  cfg.fixed_kappa = fixed_kappa;
  const CalibrationResult cal = calibrate_mixing(canonical_hover_table(), cfg);
  const fs::path out = fs::path(out_dir) / "gaitmap_model.json";
  const DeterminantModel& model_to_write =
      cal.accepted ? cal.model : (cal.first_order_model ? *cal.first_order_model : cal.model);
  save_model(out.string(), model_to_write);

  auto signs_str = [](const std::array<int, 4>& s) {
    std::string out_s;
    for (int v : s) out_s += v > 0 ? '+' : '-';
    return out_s;
  };
  if (as_json) {
    json j{{"accepted", cal.accepted},
           {"residual", cal.calibration.residual},
           {"kappa", cal.calibration.kappa},
           {"scale", cal.calibration.global_scale},
           {"tilt_signs", signs_str(cal.calibration.signs.tilt)},
           {"spin_signs", signs_str(cal.calibration.signs.spin)},
           {"model_file", out.string()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "calibration " << (cal.accepted ? "accepted" : "FAILED") << "\n";
    std::cout << "  residual: " << cal.calibration.residual << "\n";
    std::cout << "  kappa: " << cal.calibration.kappa
              << ", scale: " << cal.calibration.global_scale << "\n";
    std::cout << "  tilt signs: " << signs_str(cal.calibration.signs.tilt)
              << ", spin signs: " << signs_str(cal.calibration.signs.spin) << "\n";
    if (!cal.accepted)
      std::cout << "  falling back to " << to_string(model_to_write.mode) << " model\n";
    std::cout << "  wrote " << out.string() << "\n";
  }
  return cal.accepted ? kExitOk : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaitmap: robust gait planning and attitude maps for a tilt-rotor"};
  app.require_subcommand(1);

  std::string gait_uri, input, model_flag, out_dir = ".";
  std::string phi_range = "-1.5:1.5", theta_range = "-1.5:1.5";
  std::vector<std::string> plane_gaits;
  bool classic = false, as_json = false, to_stdout = false;
  double tol = kBoundaryTol, eta = 0.8, bias_eta = 0.0;
  int grid_res = 601, phases = 64;
  double fixed_kappa = -1.0;

  CLI::App* validate = app.add_subcommand("validate", "check a gait against the theorem");
  validate->add_option("gait", gait_uri, "gait file or presets://name")->required();
  validate->add_flag("--classic", classic, "also check the axis-motion constraint");
  validate->add_flag("--json", as_json, "machine-readable output");
  validate->add_option("--tol", tol, "boundary tolerance");

  CLI::App* complete_cmd = app.add_subcommand("complete", "complete a gait into four angles");
  complete_cmd->add_option("gait", gait_uri, "gait file or presets://name")->required();
  complete_cmd->add_option("--out", out_dir, "output directory");
  complete_cmd->add_flag("--stdout", to_stdout, "print CSV to stdout");

  CLI::App* bias_cmd = app.add_subcommand("bias", "scale a3,a4 of a completed gait CSV");
  bias_cmd->add_option("input", input, "full-gait CSV path or - for stdin")->required();
  bias_cmd->add_option("--eta", eta, "scaling coefficient")->required();
  bias_cmd->add_option("--out", out_dir, "output directory");
  bias_cmd->add_flag("--stdout", to_stdout, "print CSV to stdout");

  CLI::App* map_cmd = app.add_subcommand("map", "unacceptable-attitude map for a gait");
  map_cmd->add_option("gait", gait_uri, "gait file or presets://name")->required();
  map_cmd->add_option("--bias", bias_eta, "overlay the biased gait's contours");
  map_cmd->add_option("--grid-res", grid_res, "grid resolution per axis");
  map_cmd->add_option("--phi", phi_range, "phi window lo:hi");
  map_cmd->add_option("--theta", theta_range, "theta window lo:hi");
  map_cmd->add_option("--phases", phases, "time samples per period");
  map_cmd->add_option("--model", model_flag, "coefficient model file");
  map_cmd->add_option("--out", out_dir, "output directory");
  map_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* plane_cmd = app.add_subcommand("plane", "planning-plane SVG");
  plane_cmd->add_option("--gait", plane_gaits, "gait traces to overlay");
  plane_cmd->add_option("--grid-res", grid_res, "boundary-curve resolution")
      ->default_val(401);
  plane_cmd->add_option("--out", out_dir, "output directory");

  CLI::App* calibrate_cmd = app.add_subcommand("calibrate", "fit the mixing model");
  calibrate_cmd->add_option("--out", out_dir, "output directory");
  calibrate_cmd->add_flag("--json", as_json, "machine-readable output");
  calibrate_cmd->add_option("--kappa", fixed_kappa, "pin kappa instead of searching");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(gait_uri, classic, as_json, tol);
    if (complete_cmd->parsed()) return cmd_complete(gait_uri, out_dir, to_stdout);
    if (bias_cmd->parsed()) return cmd_bias(input, eta, out_dir, to_stdout);
    if (map_cmd->parsed())
      return cmd_map(gait_uri, bias_eta, parse_range(phi_range), parse_range(theta_range),
                     grid_res, phases, model_flag, out_dir, as_json);
    if (plane_cmd->parsed()) return cmd_plane(plane_gaits, grid_res, out_dir);
    if (calibrate_cmd->parsed())
      return cmd_calibrate(out_dir, as_json,
                           fixed_kappa >= 0.0 ? std::optional<double>(fixed_kappa)
                                              : std::nullopt);
  } catch (const InvalidGait& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const Violation& v : e.report().violations)
      std::cerr << "  violation " << to_string(v.code) << " at t=" << v.t << ": " << v.detail
                << "\n";
    return e.report().malformed ? kExitIo : kExitInvalid;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
