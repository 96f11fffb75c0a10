#include <cmath>

#include "gaitmap/gait.hpp"

namespace gaitmap {

const char* to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::EmptyGait: return "EmptyGait";
    case ViolationCode::NonIncreasingTime: return "NonIncreasingTime";
    case ViolationCode::FirstSampleTimeNonzero: return "FirstSampleTimeNonzero";
    case ViolationCode::BadPeriod: return "BadPeriod";
    case ViolationCode::NonFiniteTime: return "NonFiniteTime";
    case ViolationCode::RedStartedOnBoundary: return "RedStartedOnBoundary";
    case ViolationCode::RedEscapedRegion: return "RedEscapedRegion";
    case ViolationCode::SwitchAwayFromP: return "SwitchAwayFromP";
    case ViolationCode::StepBoundExceeded: return "StepBoundExceeded";
    case ViolationCode::DiagonalStep: return "DiagonalStep";
    case ViolationCode::ZeroVelocity: return "ZeroVelocity";
  }
  return "Unknown";
}

bool is_malformed_code(ViolationCode code) {
  switch (code) {
    case ViolationCode::EmptyGait:
    case ViolationCode::NonIncreasingTime:
    case ViolationCode::FirstSampleTimeNonzero:
    case ViolationCode::BadPeriod:
    case ViolationCode::NonFiniteTime:
      return true;
    default:
      return false;
  }
}

namespace {

void add(ValidationReport& report, ViolationCode code, double t, std::string detail) {
  report.violations.push_back(Violation{code, t, std::move(detail)});
  report.verdict = Verdict::Invalid;
  if (is_malformed_code(code)) report.malformed = true;
}

// Structural problems are reported separately from theorem violations; a
// malformed program is not scanned further.
bool check_structure(const GaitProgram& g, ValidationReport& report) {
  if (g.samples.empty()) {
    add(report, ViolationCode::EmptyGait, 0.0, "gait has no samples");
    return false;
  }
  if (!std::isfinite(g.samples.front().t) || g.samples.front().t != 0.0)
    add(report, ViolationCode::FirstSampleTimeNonzero, g.samples.front().t,
        "first sample must be at t = 0");
  for (std::size_t i = 0; i < g.samples.size(); ++i) {
    if (!std::isfinite(g.samples[i].t)) {
      add(report, ViolationCode::NonFiniteTime, 0.0,
          "sample " + std::to_string(i) + " has non-finite time");
      return false;
    }
    if (i > 0 && !(g.samples[i].t > g.samples[i - 1].t))
      add(report, ViolationCode::NonIncreasingTime, g.samples[i].t,
          "sample " + std::to_string(i) + " does not advance time");
  }
  if (g.periodic && !(std::isfinite(g.period) && g.period > g.samples.back().t))
    add(report, ViolationCode::BadPeriod, g.period,
        "periodic gait needs period > last sample time");
  return !report.malformed;
}

double step_norm(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(b.a1 - a.a1, b.a2 - a.a2);
}

}  // namespace

ValidationReport validate_generalized(const GaitProgram& g, const ValidatorConfig& cfg) {
  ValidationReport report;
  if (!check_structure(g, report)) return report;

  const auto& samples = g.samples;
  const Color color = samples.front().color;
  RegionLabel regime = classify_region(samples.front().point, cfg.boundary_tol);
  if (color == Color::Red) {
    report.min_abs_R_red = std::fabs(eval_R(samples.front().point));
    if (regime == RegionLabel::OnBoundary)
      add(report, ViolationCode::RedStartedOnBoundary, samples.front().t,
          "red gait may not start on the boundary curve");
  }

  auto scan_pair = [&](const ColoredSample& prev, const ColoredSample& cur, bool wrap) {
    const double where = wrap ? prev.t : cur.t;
    const double jump = step_norm(prev.point, cur.point);
    if (jump > g.step_bound)
      add(report, ViolationCode::StepBoundExceeded, where,
          "step of " + std::to_string(jump) + " rad exceeds bound " +
              std::to_string(g.step_bound));
    if (cur.color != prev.color) {
      ++report.switch_count;
      if (!(is_switch_point(prev.point, cfg.switch_eps) &&
            is_switch_point(cur.point, cfg.switch_eps)))
        add(report, ViolationCode::SwitchAwayFromP, where,
            "color may change only at the switch point");
      if (cur.color == Color::Red)
        regime = classify_region(cur.point, cfg.boundary_tol);
    }
    if (cur.color == Color::Red) {
      const RegionLabel label = classify_region(cur.point, cfg.boundary_tol);
      report.min_abs_R_red = std::min(report.min_abs_R_red, std::fabs(eval_R(cur.point)));
      if (label != regime || label == RegionLabel::OnBoundary)
        add(report, ViolationCode::RedEscapedRegion, where,
            std::string("red sample left its subspace (now ") + to_string(label) + ")");
    }
  };

  for (std::size_t i = 1; i < samples.size(); ++i) scan_pair(samples[i - 1], samples[i], false);
  if (g.periodic && samples.size() > 1) scan_pair(samples.back(), samples.front(), true);

  if (std::isfinite(report.min_abs_R_red) && report.min_abs_R_red < cfg.warn_margin)
    report.warnings.push_back("red margin low: min |R| = " +
                              std::to_string(report.min_abs_R_red));
  return report;
}

ValidationReport validate_axis_motion(const GaitProgram& g) {
  ValidationReport report;
  if (!check_structure(g, report)) return report;

  auto scan_pair = [&](const ColoredSample& prev, const ColoredSample& cur, bool wrap) {
    const double where = wrap ? prev.t : cur.t;
    const double d1 = cur.point.a1 - prev.point.a1;
    const double d2 = cur.point.a2 - prev.point.a2;
    if (d1 == 0.0 && d2 == 0.0)
      add(report, ViolationCode::ZeroVelocity, where, "dwell step has zero velocity");
    else if (d1 != 0.0 && d2 != 0.0)
      add(report, ViolationCode::DiagonalStep, where,
          "step moves in both axes at once");
  };

  for (std::size_t i = 1; i < g.samples.size(); ++i)
    scan_pair(g.samples[i - 1], g.samples[i], false);
  if (g.periodic && g.samples.size() > 1) scan_pair(g.samples.back(), g.samples.front(), true);
  if (g.samples.size() < 2)
    add(report, ViolationCode::ZeroVelocity, g.samples.empty() ? 0.0 : g.samples.front().t,
        "motion constraint needs at least one step");
  return report;
}

std::vector<FullGaitSample> complete_gait(const GaitProgram& g, const ValidatorConfig& cfg) {
  ValidationReport report = validate_generalized(g, cfg);
  if (!report.valid())
    throw InvalidGait("complete_gait: gait fails generalized validation", std::move(report));
  std::vector<FullGaitSample> out;
  out.reserve(g.samples.size());
  for (const ColoredSample& s : g.samples) {
    const Completion c = complete(s.color, s.point);
    out.push_back(FullGaitSample{s.t, s.point.a1, s.point.a2, c.a3, c.a4});
  }
  return out;
}

std::vector<FullGaitSample> bias_gait(std::vector<FullGaitSample> samples, double eta) {
  if (!std::isfinite(eta)) throw std::invalid_argument("bias_gait: eta must be finite");
  for (FullGaitSample& s : samples) {
    s.a3 *= eta;
    s.a4 *= eta;
  }
  return samples;
}

}  // namespace gaitmap
