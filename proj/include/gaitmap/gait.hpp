#ifndef GAITMAP_GAIT_HPP
#define GAITMAP_GAIT_HPP

#include <limits>
#include <string>
#include <vector>

#include "gaitmap/core.hpp"

// Time-parameterized colored gait programs, the generalized and classic
// validators, the paper-style generators/presets, completion into four
// angles, and the bias scaling.

namespace gaitmap {

inline constexpr double kDefaultStepBound = 0.05;  // rad per sample step
inline constexpr double kRedMarginWarn = 1e-4;     // |R| soft-warning margin

struct ColoredSample {
  double t = 0.0;
  PlanarPoint point;
  Color color = Color::Red;
};

struct GaitProgram {
  std::vector<ColoredSample> samples;
  bool periodic = false;
  double period = 0.0;  // meaningful only when periodic
  double step_bound = kDefaultStepBound;
  std::string name;  // optional label for reports
};

struct FullGaitSample {
  double t = 0.0;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
};

enum class ViolationCode : std::uint8_t {
  // malformed structure
  EmptyGait,
  NonIncreasingTime,
  FirstSampleTimeNonzero,
  BadPeriod,
  NonFiniteTime,
  // generalized theorem rules
  RedStartedOnBoundary,
  RedEscapedRegion,
  SwitchAwayFromP,
  StepBoundExceeded,
  // classic axis-motion rules
  DiagonalStep,
  ZeroVelocity,
};

const char* to_string(ViolationCode code);
bool is_malformed_code(ViolationCode code);

struct Violation {
  ViolationCode code;
  double t = 0.0;
  std::string detail;
};

enum class Verdict : std::uint8_t { Valid, Invalid };

struct ValidationReport {
  Verdict verdict = Verdict::Valid;
  bool malformed = false;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  double min_abs_R_red = std::numeric_limits<double>::infinity();
  int switch_count = 0;

  bool valid() const { return verdict == Verdict::Valid; }
};

struct ValidatorConfig {
  double boundary_tol = kBoundaryTol;
  double switch_eps = kSwitchEps;
  double warn_margin = kRedMarginWarn;
};

// Generalized two-color rules: red runs confined to the strict region of
// their first sample, blue unrestricted, color changes only with both
// endpoint samples at the switch point, per-step continuity bound.
ValidationReport validate_generalized(const GaitProgram& g, const ValidatorConfig& cfg = {});

// Classic motion constraint only: every step axis-aligned and nonzero.
ValidationReport validate_axis_motion(const GaitProgram& g);

class InvalidGait : public std::runtime_error {
 public:
  explicit InvalidGait(const std::string& what, ValidationReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Requires validate_generalized to pass; applies the color completion per
// sample.
std::vector<FullGaitSample> complete_gait(const GaitProgram& g, const ValidatorConfig& cfg = {});

// Scales a3, a4 by eta; a1, a2 pass through untouched.
std::vector<FullGaitSample> bias_gait(std::vector<FullGaitSample> samples, double eta);

// --- generators -------------------------------------------------------------

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniformly phased circle, constant color, periodic. Red circles are
// region-checked at construction.
GaitProgram generate_circle(const PlanarPoint& center, double radius, Color color,
                            double period, int n);

// Piecewise-linear periodic traversal of a closed polygon, sampled uniformly
// by arc length with samples snapped to vertices; one color per lap, flips
// allowed only when the lap-boundary vertex is the switch point.
GaitProgram generate_polygon(const std::vector<PlanarPoint>& vertices,
                             const std::vector<Color>& colors_per_lap, double period, int n);

// Open sampled straight segment (shared by the example presets).
GaitProgram generate_segment(const PlanarPoint& from, const PlanarPoint& to, Color color,
                             double duration, int n);

// Named gaits used throughout: gait1..gait3 and the four example paths
// e1..e4 (e4 intentionally violates the red confinement rule).
GaitProgram preset(const std::string& name);
const std::vector<std::string>& preset_names();

}  // namespace gaitmap

#endif
