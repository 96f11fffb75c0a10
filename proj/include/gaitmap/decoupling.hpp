#ifndef GAITMAP_DECOUPLING_HPP
#define GAITMAP_DECOUPLING_HPP

#include <array>
#include <optional>
#include <stdexcept>

#include "gaitmap/core.hpp"

// Decoupling-matrix determinant model over the four tilting angles and the
// roll/pitch attitude. At hover the determinant is a 16-pattern quartic trig
// form (the Dz block). Away from hover only the altitude output row changes:
// the body force is projected through the world-z row of the roll-pitch
// rotation, which mixes in the Dy and Dx blocks:
//
//   det(a, phi, theta) = cos(phi)cos(theta) Dz(a)
//                      + sin(phi)cos(theta) Dy(a)
//                      - sin(theta)         Dx(a),   all times `scale`.

namespace gaitmap {

struct Attitude {
  double phi = 0.0;
  double theta = 0.0;
};

enum class ModelMode : std::uint8_t {
  HoverOnly,        // Dz only; rejects nonzero attitudes
  AttitudeExtended, // full rotation-row weights
  FirstOrder,       // linearized weights: Dz + phi*Dy - theta*Dx
};

inline const char* to_string(ModelMode m) {
  switch (m) {
    case ModelMode::HoverOnly: return "hover-only";
    case ModelMode::AttitudeExtended: return "attitude-extended";
    default: return "first-order";
  }
}

class ModeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DeterminantModel {
  HoverCoefficients Dz;  // hover force-z block; houses R on the red surface
  HoverCoefficients Dy;  // roll-direction block
  HoverCoefficients Dx;  // pitch-direction block
  ModelMode mode = ModelMode::HoverOnly;
  double scale = 1.0;    // positive; never moves the zero set
};

// Canonical hover-only model: Dz is the printed region-function table.
DeterminantModel hover_only_model();

double eval_hover_det(double a1, double a2, double a3, double a4,
                      const DeterminantModel& model);

// Attitude weights for the three blocks under the model's mode.
std::array<double, 3> attitude_weights(const Attitude& att, ModelMode mode);

double eval_det(double a1, double a2, double a3, double a4, const Attitude& att,
                const DeterminantModel& model);

// ---------------------------------------------------------------------------
// Calibration of the mixing geometry against a target hover table.
//
// Rotor arms lie along +x, +y, -x, -y; rotor i tilts about its arm axis by
// a_i with tilt-direction sign sigma_i; per unit thrust the torque is
// arm x thrust + spin_i * kappa * thrust. Rows of the 4x4 matrix are roll
// torque, pitch torque, yaw torque, and one force row (z, y or x), and each
// block determinant expands exactly over the 16-pattern basis.

struct SignConvention {
  std::array<int, 4> tilt{1, 1, 1, 1};
  std::array<int, 4> spin{1, 1, 1, 1};
};

struct MixingTables {
  HoverCoefficients Dz;
  HoverCoefficients Dy;
  HoverCoefficients Dx;
};

// Exact 16-pattern expansion of the three block determinants for a given
// counter-torque ratio and sign convention.
MixingTables mixing_coefficient_tables(double kappa, const SignConvention& signs);

struct VehicleCalibration {
  double kappa = 0.0;       // counter-torque-to-thrust ratio per unit arm
  double arm_length = 1.0;  // enters only through global_scale
  SignConvention signs;
  double global_scale = 1.0;
  double residual = 0.0;    // max abs coefficient mismatch vs the target
};

struct CalibrationConfig {
  double accept_tol = 5e-3;
  double kappa_min = 5e-3;
  double kappa_max = 1.0;
  int coarse_steps = 200;
  int refine_rounds = 3;
  int refine_steps = 40;
  // Pin kappa to a fixed value instead of searching (degenerate-yaw probe).
  std::optional<double> fixed_kappa;
};

struct CalibrationResult {
  bool accepted = false;
  VehicleCalibration calibration;
  // Accepted: attitude-extended model, Dz snapped to target/scale so the
  // hover restriction reproduces the target exactly; Dy/Dx from the fit.
  // Not accepted: hover-only model with Dz = target.
  DeterminantModel model;
  // Best-effort linearized model, populated only when not accepted.
  std::optional<DeterminantModel> first_order_model;
};

// Deterministic sweep over the 2^4 x 2^4 sign conventions with a nested
// kappa line search per convention; scale fitted in closed form by least
// squares. Lowest max-abs residual wins, ties broken by convention index.
CalibrationResult calibrate_mixing(const HoverCoefficients& target,
                                   const CalibrationConfig& config = {});

}  // namespace gaitmap

#endif
