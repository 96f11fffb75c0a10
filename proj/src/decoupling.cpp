#include "gaitmap/decoupling.hpp"

#include <algorithm>
#include <limits>

namespace gaitmap {

DeterminantModel hover_only_model() {
  DeterminantModel m;
  m.Dz = canonical_hover_table();
  m.mode = ModelMode::HoverOnly;
  m.scale = 1.0;
  return m;
}

double eval_hover_det(double a1, double a2, double a3, double a4,
                      const DeterminantModel& model) {
  return model.scale * model.Dz.evaluate_angles(a1, a2, a3, a4);
}

std::array<double, 3> attitude_weights(const Attitude& att, ModelMode mode) {
  switch (mode) {
    case ModelMode::AttitudeExtended: {
      const double cphi = std::cos(att.phi), sphi = std::sin(att.phi);
      const double cth = std::cos(att.theta), sth = std::sin(att.theta);
      return {cphi * cth, sphi * cth, -sth};
    }
    case ModelMode::FirstOrder:
      return {1.0, att.phi, -att.theta};
    default:
      if (att.phi != 0.0 || att.theta != 0.0)
        throw ModeMismatch("hover-only model cannot evaluate nonzero attitudes");
      return {1.0, 0.0, 0.0};
  }
}

double eval_det(double a1, double a2, double a3, double a4, const Attitude& att,
                const DeterminantModel& model) {
  const auto w = attitude_weights(att, model.mode);
  const std::array<double, 4> s{std::sin(a1), std::sin(a2), std::sin(a3), std::sin(a4)};
  const std::array<double, 4> c{std::cos(a1), std::cos(a2), std::cos(a3), std::cos(a4)};
  double raw = w[0] * model.Dz.evaluate(s, c);
  if (w[1] != 0.0) raw += w[1] * model.Dy.evaluate(s, c);
  if (w[2] != 0.0) raw += w[2] * model.Dx.evaluate(s, c);
  return model.scale * raw;
}

namespace {

double det3(const std::array<std::array<double, 3>, 3>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double det4(const std::array<std::array<double, 4>, 4>& m) {
  double total = 0.0;
  double sign = 1.0;
  for (int j = 0; j < 4; ++j) {
    std::array<std::array<double, 3>, 3> minor{};
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int col = 0; col < 4; ++col) {
        if (col == j) continue;
        minor[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(cc++)] =
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      }
    }
    total += sign * m[0][static_cast<std::size_t>(j)] * det3(minor);
    sign = -sign;
  }
  return total;
}

struct Vec3 {
  double x, y, z;
};

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

}  // namespace

MixingTables mixing_coefficient_tables(double kappa, const SignConvention& signs) {
  // A block coefficient is the block determinant with indicator trig values:
  // sine slots get (s, c) = (1, 0), cosine slots get (0, 1). Multilinearity
  // per angle makes this extraction exact.
  static const Vec3 arms[4] = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
  MixingTables out;
  for (int pat = 0; pat < 16; ++pat) {
    std::array<double, 4> s{}, c{};
    for (int i = 0; i < 4; ++i) {
      if (pat & (1 << i))
        s[static_cast<std::size_t>(i)] = 1.0;
      else
        c[static_cast<std::size_t>(i)] = 1.0;
    }
    std::array<Vec3, 4> thrust_dir;
    std::array<Vec3, 4> torque;
    for (std::size_t i = 0; i < 4; ++i) {
      const double si = signs.tilt[i] * s[i];
      // Arms on the x axis tilt the thrust into the y-z plane and vice versa.
      thrust_dir[i] = (arms[i].y == 0.0) ? Vec3{0.0, si, c[i]} : Vec3{si, 0.0, c[i]};
      const Vec3 lever = cross(arms[i], thrust_dir[i]);
      const double spin_k = signs.spin[i] * kappa;
      torque[i] = {lever.x + spin_k * thrust_dir[i].x, lever.y + spin_k * thrust_dir[i].y,
                   lever.z + spin_k * thrust_dir[i].z};
    }
    std::array<std::array<double, 4>, 4> m{};
    for (std::size_t i = 0; i < 4; ++i) {
      m[0][i] = torque[i].x;
      m[1][i] = torque[i].y;
      m[2][i] = torque[i].z;
    }
    const int idx = pat;
    for (std::size_t i = 0; i < 4; ++i) m[3][i] = thrust_dir[i].z;
    out.Dz[idx] = det4(m);
    for (std::size_t i = 0; i < 4; ++i) m[3][i] = thrust_dir[i].y;
    out.Dy[idx] = det4(m);
    for (std::size_t i = 0; i < 4; ++i) m[3][i] = thrust_dir[i].x;
    out.Dx[idx] = det4(m);
  }
  return out;
}

namespace {

SignConvention convention_from_index(int idx) {
  SignConvention sc;
  for (int i = 0; i < 4; ++i) {
    sc.tilt[static_cast<std::size_t>(i)] = (idx & (1 << i)) ? -1 : 1;
    sc.spin[static_cast<std::size_t>(i)] = (idx & (1 << (i + 4))) ? -1 : 1;
  }
  return sc;
}

struct FitPoint {
  double residual = std::numeric_limits<double>::infinity();
  double scale = 0.0;
};

// Least-squares scale for scale*g ~ target, then max-abs mismatch. Scale must
// come out positive for a feasible fit.
FitPoint fit_scale(const HoverCoefficients& g, const HoverCoefficients& target) {
  double gg = 0.0, gt = 0.0;
  for (int i = 0; i < 16; ++i) {
    gg += g[i] * g[i];
    gt += g[i] * target[i];
  }
  if (!(gg > 1e-12)) return {};
  const double scale = gt / gg;
  if (!(scale > 0.0)) return {};
  double resid = 0.0;
  for (int i = 0; i < 16; ++i) resid = std::max(resid, std::fabs(scale * g[i] - target[i]));
  return {resid, scale};
}

FitPoint evaluate_kappa(double kappa, const SignConvention& signs,
                        const HoverCoefficients& target) {
  return fit_scale(mixing_coefficient_tables(kappa, signs).Dz, target);
}

}  // namespace

CalibrationResult calibrate_mixing(const HoverCoefficients& target,
                                   const CalibrationConfig& config) {
  // Each sign convention is fitted independently; selection happens after
  // the sweep so the result does not depend on the thread partition.
  struct ComboFit {
    double residual = std::numeric_limits<double>::infinity();
    double kappa = 0.0;
    double scale = 0.0;
  };
  std::array<ComboFit, 256> fits;

#pragma omp parallel for schedule(dynamic)
  for (int idx = 0; idx < 256; ++idx) {
    const SignConvention signs = convention_from_index(idx);
    ComboFit fit;
    if (config.fixed_kappa) {
      const FitPoint fp = evaluate_kappa(*config.fixed_kappa, signs, target);
      fit = {fp.residual, *config.fixed_kappa, fp.scale};
    } else {
      // Coarse grid, then shrinking grids around the best point.
      const int n0 = std::max(2, config.coarse_steps);
      double step = (config.kappa_max - config.kappa_min) / n0;
      for (int k = 0; k <= n0; ++k) {
        const double kap = config.kappa_min + step * k;
        const FitPoint fp = evaluate_kappa(kap, signs, target);
        if (fp.residual < fit.residual) fit = {fp.residual, kap, fp.scale};
      }
      for (int round = 0; round < config.refine_rounds; ++round) {
        const double lo = std::max(config.kappa_min, fit.kappa - step);
        const double hi = std::min(config.kappa_max, fit.kappa + step);
        const int n = std::max(2, config.refine_steps);
        step = (hi - lo) / n;
        for (int k = 0; k <= n; ++k) {
          const double kap = lo + step * k;
          const FitPoint fp = evaluate_kappa(kap, signs, target);
          if (fp.residual < fit.residual) fit = {fp.residual, kap, fp.scale};
        }
      }
    }
    fits[static_cast<std::size_t>(idx)] = fit;
  }

  // Lowest residual wins, ties broken by convention index.
  double best_resid = std::numeric_limits<double>::infinity();
  double best_kappa = 0.0, best_scale = 0.0;
  int best_idx = -1;
  for (int idx = 0; idx < 256; ++idx) {
    const ComboFit& fit = fits[static_cast<std::size_t>(idx)];
    if (fit.residual < best_resid) {
      best_resid = fit.residual;
      best_kappa = fit.kappa;
      best_scale = fit.scale;
      best_idx = idx;
    }
  }

  CalibrationResult result;
  result.calibration.kappa = best_kappa;
  result.calibration.signs = convention_from_index(best_idx < 0 ? 0 : best_idx);
  result.calibration.global_scale = best_scale;
  result.calibration.residual = best_resid;
  result.accepted = std::isfinite(best_resid) && best_resid <= config.accept_tol;

  if (result.accepted) {
    const MixingTables tables = mixing_coefficient_tables(best_kappa, result.calibration.signs);
    DeterminantModel m;
    m.mode = ModelMode::AttitudeExtended;
    m.scale = best_scale;
    // Snap Dz so scale * Dz reproduces the target table; Dy/Dx keep the
    // fitted mixing structure.
    for (int i = 0; i < 16; ++i) m.Dz[i] = target[i] / best_scale;
    m.Dy = tables.Dy;
    m.Dx = tables.Dx;
    result.model = m;
  } else {
    DeterminantModel m;
    m.mode = ModelMode::HoverOnly;
    m.scale = 1.0;
    m.Dz = target;
    result.model = m;
    if (best_idx >= 0 && std::isfinite(best_resid) && best_scale > 0.0) {
      const MixingTables tables = mixing_coefficient_tables(best_kappa, result.calibration.signs);
      DeterminantModel fo;
      fo.mode = ModelMode::FirstOrder;
      fo.scale = best_scale;
      for (int i = 0; i < 16; ++i) fo.Dz[i] = target[i] / best_scale;
      fo.Dy = tables.Dy;
      fo.Dx = tables.Dx;
      result.first_order_model = fo;
    }
  }
  return result;
}

}  // namespace gaitmap
