#ifndef GAITMAP_CORE_HPP
#define GAITMAP_CORE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

// Region algebra of the two-color planning plane: the planning box, the
// region function R(a1, a2) and its zero curve L, the upper/lower subspaces,
// the red/blue completions of a planar point into four tilting angles, and
// the unique switch point where both completions coincide.

namespace gaitmap {

// Planning box half-width, in radians.
inline constexpr double kBoxBound = 1.0;

// Tolerance band around L for region classification.
inline constexpr double kBoundaryTol = 1e-6;

// Radius of the "at the switch point" ball.
inline constexpr double kSwitchEps = 1e-6;

// Switch point coordinates and the blue completion offset. The offset is
// exactly twice the switch coordinate, which is what makes the red and blue
// completions coincide there.
inline constexpr double kSwitchA1 = 0.167099;
inline constexpr double kSwitchA2 = -0.167099;
inline constexpr double kBlueOffset = 0.334198;
static_assert(kBlueOffset == 2.0 * kSwitchA1);

enum class Color : std::uint8_t { Red, Blue };

inline const char* to_string(Color c) { return c == Color::Red ? "red" : "blue"; }

enum class RegionLabel : std::uint8_t { Upper, Lower, OnBoundary };

inline const char* to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::Upper: return "upper";
    case RegionLabel::Lower: return "lower";
    default: return "on-boundary";
  }
}

// A point of the planning box. Construction rejects anything outside
// [-kBoxBound, kBoxBound]^2 (NaN included).
struct PlanarPoint {
  double a1 = 0.0;
  double a2 = 0.0;

  PlanarPoint() = default;
  PlanarPoint(double a1_, double a2_) : a1(a1_), a2(a2_) {
    if (!(std::fabs(a1) <= kBoxBound) || !(std::fabs(a2) <= kBoxBound))
      throw std::invalid_argument("PlanarPoint outside planning box: (" +
                                  std::to_string(a1_) + ", " + std::to_string(a2_) + ")");
  }

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

inline PlanarPoint switch_point() { return PlanarPoint(kSwitchA1, kSwitchA2); }

// 16 coefficients of a quartic trigonometric form in four angles. Pattern
// index: bit i set selects sin of angle slot i (0-based), clear selects cos.
// Pattern strings are read left to right, e.g. "ccsc" = c1*c2*s3*c4 = bit 2.
struct HoverCoefficients {
  std::array<double, 16> c{};

  static int pattern_index(const std::string& pattern);
  static std::string pattern_name(int index);

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  // Sum of coefficient * product of the selected trig factors.
  double evaluate(const std::array<double, 4>& sines,
                  const std::array<double, 4>& cosines) const;
  double evaluate_angles(double a1, double a2, double a3, double a4) const;

  bool all_finite() const;
  bool is_zero() const;

  friend bool operator==(const HoverCoefficients&, const HoverCoefficients&) = default;
};

// The coefficient table of the region function R: the general hover
// determinant restricted to the red surface (a3 = a1, a4 = a2). One-sine
// patterns are +5.592 for sine in slots 2/4 and -5.592 for slots 1/3; the
// missing all-sine monomial is zero.
const HoverCoefficients& canonical_hover_table();

// R(a1, a2): the canonical table on the red surface.
double eval_R(const PlanarPoint& p);

RegionLabel classify_region(const PlanarPoint& p, double tol = kBoundaryTol);

struct Completion {
  double a3 = 0.0;
  double a4 = 0.0;
  friend bool operator==(const Completion&, const Completion&) = default;
};

// Red keeps the point; blue reflects it through the switch-point offsets.
Completion complete(Color color, const PlanarPoint& p);

bool is_switch_point(const PlanarPoint& p, double eps = kSwitchEps);

}  // namespace gaitmap

#endif
