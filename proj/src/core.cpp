#include "gaitmap/core.hpp"

namespace gaitmap {

int HoverCoefficients::pattern_index(const std::string& pattern) {
  if (pattern.size() != 4)
    throw std::invalid_argument("trig pattern must have 4 characters: \"" + pattern + "\"");
  int idx = 0;
  for (int i = 0; i < 4; ++i) {
    const char ch = pattern[static_cast<std::size_t>(i)];
    if (ch == 's')
      idx |= 1 << i;
    else if (ch != 'c')
      throw std::invalid_argument("trig pattern may contain only 'c' or 's': \"" + pattern + "\"");
  }
  return idx;
}

std::string HoverCoefficients::pattern_name(int index) {
  std::string out(4, 'c');
  for (int i = 0; i < 4; ++i)
    if (index & (1 << i)) out[static_cast<std::size_t>(i)] = 's';
  return out;
}

double HoverCoefficients::evaluate(const std::array<double, 4>& sines,
                                   const std::array<double, 4>& cosines) const {
  double total = 0.0;
  for (int p = 0; p < 16; ++p) {
    const double coef = c[static_cast<std::size_t>(p)];
    if (coef == 0.0) continue;
    double term = coef;
    for (int i = 0; i < 4; ++i)
      term *= (p & (1 << i)) ? sines[static_cast<std::size_t>(i)]
                             : cosines[static_cast<std::size_t>(i)];
    total += term;
  }
  return total;
}

double HoverCoefficients::evaluate_angles(double a1, double a2, double a3, double a4) const {
  const std::array<double, 4> s{std::sin(a1), std::sin(a2), std::sin(a3), std::sin(a4)};
  const std::array<double, 4> co{std::cos(a1), std::cos(a2), std::cos(a3), std::cos(a4)};
  return evaluate(s, co);
}

bool HoverCoefficients::all_finite() const {
  for (double v : c)
    if (!std::isfinite(v)) return false;
  return true;
}

bool HoverCoefficients::is_zero() const {
  for (double v : c)
    if (v != 0.0) return false;
  return true;
}

const HoverCoefficients& canonical_hover_table() {
  static const HoverCoefficients table = [] {
    HoverCoefficients t;
    auto set = [&t](const char* pat, double v) { t[HoverCoefficients::pattern_index(pat)] = v; };
    set("cccc", 4.000);
    set("cccs", 5.592);
    set("ccsc", -5.592);
    set("cscc", 5.592);
    set("sccc", -5.592);
    set("ccss", 0.9716);
    set("cssc", 0.9716);
    set("sccs", 0.9716);
    set("sscc", 0.9716);
    set("cscs", -2.000);
    set("scsc", -2.000);
    set("csss", -0.1687);
    set("scss", 0.1687);
    set("sscs", -0.1687);
    set("sssc", 0.1687);
    set("ssss", 0.0);
    return t;
  }();
  return table;
}

double eval_R(const PlanarPoint& p) {
  return canonical_hover_table().evaluate_angles(p.a1, p.a2, p.a1, p.a2);
}

RegionLabel classify_region(const PlanarPoint& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify_region: tol must be positive");
  const double r = eval_R(p);
  if (r > tol) return RegionLabel::Upper;
  if (r < -tol) return RegionLabel::Lower;
  return RegionLabel::OnBoundary;
}

Completion complete(Color color, const PlanarPoint& p) {
  if (color == Color::Red) return Completion{p.a1, p.a2};
  return Completion{-p.a1 + kBlueOffset, -p.a2 - kBlueOffset};
}

bool is_switch_point(const PlanarPoint& p, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("is_switch_point: eps must be positive");
  return std::hypot(p.a1 - kSwitchA1, p.a2 - kSwitchA2) <= eps;
}

}  // namespace gaitmap
