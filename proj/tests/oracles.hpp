#ifndef GAITMAP_TESTS_ORACLES_HPP
#define GAITMAP_TESTS_ORACLES_HPP

#include <cmath>
#include <random>
#include <vector>

#include "gaitmap/attitude_map.hpp"

// Independent oracles kept deliberately separate from the library code paths
// they check.

namespace oracles {

// Literal term-by-term sum of the printed region function, in printed order.
// The lone five-factor term is read as the quartic c1*c2*c1*s2.
inline double eval_R_literal(double a1, double a2) {
  const double s1 = std::sin(a1), s2 = std::sin(a2);
  const double c1 = std::cos(a1), c2 = std::cos(a2);
  return 4.000 * c1 * c2 * c1 * c2
       + 5.592 * c1 * c2 * c1 * s2
       - 5.592 * c1 * c2 * s1 * c2
       + 5.592 * c1 * s2 * c1 * c2
       - 5.592 * s1 * c2 * c1 * c2
       + 0.9716 * c1 * c2 * s1 * s2
       + 0.9716 * c1 * s2 * s1 * c2
       + 0.9716 * s1 * c2 * c1 * s2
       + 0.9716 * s1 * s2 * c1 * c2
       - 2.000 * c1 * s2 * c1 * s2
       - 2.000 * s1 * c2 * s1 * c2
       - 0.1687 * c1 * s2 * s1 * s2
       + 0.1687 * s1 * c2 * s1 * s2
       - 0.1687 * s1 * s2 * c1 * s2
       + 0.1687 * s1 * s2 * s1 * c2;
}

// Brute-force marching squares for a single cell: an explicit case list over
// all 16 corner sign patterns. Corner layout and naming:
//   v00 = (x0, y0)  v01 = (x1, y0)  v10 = (x0, y1)  v11 = (x1, y1)
struct CellInput {
  double x0, x1, y0, y1;
  double v00, v01, v10, v11;
};

inline gaitmap::ContourVertex lerp_bottom(const CellInput& c) {
  const double t = c.v00 / (c.v00 - c.v01);
  return {c.x0 + t * (c.x1 - c.x0), c.y0};
}
inline gaitmap::ContourVertex lerp_top(const CellInput& c) {
  const double t = c.v10 / (c.v10 - c.v11);
  return {c.x0 + t * (c.x1 - c.x0), c.y1};
}
inline gaitmap::ContourVertex lerp_left(const CellInput& c) {
  const double t = c.v00 / (c.v00 - c.v10);
  return {c.x0, c.y0 + t * (c.y1 - c.y0)};
}
inline gaitmap::ContourVertex lerp_right(const CellInput& c) {
  const double t = c.v01 / (c.v01 - c.v11);
  return {c.x1, c.y0 + t * (c.y1 - c.y0)};
}

inline std::vector<gaitmap::ContourSegment> marching_cell_bruteforce(const CellInput& c) {
  const bool p00 = c.v00 > 0.0, p01 = c.v01 > 0.0, p10 = c.v10 > 0.0, p11 = c.v11 > 0.0;
  const int code = (p00 ? 1 : 0) | (p01 ? 2 : 0) | (p10 ? 4 : 0) | (p11 ? 8 : 0);
  std::vector<gaitmap::ContourSegment> segs;
  switch (code) {
    case 0:
    case 15:
      break;
    case 1:  // only v00 positive
      segs.push_back({lerp_left(c), lerp_bottom(c)});
      break;
    case 2:  // only v01
      segs.push_back({lerp_bottom(c), lerp_right(c)});
      break;
    case 3:  // bottom row
      segs.push_back({lerp_left(c), lerp_right(c)});
      break;
    case 4:  // only v10
      segs.push_back({lerp_top(c), lerp_left(c)});
      break;
    case 5:  // left column
      segs.push_back({lerp_top(c), lerp_bottom(c)});
      break;
    case 6: {  // v01 + v10, anti-diagonal saddle
      const bool center = 0.25 * (c.v00 + c.v01 + c.v10 + c.v11) > 0.0;
      if (center) {  // positive corners connected: cut off v00 and v11
        segs.push_back({lerp_bottom(c), lerp_left(c)});
        segs.push_back({lerp_top(c), lerp_right(c)});
      } else {  // negative band: cut off v01 and v10
        segs.push_back({lerp_bottom(c), lerp_right(c)});
        segs.push_back({lerp_top(c), lerp_left(c)});
      }
      break;
    }
    case 7:  // all but v11
      segs.push_back({lerp_top(c), lerp_right(c)});
      break;
    case 8:  // only v11
      segs.push_back({lerp_right(c), lerp_top(c)});
      break;
    case 9: {  // v00 + v11, main-diagonal saddle
      const bool center = 0.25 * (c.v00 + c.v01 + c.v10 + c.v11) > 0.0;
      if (center) {  // cut off v01 and v10
        segs.push_back({lerp_bottom(c), lerp_right(c)});
        segs.push_back({lerp_top(c), lerp_left(c)});
      } else {  // cut off v00 and v11
        segs.push_back({lerp_bottom(c), lerp_left(c)});
        segs.push_back({lerp_top(c), lerp_right(c)});
      }
      break;
    }
    case 10:  // right column
      segs.push_back({lerp_bottom(c), lerp_top(c)});
      break;
    case 11:  // all but v10
      segs.push_back({lerp_left(c), lerp_top(c)});
      break;
    case 12:  // top row
      segs.push_back({lerp_right(c), lerp_left(c)});
      break;
    case 13:  // all but v01
      segs.push_back({lerp_right(c), lerp_bottom(c)});
      break;
    case 14:  // all but v00
      segs.push_back({lerp_bottom(c), lerp_left(c)});
      break;
    default:
      break;
  }
  return segs;
}

inline std::vector<gaitmap::ContourSegment> marching_field_bruteforce(
    const gaitmap::DetField& field) {
  std::vector<gaitmap::ContourSegment> segs;
  const int res = field.grid.resolution;
  for (int i = 0; i + 1 < res; ++i) {
    for (int j = 0; j + 1 < res; ++j) {
      CellInput cell{field.grid.phi(j),   field.grid.phi(j + 1),  field.grid.theta(i),
                     field.grid.theta(i + 1), field.raw_at(i, j), field.raw_at(i, j + 1),
                     field.raw_at(i + 1, j),  field.raw_at(i + 1, j + 1)};
      for (auto& s : marching_cell_bruteforce(cell)) segs.push_back(s);
    }
  }
  return segs;
}

// Segment multisets compared as sorted endpoint quadruples with the two
// endpoints of each segment in a canonical order.
inline std::vector<std::array<double, 4>> normalized_segments(
    const std::vector<gaitmap::ContourSegment>& segs) {
  std::vector<std::array<double, 4>> out;
  out.reserve(segs.size());
  for (const auto& s : segs) {
    std::array<double, 4> q{s.a.phi, s.a.theta, s.b.phi, s.b.theta};
    if (std::tie(q[2], q[3]) < std::tie(q[0], q[1])) {
      std::swap(q[0], q[2]);
      std::swap(q[1], q[3]);
    }
    out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random gaits that satisfy the generalized rules by construction: region-
// confined red walks, unconstrained blue walks, and switching gaits that pass
// through the switch point by retracing their own path.
struct RandomGaitFactory {
  std::mt19937 rng;
  explicit RandomGaitFactory(unsigned seed) : rng(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  gaitmap::PlanarPoint random_point_in_region(gaitmap::RegionLabel want, double margin) {
    for (int tries = 0; tries < 10000; ++tries) {
      const gaitmap::PlanarPoint p(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
      const double r = gaitmap::eval_R(p);
      if (want == gaitmap::RegionLabel::Upper && r > margin) return p;
      if (want == gaitmap::RegionLabel::Lower && r < -margin) return p;
    }
    throw std::runtime_error("random_point_in_region: rejection sampling failed");
  }

  // Random walk keeping |R| above `margin` on the starting side (or roaming
  // freely when confined == false).
  std::vector<gaitmap::PlanarPoint> walk(gaitmap::PlanarPoint start, int steps, bool confined,
                                         double margin) {
    std::vector<gaitmap::PlanarPoint> points{start};
    const double side = confined ? (gaitmap::eval_R(start) > 0.0 ? 1.0 : -1.0) : 0.0;
    while (static_cast<int>(points.size()) < steps) {
      const gaitmap::PlanarPoint& cur = points.back();
      const double dx = uniform(-0.03, 0.03), dy = uniform(-0.03, 0.03);
      const double nx = cur.a1 + dx, ny = cur.a2 + dy;
      if (std::fabs(nx) > 1.0 || std::fabs(ny) > 1.0) continue;
      const gaitmap::PlanarPoint next(nx, ny);
      if (confined && side * gaitmap::eval_R(next) < margin) continue;
      points.push_back(next);
    }
    return points;
  }

  gaitmap::GaitProgram make(int kind) {
    using namespace gaitmap;
    GaitProgram g;
    g.step_bound = 0.1;
    const double dt = 0.05;
    auto push = [&](const PlanarPoint& p, Color c) {
      g.samples.push_back(ColoredSample{dt * g.samples.size(), p, c});
    };
    switch (kind % 4) {
      case 0: {  // red confined to the upper subspace
        for (const auto& p : walk(random_point_in_region(RegionLabel::Upper, 0.05), 60, true, 1e-5))
          push(p, Color::Red);
        break;
      }
      case 1: {  // red confined to the lower subspace
        for (const auto& p : walk(random_point_in_region(RegionLabel::Lower, 0.05), 60, true, 1e-5))
          push(p, Color::Red);
        break;
      }
      case 2: {  // blue anywhere
        for (const auto& p : walk(PlanarPoint(uniform(-1, 1), uniform(-1, 1)), 60, false, 0.0))
          push(p, Color::Blue);
        break;
      }
      default: {  // red out of the switch point and back, then blue, switching at P
        const PlanarPoint p0 = switch_point();
        auto out = walk(p0, 20, true, 1e-5);
        for (const auto& p : out) push(p, Color::Red);
        for (std::size_t i = out.size() - 1; i-- > 0;) push(out[i], Color::Red);
        auto wander = walk(p0, 20, false, 0.0);
        for (const auto& p : wander) push(p, Color::Blue);
        for (std::size_t i = wander.size() - 1; i-- > 0;) push(wander[i], Color::Blue);
        push(p0, Color::Red);
        break;
      }
    }
    return g;
  }
};

}  // namespace oracles

#endif
