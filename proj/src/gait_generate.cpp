#include <algorithm>
#include <cmath>

#include "gaitmap/gait.hpp"

namespace gaitmap {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Generators declare the bound their own sampling actually meets.
double declared_bound(double max_step) {
  return std::max(kDefaultStepBound, 1.05 * max_step);
}

}  // namespace

GaitProgram generate_circle(const PlanarPoint& center, double radius, Color color,
                            double period, int n) {
  if (n < 8) throw GenerationError("generate_circle: need at least 8 samples");
  if (!(radius >= 0.0)) throw GenerationError("generate_circle: negative radius");
  if (!(period > 0.0)) throw GenerationError("generate_circle: period must be positive");
  if (std::fabs(center.a1) + radius > kBoxBound || std::fabs(center.a2) + radius > kBoxBound)
    throw GenerationError("CircleOutOfBox: circle leaves the planning box");

  GaitProgram g;
  g.periodic = true;
  g.period = period;
  g.samples.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double phase = kTau * k / n;
    const PlanarPoint p(center.a1 + radius * std::cos(phase),
                        center.a2 + radius * std::sin(phase));
    g.samples.push_back(ColoredSample{period * k / n, p, color});
  }
  g.step_bound = declared_bound(2.0 * radius * std::sin(kTau / (2.0 * n)));

  if (color == Color::Red) {
    const RegionLabel regime = classify_region(g.samples.front().point);
    for (const ColoredSample& s : g.samples) {
      const RegionLabel label = classify_region(s.point);
      if (label == RegionLabel::OnBoundary || label != regime)
        throw GenerationError("RedCircleCrossesL: red circle touches or crosses the boundary");
    }
  }
  return g;
}

GaitProgram generate_polygon(const std::vector<PlanarPoint>& vertices,
                             const std::vector<Color>& colors_per_lap, double period, int n) {
  const int nv = static_cast<int>(vertices.size());
  if (nv < 2) throw GenerationError("generate_polygon: need at least 2 vertices");
  if (n < 3 * nv) throw GenerationError("generate_polygon: need n >= 3 x vertex count");
  if (colors_per_lap.empty()) throw GenerationError("generate_polygon: empty color schedule");
  if (!(period > 0.0)) throw GenerationError("generate_polygon: period must be positive");

  // Color flips happen at lap boundaries, i.e. at vertices[0] (including the
  // periodic wrap back to the first lap).
  const int laps = static_cast<int>(colors_per_lap.size());
  for (int lap = 0; lap < laps; ++lap) {
    const Color next = colors_per_lap[static_cast<std::size_t>((lap + 1) % laps)];
    if (colors_per_lap[static_cast<std::size_t>(lap)] != next &&
        !is_switch_point(vertices.front()))
      throw GenerationError("SwitchVertexNotP: color flip at a vertex away from the switch point");
  }

  std::vector<double> edge_len(static_cast<std::size_t>(nv));
  double perimeter = 0.0;
  for (int e = 0; e < nv; ++e) {
    const PlanarPoint& a = vertices[static_cast<std::size_t>(e)];
    const PlanarPoint& b = vertices[static_cast<std::size_t>((e + 1) % nv)];
    edge_len[static_cast<std::size_t>(e)] = std::hypot(b.a1 - a.a1, b.a2 - a.a2);
    perimeter += edge_len[static_cast<std::size_t>(e)];
  }
  if (!(perimeter > 0.0)) throw GenerationError("generate_polygon: degenerate polygon");

  // Per-edge interval counts proportional to arc length, so every vertex
  // lands exactly on a sample.
  std::vector<int> intervals(static_cast<std::size_t>(nv));
  for (int e = 0; e < nv; ++e) {
    const double len = edge_len[static_cast<std::size_t>(e)];
    intervals[static_cast<std::size_t>(e)] =
        len == 0.0 ? 0 : std::max(1, static_cast<int>(std::lround(n * len / perimeter)));
  }

  const double lap_duration = period / laps;
  const double dwell = lap_duration * 1e-7;  // time offset of the flip pair at a vertex
  GaitProgram g;
  g.periodic = true;
  g.period = period;
  double max_step = 0.0;

  for (int lap = 0; lap < laps; ++lap) {
    const Color color = colors_per_lap[static_cast<std::size_t>(lap)];
    const Color prev_color = colors_per_lap[static_cast<std::size_t>((lap + laps - 1) % laps)];
    const double t0 = lap_duration * lap;
    // Arrival sample of the previous lap (old color) just before this lap
    // starts, so the flip pair sits at the shared vertex.
    if (lap > 0 && prev_color != color)
      g.samples.push_back(ColoredSample{t0 - dwell, vertices.front(), prev_color});
    double arc = 0.0;
    for (int e = 0; e < nv; ++e) {
      const PlanarPoint& a = vertices[static_cast<std::size_t>(e)];
      const PlanarPoint& b = vertices[static_cast<std::size_t>((e + 1) % nv)];
      const int m = intervals[static_cast<std::size_t>(e)];
      if (m == 0) continue;
      for (int j = 0; j < m; ++j) {
        const double f = static_cast<double>(j) / m;
        const double along = arc + f * edge_len[static_cast<std::size_t>(e)];
        const PlanarPoint p(a.a1 + f * (b.a1 - a.a1), a.a2 + f * (b.a2 - a.a2));
        g.samples.push_back(ColoredSample{t0 + lap_duration * along / perimeter, p, color});
        max_step = std::max(max_step, edge_len[static_cast<std::size_t>(e)] / m);
      }
      arc += edge_len[static_cast<std::size_t>(e)];
    }
  }
  // Wrap arrival: if the schedule flips across the period boundary the final
  // sample must sit at the shared vertex in the last lap's color.
  if (colors_per_lap.back() != colors_per_lap.front())
    g.samples.push_back(ColoredSample{period - dwell, vertices.front(), colors_per_lap.back()});

  g.step_bound = declared_bound(max_step);
  return g;
}

GaitProgram generate_segment(const PlanarPoint& from, const PlanarPoint& to, Color color,
                             double duration, int n) {
  if (n < 2) throw GenerationError("generate_segment: need at least 2 samples");
  if (!(duration > 0.0)) throw GenerationError("generate_segment: duration must be positive");
  GaitProgram g;
  g.periodic = false;
  g.period = 0.0;
  g.samples.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double f = static_cast<double>(k) / (n - 1);
    const PlanarPoint p(from.a1 + f * (to.a1 - from.a1), from.a2 + f * (to.a2 - from.a2));
    g.samples.push_back(ColoredSample{duration * f, p, color});
  }
  g.step_bound = declared_bound(std::hypot(to.a1 - from.a1, to.a2 - from.a2) / (n - 1));
  return g;
}

namespace {

// Default parameters of the named gaits. The triangle runs from the switch
// point into the lower subspace; both circles keep a generous margin to the
// boundary curve of their region.
GaitProgram make_gait1() {
  GaitProgram g = generate_polygon({switch_point(), PlanarPoint(0.6, -0.5), PlanarPoint(-0.1, -0.75)},
                                   {Color::Red, Color::Blue}, 8.0, 192);
  g.name = "gait1";
  return g;
}

GaitProgram make_gait2() {
  GaitProgram g = generate_circle(PlanarPoint(-0.4, 0.4), 0.2, Color::Red, 4.0, 256);
  g.name = "gait2";
  return g;
}

GaitProgram make_gait3() {
  GaitProgram g = generate_circle(PlanarPoint(0.1, 0.3), 0.35, Color::Blue, 4.0, 256);
  g.name = "gait3";
  return g;
}

}  // namespace

GaitProgram preset(const std::string& name) {
  GaitProgram g;
  if (name == "gait1") return make_gait1();
  if (name == "gait2") return make_gait2();
  if (name == "gait3") return make_gait3();
  if (name == "e1")
    g = generate_segment(PlanarPoint(-0.6, 0.3), PlanarPoint(-0.2, 0.7), Color::Red, 2.0, 64);
  else if (name == "e2")
    g = generate_segment(PlanarPoint(-0.8, -0.8), PlanarPoint(0.8, 0.8), Color::Blue, 3.0, 128);
  else if (name == "e3")
    g = generate_segment(PlanarPoint(0.5, -0.3), PlanarPoint(0.8, -0.7), Color::Red, 2.0, 64);
  else if (name == "e4")
    g = generate_segment(PlanarPoint(0.5, -0.3), PlanarPoint(-0.5, 0.5), Color::Red, 2.0, 96);
  else
    throw GenerationError("UnknownPreset: " + name);
  g.name = name;
  return g;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"gait1", "gait2", "gait3", "e1", "e2", "e3", "e4"};
  return names;
}

}  // namespace gaitmap
