#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gaitmap/decoupling.hpp"
#include "gaitmap/gait.hpp"
#include "gaitmap/io.hpp"
#include "oracles.hpp"

using namespace gaitmap;

namespace {

GaitProgram staircase() {
  GaitProgram g;
  g.step_bound = 0.5;
  const double pts[][2] = {{0.0, 0.0}, {0.3, 0.0}, {0.3, 0.4}, {0.6, 0.4}, {0.6, 0.1}};
  double t = 0.0;
  for (auto& p : pts) {
    g.samples.push_back(ColoredSample{t, PlanarPoint(p[0], p[1]), Color::Blue});
    t += 1.0;
  }
  return g;
}

bool has_violation(const ValidationReport& r, ViolationCode code) {
  for (const Violation& v : r.violations)
    if (v.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("preset classifications") {
  for (const char* name : {"e1", "e2", "e3", "gait1", "gait2", "gait3"}) {
    const ValidationReport r = validate_generalized(preset(name));
    INFO("preset ", name);
    CHECK(r.valid());
  }
  const ValidationReport e4 = validate_generalized(preset("e4"));
  CHECK_FALSE(e4.valid());
  CHECK(has_violation(e4, ViolationCode::RedEscapedRegion));
  CHECK_FALSE(e4.malformed);

  CHECK_THROWS_AS(preset("nope"), GenerationError);
}

TEST_CASE("gait1 switches exactly twice per period") {
  const ValidationReport r = validate_generalized(preset("gait1"));
  CHECK(r.valid());
  CHECK(r.switch_count == 2);

  const ValidationReport r2 = validate_generalized(preset("gait2"));
  CHECK(r2.switch_count == 0);
  const ValidationReport r3 = validate_generalized(preset("gait3"));
  CHECK(r3.switch_count == 0);
}

TEST_CASE("color switches away from the switch point are rejected") {
  GaitProgram g;
  g.step_bound = 1.0;
  g.samples.push_back(ColoredSample{0.0, PlanarPoint(0.3, 0.3), Color::Red});
  g.samples.push_back(ColoredSample{1.0, PlanarPoint(0.3, 0.3), Color::Blue});
  const ValidationReport r = validate_generalized(g);
  CHECK_FALSE(r.valid());
  CHECK(has_violation(r, ViolationCode::SwitchAwayFromP));
}

TEST_CASE("red gait starting on the boundary is rejected") {
  // Bisect toward the boundary curve until inside the tolerance band.
  double lo = 0.0, hi = 1.0;  // along the segment (0,0) -> (0.9,-0.9)
  auto at = [](double t) { return PlanarPoint(0.9 * t, -0.9 * t); };
  while (std::fabs(eval_R(at(0.5 * (lo + hi)))) > kBoundaryTol) {
    if (eval_R(at(0.5 * (lo + hi))) > 0.0)
      lo = 0.5 * (lo + hi);
    else
      hi = 0.5 * (lo + hi);
  }
  const PlanarPoint on_curve = at(0.5 * (lo + hi));
  GaitProgram g;
  g.samples.push_back(ColoredSample{0.0, on_curve, Color::Red});
  g.samples.push_back(ColoredSample{1.0, on_curve, Color::Red});
  const ValidationReport r = validate_generalized(g);
  CHECK_FALSE(r.valid());
  CHECK(has_violation(r, ViolationCode::RedStartedOnBoundary));
}

TEST_CASE("malformed gaits are flagged as malformed, not theorem violations") {
  GaitProgram g;
  g.samples.push_back(ColoredSample{0.0, PlanarPoint(0, 0), Color::Blue});
  g.samples.push_back(ColoredSample{0.0, PlanarPoint(0.01, 0), Color::Blue});
  const ValidationReport r = validate_generalized(g);
  CHECK(r.malformed);
  CHECK_FALSE(r.valid());
  CHECK(has_violation(r, ViolationCode::NonIncreasingTime));

  const ValidationReport empty = validate_generalized(GaitProgram{});
  CHECK(empty.malformed);
  CHECK(has_violation(empty, ViolationCode::EmptyGait));
}

TEST_CASE("step bound enforcement") {
  GaitProgram g;
  g.step_bound = 0.05;
  g.samples.push_back(ColoredSample{0.0, PlanarPoint(0, 0), Color::Blue});
  g.samples.push_back(ColoredSample{1.0, PlanarPoint(0.2, 0), Color::Blue});
  const ValidationReport r = validate_generalized(g);
  CHECK_FALSE(r.valid());
  CHECK(has_violation(r, ViolationCode::StepBoundExceeded));
}

TEST_CASE("prefix of a valid gait stays valid") {
  std::mt19937 seed_rng(1234);
  for (int trial = 0; trial < 25; ++trial) {
    oracles::RandomGaitFactory factory(seed_rng());
    GaitProgram g = factory.make(trial);
    REQUIRE(validate_generalized(g).valid());
    std::uniform_int_distribution<std::size_t> cut(1, g.samples.size());
    for (int k = 0; k < 4; ++k) {
      GaitProgram prefix = g;
      prefix.periodic = false;
      prefix.samples.resize(cut(seed_rng));
      CHECK(validate_generalized(prefix).valid());
    }
  }
}

TEST_CASE("low red margin warns without invalidating") {
  // Find a strictly-lower point with |R| between the boundary tolerance and
  // the warning margin: converge on the root along a diagonal, then step
  // into the lower side until R lands in the window.
  double lo = 0.0, hi = 1.0;
  auto at = [](double t) { return PlanarPoint(0.9 * t, -0.9 * t); };
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eval_R(at(mid)) > 0.0 ? lo : hi) = mid;
  }
  PlanarPoint close(0, 0);
  bool found = false;
  for (double delta = 1e-9; delta < 1e-2; delta *= 1.5) {
    const PlanarPoint p = at(hi + delta);
    const double r = eval_R(p);
    if (r < 0.0 && std::fabs(r) > 10 * kBoundaryTol && std::fabs(r) < kRedMarginWarn) {
      close = p;
      found = true;
      break;
    }
  }
  REQUIRE(found);
  REQUIRE(classify_region(close) == RegionLabel::Lower);

  GaitProgram g;
  g.samples.push_back(ColoredSample{0.0, close, Color::Red});
  g.samples.push_back(ColoredSample{1.0, close, Color::Red});
  const ValidationReport r = validate_generalized(g);
  CHECK(r.valid());
  CHECK_FALSE(r.warnings.empty());

  // Passing through the switch point itself stays above the margin.
  const ValidationReport g1 = validate_generalized(preset("gait1"));
  CHECK(g1.valid());
  CHECK(g1.warnings.empty());
}

TEST_CASE("axis-motion constraint") {
  CHECK(validate_axis_motion(staircase()).valid());

  GaitProgram diag = staircase();
  diag.samples.push_back(
      ColoredSample{99.0, PlanarPoint(0.7, 0.2), Color::Blue});
  const ValidationReport r = validate_axis_motion(diag);
  CHECK_FALSE(r.valid());
  CHECK(has_violation(r, ViolationCode::DiagonalStep));

  GaitProgram dwell = staircase();
  dwell.samples.push_back(ColoredSample{99.0, dwell.samples.back().point, Color::Blue});
  const ValidationReport rd = validate_axis_motion(dwell);
  CHECK_FALSE(rd.valid());
  CHECK(has_violation(rd, ViolationCode::ZeroVelocity));

  // Circles take diagonal steps, so the classic constraint rejects them.
  CHECK_FALSE(validate_axis_motion(preset("gait2")).valid());
  CHECK_FALSE(validate_axis_motion(preset("gait3")).valid());
}

TEST_CASE("circle generator") {
  const GaitProgram blue = generate_circle(PlanarPoint(0.5, 0.5), 0.2, Color::Blue, 4.0, 64);
  CHECK(blue.samples.size() == 64);
  CHECK(blue.periodic);
  for (const ColoredSample& s : blue.samples) {
    CHECK(std::fabs(s.point.a1) <= 1.0);
    CHECK(std::fabs(s.point.a2) <= 1.0);
    CHECK(s.color == Color::Blue);
  }
  CHECK(validate_generalized(blue).valid());

  CHECK_THROWS_AS(generate_circle(PlanarPoint(0.9, 0.0), 0.2, Color::Blue, 4.0, 64),
                  GenerationError);
  // Red circle crossing the boundary curve is rejected at construction.
  CHECK_THROWS_AS(generate_circle(PlanarPoint(0.2, -0.2), 0.3, Color::Red, 4.0, 64),
                  GenerationError);
  CHECK_THROWS_AS(generate_circle(PlanarPoint(0, 0), 0.1, Color::Blue, 4.0, 4), GenerationError);

  // Degenerate radius: a constant gait, fine for the generalized rules but
  // not for the classic motion constraint.
  const GaitProgram constant = generate_circle(PlanarPoint(0.3, 0.3), 0.0, Color::Blue, 4.0, 16);
  CHECK(validate_generalized(constant).valid());
  CHECK_FALSE(validate_axis_motion(constant).valid());
}

TEST_CASE("polygon generator") {
  // Square in the upper subspace, constant red.
  const std::vector<PlanarPoint> square{PlanarPoint(-0.6, 0.2), PlanarPoint(-0.2, 0.2),
                                        PlanarPoint(-0.2, 0.6), PlanarPoint(-0.6, 0.6)};
  const GaitProgram red_square = generate_polygon(square, {Color::Red}, 4.0, 64);
  CHECK(validate_generalized(red_square).valid());
  CHECK(validate_generalized(red_square).switch_count == 0);

  // Flip schedule at a vertex away from the switch point is rejected.
  CHECK_THROWS_AS(generate_polygon(square, {Color::Red, Color::Blue}, 4.0, 64),
                  GenerationError);
  // Too few samples for the vertex count.
  CHECK_THROWS_AS(generate_polygon(square, {Color::Red}, 4.0, 11), GenerationError);

  // Triangle through the switch point with a per-lap flip: two switches.
  const GaitProgram tri = generate_polygon(
      {switch_point(), PlanarPoint(0.6, -0.5), PlanarPoint(-0.1, -0.75)},
      {Color::Red, Color::Blue}, 8.0, 96);
  const ValidationReport r = validate_generalized(tri);
  CHECK(r.valid());
  CHECK(r.switch_count == 2);
}

TEST_CASE("complete_gait") {
  GaitProgram constant;
  constant.samples.push_back(ColoredSample{0.0, PlanarPoint(0.3, 0.5), Color::Red});
  constant.samples.push_back(ColoredSample{1.0, PlanarPoint(0.3, 0.5), Color::Red});
  const auto full = complete_gait(constant);
  REQUIRE(full.size() == 2);
  for (const FullGaitSample& s : full) {
    CHECK(s.a1 == 0.3);
    CHECK(s.a2 == 0.5);
    CHECK(s.a3 == 0.3);
    CHECK(s.a4 == 0.5);
  }

  GaitProgram blue_zero;
  blue_zero.samples.push_back(ColoredSample{0.0, PlanarPoint(0, 0), Color::Blue});
  blue_zero.samples.push_back(ColoredSample{1.0, PlanarPoint(0, 0), Color::Blue});
  const auto bz = complete_gait(blue_zero);
  CHECK(bz.front().a3 == doctest::Approx(0.334198).epsilon(1e-15));
  CHECK(bz.front().a4 == doctest::Approx(-0.334198).epsilon(1e-15));

  CHECK_THROWS_AS(complete_gait(preset("e4")), InvalidGait);
}

TEST_CASE("completed gait1 is continuous through the color switch") {
  const GaitProgram g = preset("gait1");
  const auto full = complete_gait(g);
  double max34 = 0.0, max12 = 0.0;
  for (std::size_t i = 1; i < full.size(); ++i) {
    max12 = std::max(max12, std::hypot(full[i].a1 - full[i - 1].a1,
                                       full[i].a2 - full[i - 1].a2));
    max34 = std::max(max34, std::hypot(full[i].a3 - full[i - 1].a3,
                                       full[i].a4 - full[i - 1].a4));
  }
  CHECK(max34 <= max12 + 1e-12);
  CHECK(max34 <= g.step_bound);
}

TEST_CASE("completion norms match per step (isometry up to sign)") {
  std::mt19937 seed_rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    oracles::RandomGaitFactory factory(seed_rng());
    const GaitProgram g = factory.make(trial);
    const auto full = complete_gait(g);
    for (std::size_t i = 1; i < full.size(); ++i) {
      const double d12 = std::hypot(full[i].a1 - full[i - 1].a1, full[i].a2 - full[i - 1].a2);
      const double d34 = std::hypot(full[i].a3 - full[i - 1].a3, full[i].a4 - full[i - 1].a4);
      CHECK(d34 <= d12 + 1e-12);
    }
  }
}

TEST_CASE("bias transform") {
  std::vector<FullGaitSample> full{{0.0, 0.1, -0.2, 0.5, -0.5}, {1.0, 0.3, 0.4, -0.7, 0.9}};
  const auto biased = bias_gait(full, 0.8);
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(biased[i].a1 == full[i].a1);
    CHECK(biased[i].a2 == full[i].a2);
    CHECK(biased[i].a3 == 0.8 * full[i].a3);
    CHECK(biased[i].a4 == 0.8 * full[i].a4);
  }
  const auto identity = bias_gait(full, 1.0);
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(identity[i].a3 == full[i].a3);
    CHECK(identity[i].a4 == full[i].a4);
  }
  const auto zero = bias_gait(full, 0.0);
  for (const auto& s : zero) {
    CHECK(s.a3 == 0.0);
    CHECK(s.a4 == 0.0);
  }

  // Composition: eta1*(eta2*x) == (eta1*eta2)*x up to fp associativity.
  const auto ab = bias_gait(bias_gait(full, 0.9), 0.7);
  const auto combined = bias_gait(full, 0.7 * 0.9);
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(ab[i].a3 == doctest::Approx(combined[i].a3).epsilon(1e-15));
    CHECK(ab[i].a4 == doctest::Approx(combined[i].a4).epsilon(1e-15));
  }
}

TEST_CASE("valid gaits keep a constant-sign hover determinant") {
  const DeterminantModel model = hover_only_model();
  std::mt19937 seed_rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    oracles::RandomGaitFactory factory(seed_rng());
    const GaitProgram g = factory.make(trial);
    REQUIRE(validate_generalized(g).valid());
    const auto full = complete_gait(g);
    int sign = 0;
    for (const FullGaitSample& s : full) {
      const double det = eval_hover_det(s.a1, s.a2, s.a3, s.a4, model);
      CHECK(std::fabs(det) > kBoundaryTol);
      const int this_sign = det > 0.0 ? 1 : -1;
      if (sign == 0) sign = this_sign;
      CHECK(this_sign == sign);
    }
  }
}

TEST_CASE("gait JSON round-trip is bit-exact") {
  std::mt19937 seed_rng(5150);
  oracles::RandomGaitFactory factory(seed_rng());
  GaitProgram g = factory.make(3);
  g.periodic = false;
  g.name = "roundtrip";
  const std::string text = gait_to_json(g);
  const GaitProgram back = gait_from_json(text);
  REQUIRE(back.samples.size() == g.samples.size());
  CHECK(back.periodic == g.periodic);
  CHECK(back.step_bound == g.step_bound);
  CHECK(back.name == g.name);
  for (std::size_t i = 0; i < g.samples.size(); ++i) {
    CHECK(back.samples[i].t == g.samples[i].t);
    CHECK(back.samples[i].point.a1 == g.samples[i].point.a1);
    CHECK(back.samples[i].point.a2 == g.samples[i].point.a2);
    CHECK(back.samples[i].color == g.samples[i].color);
  }
}

TEST_CASE("gait JSON parsing errors") {
  CHECK_THROWS_AS(gait_from_json("{"), ParseError);
  CHECK_THROWS_AS(gait_from_json(R"({"samples": [{"t": 0, "a1": 9, "a2": 0, "color": "red"}]})"),
                  ParseError);  // out of box
  CHECK_THROWS_AS(gait_from_json(R"({"samples": [{"t": 0, "a1": 0, "a2": 0, "color": "pink"}]})"),
                  ParseError);
  CHECK_THROWS_AS(gait_from_json(R"({"generator": {"type": "warp"}})"), ParseError);

  const GaitProgram circle = gait_from_json(
      R"({"generator": {"type": "circle", "center": [0.1, -0.1], "radius": 0.25,
          "color": "blue", "period": 4.0, "n": 64}})");
  CHECK(circle.samples.size() == 64);
  const GaitProgram named = gait_from_json(R"({"generator": {"type": "preset", "name": "e2"}})");
  CHECK(named.name == "e2");
}

TEST_CASE("presets load through the URI scheme") {
  const GaitProgram g = load_gait("presets://gait2");
  CHECK(g.name == "gait2");
  CHECK_THROWS_AS(load_gait("presets://unknown"), ParseError);
  CHECK_THROWS_AS(load_gait("/nonexistent/path.json"), ParseError);
}
