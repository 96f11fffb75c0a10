#include "gaitmap/attitude_map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <ostream>
#include <unordered_map>

namespace gaitmap {

void AttitudeGrid::check() const {
  if (!(phi_min < phi_max) || !(theta_min < theta_max))
    throw std::invalid_argument("AttitudeGrid: ranges must be proper");
  if (resolution < 2) throw std::invalid_argument("AttitudeGrid: resolution must be >= 2");
}

namespace {

struct BlockValues {
  double dz = 0.0, dy = 0.0, dx = 0.0;
  ModelMode mode = ModelMode::HoverOnly;
};

BlockValues block_values(const FullGaitSample& s, const DeterminantModel& model) {
  const std::array<double, 4> sines{std::sin(s.a1), std::sin(s.a2), std::sin(s.a3),
                                    std::sin(s.a4)};
  const std::array<double, 4> cosines{std::cos(s.a1), std::cos(s.a2), std::cos(s.a3),
                                      std::cos(s.a4)};
  BlockValues b;
  b.dz = model.Dz.evaluate(sines, cosines);
  b.dy = model.Dy.evaluate(sines, cosines);
  b.dx = model.Dx.evaluate(sines, cosines);
  b.mode = model.mode;
  return b;
}

// One grid row; shared verbatim by the parallel and reference scans so the
// two fields are bit-identical.
void scan_row(const BlockValues& b, const AttitudeGrid& grid, int i, double* out) {
  const double theta = grid.theta(i);
  if (b.mode == ModelMode::FirstOrder) {
    for (int j = 0; j < grid.resolution; ++j)
      out[j] = b.dz + grid.phi(j) * b.dy - theta * b.dx;
    return;
  }
  const double cth = std::cos(theta), sth = std::sin(theta);
  for (int j = 0; j < grid.resolution; ++j) {
    const double phi = grid.phi(j);
    out[j] = std::cos(phi) * cth * b.dz + std::sin(phi) * cth * b.dy - sth * b.dx;
  }
}

DetField scan_impl(const FullGaitSample& sample, const DeterminantModel& model,
                   const AttitudeGrid& grid, bool parallel) {
  grid.check();
  if (model.mode == ModelMode::HoverOnly)
    throw ModeMismatch("scan_grid: hover-only model cannot map attitudes");
  const BlockValues b = block_values(sample, model);
  DetField field;
  field.grid = grid;
  field.scale = model.scale;
  field.raw.resize(grid.nodes());
  const int res = grid.resolution;
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < res; ++i)
      scan_row(b, grid, i, field.raw.data() + static_cast<std::size_t>(i) * res);
  } else {
    for (int i = 0; i < res; ++i)
      scan_row(b, grid, i, field.raw.data() + static_cast<std::size_t>(i) * res);
  }
  return field;
}

}  // namespace

DetField scan_grid(const FullGaitSample& sample, const DeterminantModel& model,
                   const AttitudeGrid& grid) {
  return scan_impl(sample, model, grid, true);
}

DetField scan_grid_reference(const FullGaitSample& sample, const DeterminantModel& model,
                             const AttitudeGrid& grid) {
  return scan_impl(sample, model, grid, false);
}

std::size_t ContourSet::vertex_count() const {
  std::size_t n = 0;
  for (const auto& pl : polylines) n += pl.size();
  return n;
}

double ContourSet::min_distance_to_origin() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& pl : polylines)
    for (const ContourVertex& v : pl) best = std::min(best, std::hypot(v.phi, v.theta));
  return best;
}

namespace {

// Positive class is raw > 0; exact zeros land on the non-positive side.
inline bool positive(double v) { return v > 0.0; }

// Zero crossing between corner values of opposite class.
inline double crossing(double v0, double v1) { return v0 / (v0 - v1); }

enum CellEdge { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

struct CellGeometry {
  double phi0, phi1, theta0, theta1;
  double v00, v01, v10, v11;  // v<row><col>: row 0 = theta0, col 0 = phi0

  ContourVertex point_on(int edge) const {
    switch (edge) {
      case kBottom: {
        const double t = crossing(v00, v01);
        return {phi0 + t * (phi1 - phi0), theta0};
      }
      case kRight: {
        const double t = crossing(v01, v11);
        return {phi1, theta0 + t * (theta1 - theta0)};
      }
      case kTop: {
        const double t = crossing(v10, v11);
        return {phi0 + t * (phi1 - phi0), theta1};
      }
      default: {
        const double t = crossing(v00, v10);
        return {phi0, theta0 + t * (theta1 - theta0)};
      }
    }
  }
};

// Edge pairs per marching-squares case. Index bits: 1 = v00, 2 = v01,
// 4 = v10, 8 = v11 positive. Saddles (6, 9) are listed empty here and
// resolved at run time by the corner-mean sign.
struct CasePairs {
  int n = 0;
  int e[4] = {0, 0, 0, 0};
};

constexpr CasePairs kCases[16] = {
    {0, {0, 0, 0, 0}},                    // 0000
    {1, {kLeft, kBottom, 0, 0}},          // v00
    {1, {kBottom, kRight, 0, 0}},         // v01
    {1, {kLeft, kRight, 0, 0}},           // v00 v01
    {1, {kTop, kLeft, 0, 0}},             // v10
    {1, {kTop, kBottom, 0, 0}},           // v10 v00
    {0, {0, 0, 0, 0}},                    // v10 v01 (saddle)
    {1, {kTop, kRight, 0, 0}},            // v10 v01 v00
    {1, {kRight, kTop, 0, 0}},            // v11
    {0, {0, 0, 0, 0}},                    // v11 v00 (saddle)
    {1, {kBottom, kTop, 0, 0}},           // v11 v01
    {1, {kLeft, kTop, 0, 0}},             // v11 v01 v00
    {1, {kRight, kLeft, 0, 0}},           // v11 v10
    {1, {kRight, kBottom, 0, 0}},         // v11 v10 v00
    {1, {kBottom, kLeft, 0, 0}},          // v11 v10 v01
    {0, {0, 0, 0, 0}},                    // 1111
};

}  // namespace

std::vector<ContourSegment> extract_segments(const DetField& field) {
  const int res = field.grid.resolution;
  std::vector<ContourSegment> segments;
  for (int i = 0; i + 1 < res; ++i) {
    for (int j = 0; j + 1 < res; ++j) {
      CellGeometry cell{field.grid.phi(j),   field.grid.phi(j + 1),
                        field.grid.theta(i), field.grid.theta(i + 1),
                        field.raw_at(i, j),  field.raw_at(i, j + 1),
                        field.raw_at(i + 1, j), field.raw_at(i + 1, j + 1)};
      const int code = (positive(cell.v00) ? 1 : 0) | (positive(cell.v01) ? 2 : 0) |
                       (positive(cell.v10) ? 4 : 0) | (positive(cell.v11) ? 8 : 0);
      if (code == 0 || code == 15) continue;
      if (code == 6 || code == 9) {
        // Saddle. The center sample decides which diagonal pair stays
        // connected; the two segments then isolate the other two corners.
        // code 6 is positive at v01/v10, code 9 at v00/v11.
        const double center = 0.25 * (cell.v00 + cell.v01 + cell.v10 + cell.v11);
        const bool isolate_bl_tr = (code == 6) == positive(center);
        if (isolate_bl_tr) {
          segments.push_back({cell.point_on(kBottom), cell.point_on(kLeft)});
          segments.push_back({cell.point_on(kTop), cell.point_on(kRight)});
        } else {
          segments.push_back({cell.point_on(kBottom), cell.point_on(kRight)});
          segments.push_back({cell.point_on(kTop), cell.point_on(kLeft)});
        }
        continue;
      }
      const CasePairs& cp = kCases[code];
      for (int k = 0; k < cp.n; ++k)
        segments.push_back({cell.point_on(cp.e[2 * k]), cell.point_on(cp.e[2 * k + 1])});
    }
  }
  return segments;
}

namespace {

struct VertexKey {
  std::uint64_t phi_bits, theta_bits;
  bool operator==(const VertexKey&) const = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const {
    std::uint64_t h = k.phi_bits * 0x9e3779b97f4a7c15ull;
    h ^= k.theta_bits + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

VertexKey key_of(const ContourVertex& v) {
  VertexKey k;
  std::memcpy(&k.phi_bits, &v.phi, sizeof(double));
  std::memcpy(&k.theta_bits, &v.theta, sizeof(double));
  return k;
}

}  // namespace

ContourSet extract_contours(const DetField& field) {
  const std::vector<ContourSegment> segments = extract_segments(field);
  ContourSet out;

  // Chain segments whose endpoints coincide exactly. Adjacent cells
  // interpolate shared edges from the same two corner values, so matching
  // endpoints are bitwise equal and chaining stays deterministic.
  std::vector<std::vector<ContourVertex>> chains;
  std::unordered_map<VertexKey, std::size_t, VertexKeyHash> open_ends;  // endpoint -> chain

  auto detach = [&](const ContourVertex& v) -> std::size_t {
    const auto it = open_ends.find(key_of(v));
    if (it == open_ends.end()) return static_cast<std::size_t>(-1);
    const std::size_t idx = it->second;
    open_ends.erase(it);
    return idx;
  };
  auto register_ends = [&](std::size_t idx) {
    open_ends[key_of(chains[idx].front())] = idx;
    open_ends[key_of(chains[idx].back())] = idx;
  };

  for (const ContourSegment& s : segments) {
    const std::size_t at_a = detach(s.a);
    if (at_a != static_cast<std::size_t>(-1)) {
      auto& chain = chains[at_a];
      open_ends.erase(key_of(chain.front() == s.a ? chain.back() : chain.front()));
      if (chain.front() == s.a) std::reverse(chain.begin(), chain.end());
      chain.push_back(s.b);
      // The new end may close a loop or meet another chain.
      const std::size_t at_b = detach(s.b);
      if (at_b != static_cast<std::size_t>(-1) && at_b != at_a) {
        auto& other = chains[at_b];
        open_ends.erase(key_of(other.front() == s.b ? other.back() : other.front()));
        if (other.front() != s.b) std::reverse(other.begin(), other.end());
        chain.insert(chain.end(), other.begin() + 1, other.end());
        other.clear();
      }
      if (chain.front() != chain.back()) register_ends(at_a);
      continue;
    }
    const std::size_t at_b = detach(s.b);
    if (at_b != static_cast<std::size_t>(-1)) {
      auto& chain = chains[at_b];
      open_ends.erase(key_of(chain.front() == s.b ? chain.back() : chain.front()));
      if (chain.back() != s.b) std::reverse(chain.begin(), chain.end());
      chain.push_back(s.a);
      if (chain.front() != chain.back()) register_ends(at_b);
      continue;
    }
    chains.push_back({s.a, s.b});
    register_ends(chains.size() - 1);
  }

  for (auto& chain : chains)
    if (chain.size() >= 2) out.polylines.push_back(std::move(chain));
  return out;
}

FullGaitSample sample_completed_gait(const std::vector<FullGaitSample>& full, bool periodic,
                                     double period, double t) {
  if (full.empty()) throw std::invalid_argument("sample_completed_gait: empty gait");
  if (full.size() == 1) return full.front();

  auto lerp = [](const FullGaitSample& a, const FullGaitSample& b, double tt) {
    const double span = b.t - a.t;
    const double f = span > 0.0 ? (tt - a.t) / span : 0.0;
    return FullGaitSample{tt, a.a1 + f * (b.a1 - a.a1), a.a2 + f * (b.a2 - a.a2),
                          a.a3 + f * (b.a3 - a.a3), a.a4 + f * (b.a4 - a.a4)};
  };

  if (periodic) {
    double tt = std::fmod(t, period);
    if (tt < 0.0) tt += period;
    if (tt >= full.back().t) {
      // Wrap interval from the last sample back to the first.
      FullGaitSample first = full.front();
      FullGaitSample last = full.back();
      const double span = period - last.t;
      const double f = span > 0.0 ? (tt - last.t) / span : 0.0;
      return FullGaitSample{tt, last.a1 + f * (first.a1 - last.a1),
                            last.a2 + f * (first.a2 - last.a2),
                            last.a3 + f * (first.a3 - last.a3),
                            last.a4 + f * (first.a4 - last.a4)};
    }
    const auto it = std::upper_bound(full.begin(), full.end(), tt,
                                     [](double x, const FullGaitSample& s) { return x < s.t; });
    const std::size_t hi = static_cast<std::size_t>(it - full.begin());
    return lerp(full[hi - 1], full[hi], tt);
  }

  const double tt = std::clamp(t, full.front().t, full.back().t);
  const auto it = std::upper_bound(full.begin(), full.end(), tt,
                                   [](double x, const FullGaitSample& s) { return x < s.t; });
  std::size_t hi = static_cast<std::size_t>(it - full.begin());
  if (hi >= full.size()) hi = full.size() - 1;
  if (hi == 0) hi = 1;
  return lerp(full[hi - 1], full[hi], tt);
}

namespace {

// Flood fill of the origin node's same-sign component, 4-connected.
void origin_component(const DetField& field, std::vector<std::uint8_t>& mask) {
  const int res = field.grid.resolution;
  mask.assign(field.grid.nodes(), 0);
  auto nearest_index = [res](double lo, double hi, double x) {
    const double step = (hi - lo) / (res - 1);
    int idx = static_cast<int>(std::lround((x - lo) / step));
    return std::clamp(idx, 0, res - 1);
  };
  const int j0 = nearest_index(field.grid.phi_min, field.grid.phi_max, 0.0);
  const int i0 = nearest_index(field.grid.theta_min, field.grid.theta_max, 0.0);
  const bool target = positive(field.raw_at(i0, j0));
  std::vector<std::pair<int, int>> stack{{i0, j0}};
  mask[static_cast<std::size_t>(i0) * res + j0] = 1;
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    constexpr int di[4] = {1, -1, 0, 0};
    constexpr int dj[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int ni = i + di[k], nj = j + dj[k];
      if (ni < 0 || nj < 0 || ni >= res || nj >= res) continue;
      std::uint8_t& cell = mask[static_cast<std::size_t>(ni) * res + nj];
      if (cell) continue;
      if (positive(field.raw_at(ni, nj)) == target) {
        cell = 1;
        stack.emplace_back(ni, nj);
      }
    }
  }
}

}  // namespace

GaitMapResult map_for_gait(const GaitProgram& g, const DeterminantModel& model,
                           const AttitudeGrid& grid, int phases, const ValidatorConfig& cfg) {
  return map_for_completed(complete_gait(g, cfg), g.periodic, g.period, model, grid, phases);
}

GaitMapResult map_for_completed(const std::vector<FullGaitSample>& full, bool periodic,
                                double period, const DeterminantModel& model,
                                const AttitudeGrid& grid, int phases) {
  grid.check();
  if (phases < 1) throw std::invalid_argument("map_for_completed: phases must be >= 1");
  if (full.empty()) throw std::invalid_argument("map_for_completed: empty gait");
  const double horizon = periodic ? period : full.back().t;

  GaitMapResult result;
  result.report.grid = grid;
  result.contours.source_phase = -1;

  std::vector<std::uint8_t> acceptable;  // intersection across phases
  std::vector<std::uint8_t> phase_mask;

  for (int k = 0; k < phases; ++k) {
    double t = 0.0;
    if (periodic)
      t = horizon * k / phases;
    else if (phases > 1)
      t = horizon * k / (phases - 1);
    const FullGaitSample at = sample_completed_gait(full, periodic, period, t);
    const DetField field = scan_grid(at, model, grid);
    ContourSet contours = extract_contours(field);
    contours.source_phase = k;

    origin_component(field, phase_mask);
    if (k == 0) {
      acceptable = phase_mask;
      result.first_phase_field = field;
    } else {
      for (std::size_t idx = 0; idx < acceptable.size(); ++idx)
        acceptable[idx] = acceptable[idx] & phase_mask[idx];
    }

    PhaseSummary summary;
    summary.phase = k;
    summary.t = t;
    summary.min_distance = contours.min_distance_to_origin();
    summary.polyline_count = contours.polylines.size();
    std::size_t on = 0;
    for (std::uint8_t m : phase_mask) on += m;
    summary.acceptable_fraction = static_cast<double>(on) / static_cast<double>(grid.nodes());
    result.report.per_phase.push_back(summary);
    result.report.min_distance = std::min(result.report.min_distance, summary.min_distance);

    for (auto& pl : contours.polylines) result.contours.polylines.push_back(pl);
    result.per_phase_contours.push_back(std::move(contours));
  }

  std::size_t on = 0;
  for (std::uint8_t m : acceptable) on += m;
  result.report.acceptable_fraction = static_cast<double>(on) / static_cast<double>(grid.nodes());
  return result;
}

const char* to_string(RobustnessOrdering o) {
  switch (o) {
    case RobustnessOrdering::FirstMoreRobust: return "first more robust";
    case RobustnessOrdering::SecondMoreRobust: return "second more robust";
    default: return "indeterminate";
  }
}

RobustnessOrdering compare_robustness(const RobustnessReport& a, const RobustnessReport& b,
                                      const CompareConfig& cfg) {
  if (!(a.grid == b.grid))
    throw GridMismatch("compare_robustness: reports use different grids");
  const bool a_inf = std::isinf(a.min_distance), b_inf = std::isinf(b.min_distance);
  if (a_inf != b_inf)
    return a_inf ? RobustnessOrdering::FirstMoreRobust : RobustnessOrdering::SecondMoreRobust;
  if (!a_inf) {
    const double diff = a.min_distance - b.min_distance;
    if (std::fabs(diff) >= cfg.min_distance_significance)
      return diff > 0.0 ? RobustnessOrdering::FirstMoreRobust
                        : RobustnessOrdering::SecondMoreRobust;
  }
  const double fdiff = a.acceptable_fraction - b.acceptable_fraction;
  if (std::fabs(fdiff) >= cfg.fraction_significance)
    return fdiff > 0.0 ? RobustnessOrdering::FirstMoreRobust
                       : RobustnessOrdering::SecondMoreRobust;
  return RobustnessOrdering::Indeterminate;
}

namespace {

void append_double(std::string& line, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  line.append(buf, res.ptr);
}

}  // namespace

void write_field_csv(std::ostream& os, const DetField& field) {
  os << "phi,theta,det\n";
  std::string line;
  for (int i = 0; i < field.grid.resolution; ++i) {
    for (int j = 0; j < field.grid.resolution; ++j) {
      line.clear();
      append_double(line, field.grid.phi(j));
      line.push_back(',');
      append_double(line, field.grid.theta(i));
      line.push_back(',');
      append_double(line, field.value(i, j));
      line.push_back('\n');
      os << line;
    }
  }
}

void write_contour_csv(std::ostream& os, const ContourSet& contours) {
  os << "polyline_id,phi,theta\n";
  std::string line;
  for (std::size_t id = 0; id < contours.polylines.size(); ++id) {
    for (const ContourVertex& v : contours.polylines[id]) {
      line.clear();
      line += std::to_string(id);
      line.push_back(',');
      append_double(line, v.phi);
      line.push_back(',');
      append_double(line, v.theta);
      line.push_back('\n');
      os << line;
    }
  }
}

}  // namespace gaitmap
