#ifndef GAITMAP_ATTITUDE_MAP_HPP
#define GAITMAP_ATTITUDE_MAP_HPP

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "gaitmap/decoupling.hpp"
#include "gaitmap/gait.hpp"

// Unacceptable-attitude maps: determinant fields over the roll-pitch window,
// zero-level contour extraction by marching squares, and the robustness
// metrics used to compare gaits.

namespace gaitmap {

struct AttitudeGrid {
  double phi_min = -1.5, phi_max = 1.5;
  double theta_min = -1.5, theta_max = 1.5;
  int resolution = 601;  // nodes per axis

  void check() const;
  double phi(int j) const { return phi_min + j * (phi_max - phi_min) / (resolution - 1); }
  double theta(int i) const {
    return theta_min + i * (theta_max - theta_min) / (resolution - 1);
  }
  std::size_t nodes() const {
    return static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
  }
  friend bool operator==(const AttitudeGrid&, const AttitudeGrid&) = default;
};

// Determinant samples over a grid. Values are stored unscaled with the model
// scale kept aside, so zero-level geometry is bit-identical for any positive
// scale; value() gives the scaled determinant.
struct DetField {
  AttitudeGrid grid;
  double scale = 1.0;
  std::vector<double> raw;  // row-major, row = theta index, col = phi index

  double raw_at(int i, int j) const {
    return raw[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.resolution) +
               static_cast<std::size_t>(j)];
  }
  double value(int i, int j) const { return scale * raw_at(i, j); }
};

// Parallel row-partitioned scan (OpenMP when enabled) and the serial
// reference it must match bit for bit.
DetField scan_grid(const FullGaitSample& sample, const DeterminantModel& model,
                   const AttitudeGrid& grid);
DetField scan_grid_reference(const FullGaitSample& sample, const DeterminantModel& model,
                             const AttitudeGrid& grid);

struct ContourVertex {
  double phi = 0.0;
  double theta = 0.0;
  friend bool operator==(const ContourVertex&, const ContourVertex&) = default;
};

struct ContourSegment {
  ContourVertex a, b;
};

struct ContourSet {
  std::vector<std::vector<ContourVertex>> polylines;
  int source_phase = -1;  // -1 = union over phases

  std::size_t vertex_count() const;
  double min_distance_to_origin() const;  // +inf when empty
};

// Raw per-cell marching-squares segments in row-major cell order with a
// fixed edge ordering; saddle cells decided by the corner-mean sign.
std::vector<ContourSegment> extract_segments(const DetField& field);

// Segments chained into polylines at exactly matching endpoints.
ContourSet extract_contours(const DetField& field);

struct PhaseSummary {
  int phase = 0;
  double t = 0.0;
  double min_distance = std::numeric_limits<double>::infinity();
  double acceptable_fraction = 0.0;
  std::size_t polyline_count = 0;
};

struct RobustnessReport {
  AttitudeGrid grid;
  double min_distance = std::numeric_limits<double>::infinity();
  double acceptable_fraction = 0.0;
  std::vector<PhaseSummary> per_phase;
};

struct GaitMapResult {
  ContourSet contours;  // union over phases
  RobustnessReport report;
  std::vector<ContourSet> per_phase_contours;
  DetField first_phase_field;
};

// Completes the gait, evaluates `phases` equally spaced time points over one
// period (or the full duration when aperiodic), and unions the per-phase
// zero sets. Acceptable fraction is the share of grid nodes that stay in the
// origin's same-sign component at every phase.
GaitMapResult map_for_gait(const GaitProgram& g, const DeterminantModel& model,
                           const AttitudeGrid& grid, int phases,
                           const ValidatorConfig& cfg = {});

// Same engine on an already-completed (possibly biased) sample list.
GaitMapResult map_for_completed(const std::vector<FullGaitSample>& full, bool periodic,
                                double period, const DeterminantModel& model,
                                const AttitudeGrid& grid, int phases);

// Interpolated four-angle state of a completed gait at time t.
FullGaitSample sample_completed_gait(const std::vector<FullGaitSample>& full, bool periodic,
                                     double period, double t);

enum class RobustnessOrdering : std::uint8_t { FirstMoreRobust, SecondMoreRobust, Indeterminate };

const char* to_string(RobustnessOrdering o);

struct CompareConfig {
  double min_distance_significance = 0.1;   // rad
  double fraction_significance = 0.05;
};

class GridMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// min_distance decides first, acceptable_fraction second; differences below
// both significances are reported indeterminate.
RobustnessOrdering compare_robustness(const RobustnessReport& a, const RobustnessReport& b,
                                      const CompareConfig& cfg = {});

// CSV emission, full round-trip float precision, LF line endings.
void write_field_csv(std::ostream& os, const DetField& field);
void write_contour_csv(std::ostream& os, const ContourSet& contours);

}  // namespace gaitmap

#endif
