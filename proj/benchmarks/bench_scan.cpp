#include <chrono>
#include <cstring>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gaitmap/attitude_map.hpp"
#include "gaitmap/decoupling.hpp"
#include "gaitmap/gait.hpp"

// Compares the OpenMP row-partitioned grid scan against the serial reference
// and checks that the two fields agree bit for bit.

using namespace gaitmap;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  int resolution = 2001;
  int repeats = 5;
  if (argc > 1) resolution = std::atoi(argv[1]);
  if (argc > 2) repeats = std::atoi(argv[2]);

  const CalibrationResult cal = calibrate_mixing(canonical_hover_table());
  if (!cal.accepted) {
    std::cerr << "calibration failed; benchmarking the hover table anyway\n";
  }
  const DeterminantModel model =
      cal.accepted ? cal.model : (cal.first_order_model ? *cal.first_order_model : cal.model);

  const GaitProgram g = preset("gait3");
  const std::vector<FullGaitSample> full = complete_gait(g);
  const FullGaitSample at = sample_completed_gait(full, g.periodic, g.period, 0.35 * g.period);

  AttitudeGrid grid;
  grid.resolution = resolution;

#ifdef _OPENMP
  std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "OpenMP not enabled; both kernels run serial\n";
#endif
  std::cout << "grid: " << resolution << " x " << resolution << ", repeats: " << repeats
            << "\n";

  double serial_ms = 0.0, parallel_ms = 0.0;
  DetField ref, par;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = Clock::now();
    ref = scan_grid_reference(at, model, grid);
    serial_ms += ms_since(t0);
    t0 = Clock::now();
    par = scan_grid(at, model, grid);
    parallel_ms += ms_since(t0);
  }
  serial_ms /= repeats;
  parallel_ms /= repeats;

  const bool identical =
      ref.raw.size() == par.raw.size() &&
      std::memcmp(ref.raw.data(), par.raw.data(), ref.raw.size() * sizeof(double)) == 0;

  std::cout << "serial reference: " << serial_ms << " ms\n";
  std::cout << "parallel kernel:  " << parallel_ms << " ms\n";
  std::cout << "speedup: " << (parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0) << "x\n";
  std::cout << "fields bit-identical: " << (identical ? "yes" : "NO") << "\n";

  auto t0 = Clock::now();
  const ContourSet contours = extract_contours(ref);
  std::cout << "contour extraction: " << ms_since(t0) << " ms, " << contours.polylines.size()
            << " polylines, " << contours.vertex_count() << " vertices\n";

  return identical ? 0 : 1;
}
