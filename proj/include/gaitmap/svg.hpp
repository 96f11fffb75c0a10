#ifndef GAITMAP_SVG_HPP
#define GAITMAP_SVG_HPP

#include <string>
#include <vector>

#include "gaitmap/attitude_map.hpp"
#include "gaitmap/gait.hpp"

// Static SVG plots: the planning-plane picture (boundary curve, switch point,
// gait traces) and the roll-pitch map picture (contour overlays).

namespace gaitmap {

struct SvgStyle {
  int width_px = 640;
  int height_px = 640;
  int margin_px = 40;
};

// One stroked polyline set sharing a color, e.g. a gait trace split by color
// or a contour family.
struct PlotLayer {
  std::vector<std::vector<ContourVertex>> polylines;
  std::string color = "#000000";
  double stroke_width = 1.5;
  bool dashed = false;
};

struct PlotMarker {
  double x = 0.0, y = 0.0;
  std::string color = "#e07000";
  std::string label;
};

// Generic framed data plot; one <path> element per polyline.
std::string render_plot_svg(const std::string& title, double x_min, double x_max, double y_min,
                            double y_max, const std::vector<PlotLayer>& layers,
                            const std::vector<PlotMarker>& markers, const SvgStyle& style = {});

// Planning plane: boundary curve of the region function over the box, the
// switch point, and optional gait traces (red/blue per sample color).
std::string render_plane_svg(const std::vector<GaitProgram>& gaits, int curve_resolution = 401,
                             const SvgStyle& style = {});

// Roll-pitch map: one contour family per layer (typically a gait and its
// biased counterpart).
std::string render_map_svg(const std::string& title, const AttitudeGrid& grid,
                           const std::vector<PlotLayer>& contour_layers,
                           const SvgStyle& style = {});

}  // namespace gaitmap

#endif
