#include "gaitmap/svg.hpp"

#include <cmath>
#include <sstream>

namespace gaitmap {

namespace {

struct Mapper {
  double x_min, x_max, y_min, y_max;
  SvgStyle style;

  double px(double x) const {
    const double w = style.width_px - 2.0 * style.margin_px;
    return style.margin_px + (x - x_min) / (x_max - x_min) * w;
  }
  double py(double y) const {
    const double h = style.height_px - 2.0 * style.margin_px;
    return style.height_px - style.margin_px - (y - y_min) / (y_max - y_min) * h;
  }
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << v;
  return ss.str();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void emit_polyline(std::ostringstream& svg, const Mapper& m,
                   const std::vector<ContourVertex>& pl, const std::string& color,
                   double stroke_width, bool dashed) {
  if (pl.size() < 2) return;
  svg << "  <path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << stroke_width
      << "\"";
  if (dashed) svg << " stroke-dasharray=\"6 4\"";
  svg << " d=\"";
  for (std::size_t i = 0; i < pl.size(); ++i)
    svg << (i == 0 ? "M" : " L") << fmt(m.px(pl[i].phi)) << " " << fmt(m.py(pl[i].theta));
  svg << "\"/>\n";
}

}  // namespace

std::string render_plot_svg(const std::string& title, double x_min, double x_max, double y_min,
                            double y_max, const std::vector<PlotLayer>& layers,
                            const std::vector<PlotMarker>& markers, const SvgStyle& style) {
  Mapper m{x_min, x_max, y_min, y_max, style};
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width_px
      << "\" height=\"" << style.height_px << "\" viewBox=\"0 0 " << style.width_px << " "
      << style.height_px << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << style.width_px << "\" height=\""
      << style.height_px << "\" fill=\"#ffffff\"/>\n";
  svg << "  <rect x=\"" << style.margin_px << "\" y=\"" << style.margin_px << "\" width=\""
      << style.width_px - 2 * style.margin_px << "\" height=\""
      << style.height_px - 2 * style.margin_px
      << "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
  // Zero axes when inside the window.
  if (x_min < 0.0 && x_max > 0.0)
    svg << "  <line x1=\"" << fmt(m.px(0)) << "\" y1=\"" << style.margin_px << "\" x2=\""
        << fmt(m.px(0)) << "\" y2=\"" << style.height_px - style.margin_px
        << "\" stroke=\"#d0d0d0\" stroke-width=\"1\"/>\n";
  if (y_min < 0.0 && y_max > 0.0)
    svg << "  <line x1=\"" << style.margin_px << "\" y1=\"" << fmt(m.py(0)) << "\" x2=\""
        << style.width_px - style.margin_px << "\" y2=\"" << fmt(m.py(0))
        << "\" stroke=\"#d0d0d0\" stroke-width=\"1\"/>\n";
  for (const PlotLayer& layer : layers)
    for (const auto& pl : layer.polylines)
      emit_polyline(svg, m, pl, layer.color, layer.stroke_width, layer.dashed);
  for (const PlotMarker& marker : markers) {
    svg << "  <circle cx=\"" << fmt(m.px(marker.x)) << "\" cy=\"" << fmt(m.py(marker.y))
        << "\" r=\"4\" fill=\"" << marker.color << "\"/>\n";
    if (!marker.label.empty())
      svg << "  <text x=\"" << fmt(m.px(marker.x) + 7) << "\" y=\"" << fmt(m.py(marker.y) - 7)
          << "\" font-size=\"13\" font-family=\"sans-serif\">" << escape_xml(marker.label)
          << "</text>\n";
  }
  svg << "  <text x=\"" << style.margin_px << "\" y=\"" << style.margin_px - 12
      << "\" font-size=\"15\" font-family=\"sans-serif\">" << escape_xml(title) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string render_plane_svg(const std::vector<GaitProgram>& gaits, int curve_resolution,
                             const SvgStyle& style) {
  // Boundary curve via the same marching-squares engine, on the region
  // function sampled over the planning box.
  AttitudeGrid box;
  box.phi_min = -kBoxBound;
  box.phi_max = kBoxBound;
  box.theta_min = -kBoxBound;
  box.theta_max = kBoxBound;
  box.resolution = curve_resolution;
  box.check();
  DetField field;
  field.grid = box;
  field.scale = 1.0;
  field.raw.resize(box.nodes());
  for (int i = 0; i < box.resolution; ++i)
    for (int j = 0; j < box.resolution; ++j)
      field.raw[static_cast<std::size_t>(i) * box.resolution + j] =
          eval_R(PlanarPoint(box.phi(j), box.theta(i)));
  ContourSet curve = extract_contours(field);

  std::vector<PlotLayer> layers;
  PlotLayer boundary;
  boundary.polylines = curve.polylines;
  boundary.color = "#202020";
  boundary.stroke_width = 2.0;
  layers.push_back(std::move(boundary));

  for (const GaitProgram& g : gaits) {
    // Split the trace into runs of constant color.
    PlotLayer red, blue;
    red.color = "#c03030";
    blue.color = "#3050c0";
    std::vector<ContourVertex> run;
    Color run_color = g.samples.empty() ? Color::Red : g.samples.front().color;
    auto flush = [&]() {
      if (run.size() >= 2)
        (run_color == Color::Red ? red : blue).polylines.push_back(run);
      run.clear();
    };
    for (const ColoredSample& s : g.samples) {
      if (s.color != run_color) {
        run.push_back({s.point.a1, s.point.a2});
        flush();
        run_color = s.color;
      }
      run.push_back({s.point.a1, s.point.a2});
    }
    flush();
    if (!red.polylines.empty()) layers.push_back(std::move(red));
    if (!blue.polylines.empty()) layers.push_back(std::move(blue));
  }

  std::vector<PlotMarker> markers{{kSwitchA1, kSwitchA2, "#e07000", "P"}};
  return render_plot_svg("planning plane: boundary curve and switch point", -kBoxBound,
                         kBoxBound, -kBoxBound, kBoxBound, layers, markers, style);
}

std::string render_map_svg(const std::string& title, const AttitudeGrid& grid,
                           const std::vector<PlotLayer>& contour_layers, const SvgStyle& style) {
  std::vector<PlotMarker> markers{{0.0, 0.0, "#202020", "hover"}};
  return render_plot_svg(title, grid.phi_min, grid.phi_max, grid.theta_min, grid.theta_max,
                         contour_layers, markers, style);
}

}  // namespace gaitmap
