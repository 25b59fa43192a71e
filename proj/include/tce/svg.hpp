#pragma once

// Deterministic SVG rendering of outlines and assemblies. Scene y points up;
// the document flips it. Coordinates print with a fixed number of decimals so
// identical input gives identical bytes.

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "tce/geom.hpp"
#include "tce/tangram.hpp"

namespace tce {

struct SvgStyle {
  double pixels = 400;   // longer side of the viewport
  double margin = 0.05;  // fraction of the larger extent
  int decimals = 4;
  bool annotate_vertices = false;
};

struct Viewport {
  double min_x = 0, min_y = 0, max_x = 1, max_y = 1;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

namespace detail {

inline std::string svg_num(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos) s = s.front() == '-' ? s.substr(1) : s;
  return s;
}

inline std::string xml_escape(const std::string& s) {
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

inline Viewport bounds_of(const std::vector<FloatPolygon>& polys, double margin) {
  Viewport v{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : polys) {
    for (const auto& q : p.vertices()) {
      v.min_x = std::min(v.min_x, q.x);
      v.min_y = std::min(v.min_y, q.y);
      v.max_x = std::max(v.max_x, q.x);
      v.max_y = std::max(v.max_y, q.y);
    }
  }
  if (!(v.min_x <= v.max_x)) return Viewport{};
  const double pad = margin * std::max({v.width(), v.height(), 1e-9});
  return {v.min_x - pad, v.min_y - pad, v.max_x + pad, v.max_y + pad};
}

inline std::string path_data(const FloatPolygon& p, const Viewport& v, int decimals) {
  std::string d;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d += i ? " L " : "M ";
    d += svg_num(p[i].x - v.min_x, decimals) + " " + svg_num(v.max_y - p[i].y, decimals);
  }
  d += " Z";
  return d;
}

inline const std::array<const char*, 7>& piece_fills() {
  static const std::array<const char*, 7> kFills{"#e4572e", "#f3a712", "#a8c686", "#669bbc",
                                                 "#29335c", "#db2b39", "#8e6c8a"};
  return kFills;
}

/// Body of a scene without the enclosing <svg> element.
inline std::string scene_body(const std::vector<FloatPolygon>& polys, const std::vector<std::string>& fills,
                              const std::vector<std::vector<std::string>>& labels, const Viewport& v,
                              const SvgStyle& style, bool stroke) {
  std::ostringstream os;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    os << "<path d=\"" << path_data(polys[i], v, style.decimals) << "\" fill=\"" << fills[i] << "\"";
    if (stroke) {
      os << " stroke=\"#000000\" stroke-width=\"" << svg_num(0.01 * std::max(v.width(), v.height()), style.decimals)
         << "\" stroke-linejoin=\"round\"";
    } else {
      os << " stroke=\"none\"";
    }
    os << "/>\n";
  }
  if (style.annotate_vertices) {
    const double size = 0.035 * std::max(v.width(), v.height());
    for (std::size_t i = 0; i < polys.size() && i < labels.size(); ++i) {
      for (std::size_t k = 0; k < polys[i].size() && k < labels[i].size(); ++k) {
        os << "<text x=\"" << svg_num(polys[i][k].x - v.min_x, style.decimals) << "\" y=\""
           << svg_num(v.max_y - polys[i][k].y, style.decimals) << "\" font-size=\"" << svg_num(size, style.decimals)
           << "\" font-family=\"monospace\" fill=\"#c00000\">" << xml_escape(labels[i][k]) << "</text>\n";
      }
    }
  }
  return os.str();
}

inline std::string svg_document(const std::string& body, const Viewport& v, const SvgStyle& style) {
  const double scale = style.pixels / std::max({v.width(), v.height(), 1e-9});
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(v.width() * scale, 0) << "\" height=\""
     << svg_num(v.height() * scale, 0) << "\" viewBox=\"0 0 " << svg_num(v.width(), style.decimals) << " "
     << svg_num(v.height(), style.decimals) << "\">\n"
     << body << "</svg>\n";
  return os.str();
}

inline std::vector<std::string> vertex_labels(const Polygon& p) {
  std::vector<std::string> out;
  for (const auto& q : p.vertices()) out.push_back("(" + format_scalar(q.x) + ", " + format_scalar(q.y) + ")");
  return out;
}

}  // namespace detail

/// Filled silhouette.
inline std::string render_svg(const Outline& outline, const SvgStyle& style = {}) {
  const std::vector<FloatPolygon> polys{float_polygon(outline.vertices)};
  const Viewport v = detail::bounds_of(polys, style.margin);
  const std::string body =
      detail::scene_body(polys, {"#202020"}, {detail::vertex_labels(outline.vertices)}, v, style, false);
  return detail::svg_document(body, v, style);
}

/// Assembly with piece boundaries drawn.
inline std::string render_svg(const std::vector<PieceState>& pieces, const SvgStyle& style = {}) {
  std::vector<FloatPolygon> polys;
  std::vector<std::string> fills;
  std::vector<std::vector<std::string>> labels;
  for (const auto& p : pieces) {
    polys.push_back(float_polygon(p.vertices));
    fills.emplace_back(detail::piece_fills()[index_of(p.kind)]);
    labels.push_back(detail::vertex_labels(p.vertices));
  }
  const Viewport v = detail::bounds_of(polys, style.margin);
  return detail::svg_document(detail::scene_body(polys, fills, labels, v, style, true), v, style);
}

/// 2x2 grid of silhouettes labelled in reading order.
inline std::string render_grid_svg(const std::vector<Outline>& panels, const std::vector<std::string>& labels,
                                   const SvgStyle& style = {}) {
  const double cell = style.pixels / 2;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::svg_num(style.pixels, 0) << "\" height=\""
     << detail::svg_num(style.pixels, 0) << "\" viewBox=\"0 0 " << detail::svg_num(style.pixels, 0) << " "
     << detail::svg_num(style.pixels, 0) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << detail::svg_num(style.pixels, 0) << "\" height=\""
     << detail::svg_num(style.pixels, 0) << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const double x = cell * static_cast<double>(i % 2);
    const double y = cell * static_cast<double>(i / 2);
    const std::vector<FloatPolygon> polys{float_polygon(panels[i].vertices)};
    // Square viewport centred on the silhouette, so panels share one scale rule.
    Viewport v = detail::bounds_of(polys, style.margin);
    const double side = std::max(v.width(), v.height());
    const double cx = (v.min_x + v.max_x) / 2, cy = (v.min_y + v.max_y) / 2;
    v = {cx - side / 2, cy - side / 2, cx + side / 2, cy + side / 2};
    SvgStyle inner = style;
    inner.annotate_vertices = false;
    os << "<g class=\"panel\">\n";
    os << "<svg x=\"" << detail::svg_num(x, 2) << "\" y=\"" << detail::svg_num(y + 0.12 * cell, 2) << "\" width=\""
       << detail::svg_num(cell, 2) << "\" height=\"" << detail::svg_num(0.88 * cell, 2) << "\" viewBox=\"0 0 "
       << detail::svg_num(side, style.decimals) << " " << detail::svg_num(side, style.decimals) << "\">\n";
    os << detail::scene_body(polys, {"#202020"}, {}, v, inner, false);
    os << "</svg>\n";
    os << "<text x=\"" << detail::svg_num(x + 0.05 * cell, 2) << "\" y=\"" << detail::svg_num(y + 0.1 * cell, 2)
       << "\" font-size=\"" << detail::svg_num(0.09 * cell, 2) << "\" font-family=\"sans-serif\">"
       << detail::xml_escape(i < labels.size() ? labels[i] : std::string()) << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tce
