#pragma once

// Minimal self-contained SVG line charts: vertically stacked panels, each
// with a frame, min/max axis labels and one polyline per series. Non-finite
// points break a polyline.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hrsync::svg {

struct Series {
  explicit Series(std::string name = {}, bool dash = false) : label(std::move(name)), dashed(dash) {}

  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void settle() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (lo == hi) lo -= 0.5, hi += 0.5;
  }
};

inline constexpr std::array<const char*, 4> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

// Keeps at most ~4000 points per polyline.
inline std::size_t stride_for(std::size_t n) { return std::max<std::size_t>(1, n / 4000); }

}  // namespace detail

inline std::string render(std::span<const Panel> panels, int width = 900, int panel_height = 260) {
  constexpr double left = 70, right = 20, top = 30, bottom = 45;
  const int height = panel_height * static_cast<int>(panels.size());
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double y0 = static_cast<double>(p) * panel_height;
    const double plot_w = width - left - right;
    const double plot_h = panel_height - top - bottom;

    detail::Range xr, yr;
    for (const auto& s : panel.series) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
          xr.add(s.x[i]);
          yr.add(s.y[i]);
        }
      }
    }
    xr.settle();
    yr.settle();
    const auto sx = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    const auto sy = [&](double v) { return y0 + top + (yr.hi - v) / (yr.hi - yr.lo) * plot_h; };

    out += "<text x=\"" + detail::px(left) + "\" y=\"" + detail::px(y0 + 18) +
           "\" font-size=\"13\">" + detail::escape(panel.title) + "</text>\n";
    out += "<rect x=\"" + detail::px(left) + "\" y=\"" + detail::px(y0 + top) + "\" width=\"" +
           detail::px(plot_w) + "\" height=\"" + detail::px(plot_h) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (yr.lo < 0.0 && yr.hi > 0.0) {
      out += "<line x1=\"" + detail::px(left) + "\" x2=\"" + detail::px(left + plot_w) +
             "\" y1=\"" + detail::px(sy(0.0)) + "\" y2=\"" + detail::px(sy(0.0)) +
             "\" stroke=\"#bbb\" stroke-dasharray=\"2,3\"/>\n";
    }
    // axis extremes
    out += "<text x=\"" + detail::px(left - 5) + "\" y=\"" + detail::px(y0 + top + 4) +
           "\" text-anchor=\"end\">" + detail::num(yr.hi) + "</text>\n";
    out += "<text x=\"" + detail::px(left - 5) + "\" y=\"" + detail::px(y0 + top + plot_h) +
           "\" text-anchor=\"end\">" + detail::num(yr.lo) + "</text>\n";
    out += "<text x=\"" + detail::px(left) + "\" y=\"" + detail::px(y0 + top + plot_h + 15) +
           "\" text-anchor=\"middle\">" + detail::num(xr.lo) + "</text>\n";
    out += "<text x=\"" + detail::px(left + plot_w) + "\" y=\"" +
           detail::px(y0 + top + plot_h + 15) + "\" text-anchor=\"middle\">" + detail::num(xr.hi) +
           "</text>\n";
    out += "<text x=\"" + detail::px(left + plot_w / 2) + "\" y=\"" +
           detail::px(y0 + top + plot_h + 32) + "\" text-anchor=\"middle\">" +
           detail::escape(panel.x_label) + "</text>\n";
    out += "<text transform=\"translate(14," + detail::px(y0 + top + plot_h / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + detail::escape(panel.y_label) + "</text>\n";

    for (std::size_t k = 0; k < panel.series.size(); ++k) {
      const Series& s = panel.series[k];
      const char* color = detail::kColors[k % detail::kColors.size()];
      const std::string style = std::string("\" fill=\"none\" stroke=\"") + color +
                                "\" stroke-width=\"1\"" +
                                (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
      std::string points;
      const std::size_t n = std::min(s.x.size(), s.y.size());
      const std::size_t stride = detail::stride_for(n);
      for (std::size_t i = 0; i < n; i += stride) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
          if (!points.empty()) out += "<polyline points=\"" + points + style;
          points.clear();
          continue;
        }
        if (!points.empty()) points += ' ';
        points += detail::px(sx(s.x[i])) + "," + detail::px(sy(s.y[i]));
      }
      if (!points.empty()) out += "<polyline points=\"" + points + style;

      const double ly = y0 + 18;
      const double lx = left + plot_w - 160.0 * static_cast<double>(panel.series.size() - k);
      out += "<line x1=\"" + detail::px(lx) + "\" x2=\"" + detail::px(lx + 20) + "\" y1=\"" +
             detail::px(ly - 4) + "\" y2=\"" + detail::px(ly - 4) + "\" stroke=\"" + color +
             "\"" + (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
      out += "<text x=\"" + detail::px(lx + 24) + "\" y=\"" + detail::px(ly) + "\">" +
             detail::escape(s.label) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hrsync::svg
