#include "distl0/plot.hpp"

#include "distl0/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace distl0 {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

// Roughly five round-numbered ticks covering [lo, hi].
std::vector<double> linear_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {2.0, 5.0, 10.0}) {
    if (raw / step <= 1.0) break;
    step = mag * m;
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(v);
  return out;
}

}  // namespace

std::string render_svg(std::span<const Series> series, const PlotOptions& options) {
  const auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!options.log_y || y > 0.0);
  };
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size()) throw Error(ErrorKind::InvalidParams, "series '" + s.label + "' has mismatched x/y");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      const double y = options.log_y ? std::log10(s.y[i]) : s.y[i];
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!std::isfinite(x_lo)) throw Error(ErrorKind::InvalidParams, "nothing to plot");
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (options.log_y) {
    y_lo = std::floor(y_lo);
    y_hi = std::max(std::ceil(y_hi), y_lo + 1.0);
  } else if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }

  const double left = 80, right = 170, top = 40, bottom = 60;
  const double w = options.width, h = options.height;
  const double pw = w - left - right, ph = h - top - bottom;
  const auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(options.width) +
         "\" height=\"" + std::to_string(options.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(options.title) + "</text>\n";
  }

  // axes and ticks
  svg += "<g stroke=\"black\" fill=\"none\">\n";
  svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) + "\"/>\n";
  svg += "</g>\n<g>\n";
  for (double xt : linear_ticks(x_lo, x_hi)) {
    const double x = px(xt);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(top + ph) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
           fmt(top + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(top + ph + 18) + "\" text-anchor=\"middle\">" +
           tick_label(xt) + "</text>\n";
  }
  std::vector<double> y_ticks;
  if (options.log_y) {
    const double stride = std::max(1.0, std::ceil((y_hi - y_lo) / 8.0));
    for (double e = y_lo; e <= y_hi + 1e-9; e += stride) y_ticks.push_back(e);
  } else {
    y_ticks = linear_ticks(y_lo, y_hi);
  }
  for (double yt : y_ticks) {
    const double y = py(yt);
    const std::string label = options.log_y ? "1e" + tick_label(yt) : tick_label(yt);
    svg += "<line x1=\"" + fmt(left - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(left + pw) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">" + label + "</text>\n";
  }
  svg += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(h - 15) + "\" text-anchor=\"middle\">" +
         escape(options.x_label) + "</text>\n";
  const std::string y_caption = options.log_y ? options.y_label + " (log)" : options.y_label;
  svg += "<text transform=\"translate(20," + fmt(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(y_caption) + "</text>\n";
  svg += "</g>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      if (!points.empty()) points += ' ';
      points += fmt(px(s.x[i])) + "," + fmt(py(options.log_y ? std::log10(s.y[i]) : s.y[i]));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + points +
           "\"/>\n";
    const double ly = top + 10 + 18 * static_cast<double>(k);
    svg += "<line x1=\"" + fmt(left + pw + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(left + pw + 32) +
           "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(left + pw + 38) + "\" y=\"" + fmt(ly + 4) + "\">" + escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace distl0
