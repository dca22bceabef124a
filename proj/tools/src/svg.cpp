#include "mlfc_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mlfc/error.hpp"

namespace mlfc::cli {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 72, kRight = 24, kTop = 40, kBottom = 52;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
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

struct Axis {
  double lo = 0, hi = 1;
  std::vector<double> ticks;
};

Axis make_axis(double lo, double hi, bool log) {
  Axis a;
  if (log) {
    a.lo = std::floor(lo);
    a.hi = std::ceil(hi);
    if (a.hi <= a.lo) a.hi = a.lo + 1;
    double step = std::max(1.0, std::ceil((a.hi - a.lo) / 8));
    for (double t = a.lo; t <= a.hi + 1e-9; t += step) a.ticks.push_back(t);
    return a;
  }
  if (hi <= lo) {
    double pad = lo == 0 ? 1.0 : 0.1 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
  double raw = (hi - lo) / 6;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  a.lo = std::floor(lo / step) * step;
  a.hi = std::ceil(hi / step) * step;
  for (double t = a.lo; t <= a.hi + 1e-9 * step; t += step) a.ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return a;
}

std::string tick_label(double t, bool log) {
  if (log) return fmt("1e%.0f", t);
  return fmt("%g", t);
}

}  // namespace

std::string render_svg(const Plot& plot) {
  struct Pts {
    std::vector<double> x, y;
  };
  std::vector<Pts> pts(plot.series.size());
  bool any_data = false;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (size_t s = 0; s < plot.series.size(); ++s) {
    const auto& ser = plot.series[s];
    if (ser.x.size() != ser.y.size())
      fail(ErrorKind::SvgError, "series '" + ser.name + "' has mismatched x and y lengths");
    for (size_t i = 0; i < ser.x.size(); ++i) {
      double x = ser.x[i], y = ser.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (plot.log_axes) {
        if (x <= 0 || y <= 0) continue;
        x = std::log10(x);
        y = std::log10(y);
      }
      pts[s].x.push_back(x);
      pts[s].y.push_back(y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    if (pts[s].x.empty()) fail(ErrorKind::SvgError, "series '" + ser.name + "' has no plottable points");
    any_data |= ser.role == PlotSeries::Role::Data;
  }
  if (!any_data) fail(ErrorKind::SvgError, "plot '" + plot.title + "' has no data series");

  Axis ax = make_axis(xmin, xmax, plot.log_axes);
  Axis ay = make_axis(ymin, ymax, plot.log_axes);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" viewBox=\"0 0 640 420\">\n";
  o += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  o += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
       escape(plot.title) + "</text>\n";
  o += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  o += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) + "\" width=\"" + fmt("%.2f", pw) +
       "\" height=\"" + fmt("%.2f", ph) + "\"/>\n";
  for (double t : ax.ticks) {
    std::string x = fmt("%.2f", px(t));
    o += "<line x1=\"" + x + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" + x + "\" y2=\"" +
         fmt("%.2f", kTop + ph + 5) + "\"/>\n";
  }
  for (double t : ay.ticks) {
    std::string y = fmt("%.2f", py(t));
    o += "<line x1=\"" + fmt("%.2f", kLeft - 5) + "\" y1=\"" + y + "\" x2=\"" + fmt("%.2f", kLeft) + "\" y2=\"" +
         y + "\"/>\n";
  }
  o += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : ax.ticks)
    o += "<text x=\"" + fmt("%.2f", px(t)) + "\" y=\"" + fmt("%.2f", kTop + ph + 18) +
         "\" text-anchor=\"middle\">" + tick_label(t, plot.log_axes) + "</text>\n";
  for (double t : ay.ticks)
    o += "<text x=\"" + fmt("%.2f", kLeft - 8) + "\" y=\"" + fmt("%.2f", py(t) + 4) + "\" text-anchor=\"end\">" +
         tick_label(t, plot.log_axes) + "</text>\n";
  o += "<text x=\"" + fmt("%.2f", kLeft + pw / 2) + "\" y=\"" + fmt("%.2f", kHeight - 12) +
       "\" text-anchor=\"middle\" font-size=\"13\">" + escape(plot.x_label) + "</text>\n";
  o += "<text x=\"16\" y=\"" + fmt("%.2f", kTop + ph / 2) + "\" text-anchor=\"middle\" font-size=\"13\" " +
       "transform=\"rotate(-90 16 " + fmt("%.2f", kTop + ph / 2) + ")\">" + escape(plot.y_label) + "</text>\n";
  o += "</g>\n";

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (size_t s = 0; s < plot.series.size(); ++s) {
    const auto& ser = plot.series[s];
    const bool data = ser.role == PlotSeries::Role::Data;
    std::string style = std::string("fill=\"none\" stroke=\"") + kColors[s % 4] + "\" stroke-width=\"" +
                        (data ? "2" : "1.5") + "\"" + (data ? "" : " stroke-dasharray=\"6 4\"");
    const char* cls = data ? "data" : "reference";
    if (!data && pts[s].x.size() == 2) {
      o += std::string("<line class=\"") + cls + "\" x1=\"" + fmt("%.2f", px(pts[s].x[0])) + "\" y1=\"" +
           fmt("%.2f", py(pts[s].y[0])) + "\" x2=\"" + fmt("%.2f", px(pts[s].x[1])) + "\" y2=\"" +
           fmt("%.2f", py(pts[s].y[1])) + "\" " + style + "/>\n";
    } else {
      o += std::string("<polyline class=\"") + cls + "\" points=\"";
      for (size_t i = 0; i < pts[s].x.size(); ++i)
        o += (i ? " " : "") + fmt("%.2f", px(pts[s].x[i])) + "," + fmt("%.2f", py(pts[s].y[i]));
      o += "\" " + style + "/>\n";
    }
    double ly = kTop + 16 + 16 * static_cast<double>(s);
    o += "<text x=\"" + fmt("%.2f", kLeft + pw - 10) + "\" y=\"" + fmt("%.2f", ly + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + kColors[s % 4] + "\">" +
         escape(ser.name) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

void write_svg(const Plot& plot, const std::string& path) {
  std::string text = render_svg(plot);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write SVG file '" + path + "'");
  out << text;
  if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

Plot decay_plot(const std::vector<double>& lambdas, const std::vector<double>& abs_values, double exponent,
                const std::string& title) {
  Plot p;
  p.title = title;
  p.x_label = "lambda";
  p.y_label = "|I(lambda)|";
  p.log_axes = true;
  p.series.push_back({"|I|", lambdas, abs_values, PlotSeries::Role::Data});
  double c = 0;
  for (size_t i = 0; i < lambdas.size() && i < abs_values.size(); ++i)
    if (lambdas[i] > 0 && abs_values[i] > 0 && std::isfinite(abs_values[i]))
      c = std::max(c, abs_values[i] * std::pow(lambdas[i], exponent));
  if (c > 0 && !lambdas.empty()) {
    double a = lambdas.front(), b = lambdas.back();
    p.series.push_back({"slope " + fmt("%.4g", -exponent), {a, b},
                        {c * std::pow(a, -exponent), c * std::pow(b, -exponent)}, PlotSeries::Role::Reference});
  }
  return p;
}

Plot field_plot(const std::vector<double>& x, const std::vector<double>& abs_u, const std::string& title) {
  Plot p;
  p.title = title;
  p.x_label = "x";
  p.y_label = "|u(t,x)|";
  p.series.push_back({"|u|", x, abs_u, PlotSeries::Role::Data});
  return p;
}

}  // namespace mlfc::cli
