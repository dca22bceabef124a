#pragma once

#include <string>
#include <vector>

namespace mlfc::cli {

struct PlotSeries {
  enum class Role { Data, Reference };
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  Role role = Role::Data;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_axes = false;  // log10 on both axes
  std::vector<PlotSeries> series;
};

// Standalone SVG text; identical input gives identical bytes. On log axes
// points with non-positive coordinates are dropped. SvgError if there is no
// data series or a series has nothing left to draw.
std::string render_svg(const Plot& plot);

// render_svg written to path; IoError if the file cannot be written.
void write_svg(const Plot& plot, const std::string& path);

// Log-log |I| against lambda with one reference line of slope -exponent,
// placed on or above every sample.
Plot decay_plot(const std::vector<double>& lambdas, const std::vector<double>& abs_values, double exponent,
                const std::string& title);

// |u(x)| on linear axes.
Plot field_plot(const std::vector<double>& x, const std::vector<double>& abs_u, const std::string& title);

}  // namespace mlfc::cli
