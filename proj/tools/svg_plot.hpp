#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace klic::plot {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::optional<double> y_min;  // auto when unset
  std::optional<double> y_max;
};

// Minimal standalone SVG: axes, ticks, one polyline per series, legend.
void write_svg_curve(const std::filesystem::path& path, const Axes& axes,
                     std::span<const Series> series);

}  // namespace klic::plot
