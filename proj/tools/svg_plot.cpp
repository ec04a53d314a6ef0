#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <klic/errors.hpp>

namespace klic::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::vector<double> ticks(double lo, double hi, int count) {
  std::vector<double> out;
  if (!(hi > lo)) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i <= count; ++i) {
    out.push_back(lo + (hi - lo) * i / count);
  }
  return out;
}

std::string trim_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

void write_svg_curve(const std::filesystem::path& path, const Axes& axes,
                     std::span<const Series> series) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = axes.y_min.value_or(std::numeric_limits<double>::infinity());
  double y_hi = axes.y_max.value_or(-std::numeric_limits<double>::infinity());
  for (const Series& s : series) {
    for (double x : s.x) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
    if (!axes.y_min || !axes.y_max) {
      for (double y : s.y) {
        if (!axes.y_min) y_lo = std::min(y_lo, y);
        if (!axes.y_max) y_hi = std::max(y_hi, y);
      }
    }
  }
  if (!(x_hi > x_lo)) {
    x_hi = x_lo + 1.0;
  }
  if (!(y_hi > y_lo)) {
    y_hi = y_lo + 1.0;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ofstream out(path);
  if (!out) {
    throw invalid_input("write_svg_curve: cannot open " + path.string());
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
      << axes.title << "</text>\n";

  // frame
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(x_lo, x_hi, 6)) {
    const double px = sx(t);
    out << "<line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px << "\" y2=\""
        << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\">" << trim_number(t) << "</text>\n";
  }
  for (double t : ticks(y_lo, y_hi, 5)) {
    const double py = sy(t);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\""
        << py << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
        << trim_number(t) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << axes.x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << kTop + plot_h / 2 << ")\">"
      << axes.y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t p = 0; p < s.x.size(); ++p) {
      out << sx(s.x[p]) << ',' << sy(s.y[p]) << ' ';
    }
    out << "\"/>\n";
    for (std::size_t p = 0; p < s.x.size(); ++p) {
      out << "<circle cx=\"" << sx(s.x[p]) << "\" cy=\"" << sy(s.y[p])
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 16 * i << "\" fill=\"" << color
        << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace klic::plot
