#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "opnet/error.hpp"
#include "opnet/io.hpp"
#include "opnet/pipeline.hpp"

namespace opnet {

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 30.0, kBottom = 50.0;
constexpr double kFloorP = 1e-6;  // log-scale floor for p rendering

const char* kTauColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                            "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

double x_of(int m, const SweepRange& sweep) {
  double span = std::max(1, sweep.m_max - sweep.m_min);
  return kLeft + (kWidth - kLeft - kRight) * (m - sweep.m_min) / span;
}

double y_of(double p) {
  double clamped = std::clamp(p, kFloorP, 1.0);
  double t = std::log10(clamped) / std::log10(kFloorP);  // 0 at p=1, 1 at floor
  return kTop + (kHeight - kTop - kBottom) * t;
}

}  // namespace

// Scatter of p vs m, one colour per tau, log-scaled y with a dashed
// p = 0.05 reference line carrying machine-readable metadata.
void write_grid_svg(const PValueGrid& grid, const std::filesystem::path& path) {
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"18\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\">" << grid.label()
      << "</text>\n";

  // Axes.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
      << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\"/>\n";
  for (int m = grid.sweep.m_min; m <= grid.sweep.m_max; ++m) {
    double x = x_of(m, grid.sweep);
    svg << "<text x=\"" << x << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << m << "</text>\n";
  }
  for (double p : {1.0, 0.1, 0.01, 0.001, 0.0001, 0.00001, 0.000001}) {
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y_of(p) + 3
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << format_double(p) << "</text>\n";
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
      << "embedding dimension m</text>\n";

  // p = 0.05 reference.
  svg << "<line class=\"reference\" data-reference-p=\"0.05\" x1=\"" << kLeft
      << "\" y1=\"" << y_of(0.05) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
      << y_of(0.05) << "\" stroke=\"#1f77b4\" stroke-dasharray=\"6 4\"/>\n";
  svg << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << y_of(0.05) - 5
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" "
      << "fill=\"#1f77b4\">p = 0.05</text>\n";

  for (int tau = grid.sweep.tau_min; tau <= grid.sweep.tau_max; ++tau) {
    const char* color =
        kTauColors[(tau - grid.sweep.tau_min) %
                   (sizeof kTauColors / sizeof kTauColors[0])];
    svg << "<g class=\"tau\" data-tau=\"" << tau << "\" fill=\"" << color
        << "\">\n";
    for (int m = grid.sweep.m_min; m <= grid.sweep.m_max; ++m) {
      const GridCell& cell = grid.cell(m, tau);
      if (!cell.p_value) continue;
      svg << "  <circle cx=\"" << x_of(m, grid.sweep) << "\" cy=\""
          << y_of(*cell.p_value) << "\" r=\"3.5\" data-p=\""
          << format_double(*cell.p_value) << "\"/>\n";
    }
    svg << "</g>\n";
    svg << "<text x=\"" << kWidth - kRight - 4 << "\" y=\""
        << kTop + 14 * (tau - grid.sweep.tau_min + 1)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" "
        << "fill=\"" << color << "\">tau = " << tau << "</text>\n";
  }
  svg << "</svg>\n";

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write plot '" + path.string() + "'");
  out << svg.str();
}

}  // namespace opnet
