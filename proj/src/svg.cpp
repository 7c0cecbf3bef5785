#include "specstat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specstat {

namespace {
const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
}

std::string render_svg(const std::vector<Curve> &curves, const std::vector<Histogram> &histograms, int width,
                       int height) {
  double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
  for (const auto &c : curves)
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      xmin = std::min(xmin, c.x[i]);
      xmax = std::max(xmax, c.x[i]);
      ymin = std::min(ymin, c.y[i]);
      ymax = std::max(ymax, c.y[i]);
    }
  for (const auto &h : histograms) {
    if (h.bin_edges.empty()) continue;
    xmin = std::min(xmin, h.bin_edges.front());
    xmax = std::max(xmax, h.bin_edges.back());
    for (double d : h.density) ymax = std::max(ymax, d);
  }
  if (!(xmax > xmin)) {
    xmin = 0.0;
    xmax = 1.0;
  }
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  ymax *= 1.05;

  const double ml = 50, mr = 15, mt = 15, mb = 35;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(xmax) << "\" y2=\"" << py(ymin)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(xmin) << "\" y2=\"" << py(ymax)
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double xv = xmin + (xmax - xmin) * t / 4.0;
    double yv = ymin + (ymax - ymin) * t / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << height - 12 << "\" font-size=\"11\" text-anchor=\"middle\">" << xv
        << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << yv
        << "</text>\n";
  }
  int color = 0;
  for (const auto &h : histograms) {
    for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b) {
      double x0 = px(h.bin_edges[b]), x1 = px(h.bin_edges[b + 1]);
      double y0 = py(0.0), y1 = py(h.density[b]);
      out << "<rect x=\"" << x0 << "\" y=\"" << std::min(y0, y1) << "\" width=\"" << x1 - x0 << "\" height=\""
          << std::abs(y0 - y1) << "\" fill=\"#bbd4ea\" stroke=\"#6688aa\" stroke-width=\"0.5\"/>\n";
    }
  }
  for (const auto &c : curves) {
    out << "<polyline fill=\"none\" stroke=\"" << kColors[color % 6] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < c.x.size(); ++i) out << px(c.x[i]) << "," << py(c.y[i]) << " ";
    out << "\"/>\n";
    auto it = c.meta.find("name");
    if (it != c.meta.end())
      out << "<text x=\"" << width - mr - 6 << "\" y=\"" << mt + 14 * (color + 1) << "\" font-size=\"11\" fill=\""
          << kColors[color % 6] << "\" text-anchor=\"end\">" << it->second << "</text>\n";
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace specstat
