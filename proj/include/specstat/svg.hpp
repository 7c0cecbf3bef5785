#pragma once

#include <string>
#include <vector>

#include "specstat/spectrum.hpp"

namespace specstat {

// Minimal static SVG rendering of curves and histograms (data plots only).
std::string render_svg(const std::vector<Curve> &curves, const std::vector<Histogram> &histograms,
                       int width = 640, int height = 420);

}  // namespace specstat
