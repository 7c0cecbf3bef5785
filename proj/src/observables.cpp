#include "specstat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "specstat/errors.hpp"

namespace specstat {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676656;

Histogram histogram_unit_mean(std::vector<double> &samples, double bin_width, double hist_max,
                              const char *name) {
  if (samples.empty()) throw invalid_parameter_error("no samples in window");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  if (mean <= 0.0) throw invalid_parameter_error("degenerate samples: zero mean");

  Histogram h;
  const int nb = static_cast<int>(std::round(hist_max / bin_width));
  h.bin_edges.resize(nb + 1);
  for (int i = 0; i <= nb; ++i) h.bin_edges[i] = i * bin_width;
  h.density.assign(nb, 0.0);
  h.count = samples.size();
  std::size_t inside = 0;
  for (double s : samples) {
    double v = s / mean;
    int b = static_cast<int>(v / bin_width);
    if (b >= 0 && b < nb) {
      h.density[b] += 1.0;
      ++inside;
    }
  }
  const double norm = static_cast<double>(samples.size()) * bin_width;
  for (double &d : h.density) d /= norm;
  h.normalized = inside == samples.size();
  h.meta["name"] = name;
  h.meta["mean_spacing_raw"] = format_double(mean);
  h.meta["first_moment"] = "1";  // exact by rescaling
  return h;
}
}  // namespace

Histogram spacing_histogram(const std::vector<UnfoldedSpectrum> &spectra,
                            std::optional<std::pair<double, double>> window, double bin_width, double hist_max) {
  if (bin_width <= 0.0 || hist_max <= 0.0) throw invalid_parameter_error("bad histogram binning");
  std::vector<double> gaps;
  for (const auto &u : spectra) {
    for (std::size_t j = 0; j + 1 < u.values.size(); ++j) {
      double a = u.values[j], b = u.values[j + 1];
      if (window && (a < window->first || b > window->second)) continue;
      gaps.push_back(b - a);
    }
  }
  if (gaps.empty()) throw invalid_parameter_error("no consecutive pair in window");
  return histogram_unit_mean(gaps, bin_width, hist_max, "spacing_histogram");
}

SpacingRatios spacing_ratios(const std::vector<double> &v) {
  if (v.size() < 3) throw invalid_parameter_error("spacing_ratios needs at least 3 eigenvalues");
  SpacingRatios out;
  out.values.reserve(v.size() - 2);
  double acc = 0.0;
  for (std::size_t j = 1; j + 1 < v.size(); ++j) {
    double s_prev = v[j] - v[j - 1];
    double s_next = v[j + 1] - v[j];
    double mx = std::max(s_prev, s_next);
    double r = mx == 0.0 ? 0.0 : std::min(s_prev, s_next) / mx;
    out.values.push_back(r);
    acc += r;
  }
  out.mean = acc / static_cast<double>(out.values.size());
  return out;
}

SpacingRatios spacing_ratios(const Spectrum &s) { return spacing_ratios(s.values); }

Curve number_variance(const std::vector<UnfoldedSpectrum> &spectra, const std::vector<double> &l_grid, int centers) {
  if (spectra.empty()) throw invalid_parameter_error("number_variance needs input spectra");
  if (centers < 2) throw invalid_parameter_error("number_variance needs >= 2 window centers");
  const bool single = spectra.size() == 1;

  Curve out;
  out.meta["name"] = "number_variance";
  for (double L : l_grid) {
    // per-draw usable range [lo + L/2, hi - L/2]
    double var_sum = 0.0;
    int var_terms = 0;
    bool truncated = false;

    if (single) {
      const auto &v = spectra[0].values;
      double lo = v.front(), hi = v.back();
      if (hi - lo <= L) {
        truncated = true;
      } else {
        double mean = 0.0, m2 = 0.0;
        int cnt = 0;
        for (int c = 0; c < centers; ++c) {
          double x0 = lo + L / 2 + (hi - lo - L) * (c + 0.5) / centers;
          auto i1 = std::lower_bound(v.begin(), v.end(), x0 - L / 2);
          auto i2 = std::upper_bound(v.begin(), v.end(), x0 + L / 2);
          double k = static_cast<double>(i2 - i1);
          ++cnt;
          double d = k - mean;
          mean += d / cnt;
          m2 += d * (k - mean);
        }
        var_sum = m2 / (cnt - 1);
        var_terms = 1;
      }
    } else {
      for (int c = 0; c < centers; ++c) {
        double mean = 0.0, m2 = 0.0;
        int cnt = 0;
        for (const auto &u : spectra) {
          const auto &v = u.values;
          if (v.size() < 2 || v.back() - v.front() <= L) {
            truncated = true;
            continue;
          }
          double x0 = v.front() + L / 2 + (v.back() - v.front() - L) * (c + 0.5) / centers;
          auto i1 = std::lower_bound(v.begin(), v.end(), x0 - L / 2);
          auto i2 = std::upper_bound(v.begin(), v.end(), x0 + L / 2);
          double k = static_cast<double>(i2 - i1);
          ++cnt;
          double d = k - mean;
          mean += d / cnt;
          m2 += d * (k - mean);
        }
        if (cnt >= 2) {
          var_sum += m2 / (cnt - 1);
          ++var_terms;
        }
      }
    }
    if (var_terms == 0) {
      out.meta["warning"] = "L exceeds unfolded range; grid truncated";
      continue;
    }
    if (truncated) out.meta["warning"] = "some draws shorter than L were skipped";
    out.x.push_back(L);
    out.y.push_back(var_sum / var_terms);
  }
  return out;
}

Curve form_factor(const std::vector<UnfoldedSpectrum> &spectra, const std::vector<double> &k_grid) {
  if (spectra.empty()) throw invalid_parameter_error("form_factor needs input spectra");
  const bool single = spectra.size() == 1;
  double nbar = 0.0;
  for (const auto &u : spectra) nbar += static_cast<double>(u.values.size());
  nbar /= static_cast<double>(spectra.size());
  if (nbar == 0.0) throw invalid_parameter_error("form_factor needs nonempty spectra");

  Curve out;
  out.meta["name"] = "form_factor";
  out.meta["convention"] = "S(k) = [<|T|^2> - |<T>|^2]/<N>, T = sum_j exp(2 pi i k mu_j)";
  if (single) out.meta["warning"] = "single spectrum: disconnected part not subtracted";
  for (double k : k_grid) {
    std::complex<double> t_mean(0.0, 0.0);
    double t2_mean = 0.0;
    for (const auto &u : spectra) {
      std::complex<double> t(0.0, 0.0);
      for (double mu : u.values) t += std::polar(1.0, kTwoPi * k * mu);
      t_mean += t;
      t2_mean += std::norm(t);
    }
    t_mean /= static_cast<double>(spectra.size());
    t2_mean /= static_cast<double>(spectra.size());
    double s = single ? t2_mean / nbar : (t2_mean - std::norm(t_mean)) / nbar;
    out.x.push_back(k);
    out.y.push_back(s);
  }
  return out;
}

Curve cluster_2pt(const std::vector<UnfoldedSpectrum> &spectra, const std::vector<double> &lag_grid) {
  if (spectra.empty() || lag_grid.empty()) throw invalid_parameter_error("cluster_2pt needs input");
  // uniform lag bins centred on the grid
  double width = lag_grid.size() > 1 ? lag_grid[1] - lag_grid[0] : std::max(0.1, lag_grid[0]);
  std::vector<double> counts(lag_grid.size(), 0.0);
  std::vector<double> denom(lag_grid.size(), 0.0);

  for (const auto &u : spectra) {
    const auto &v = u.values;
    if (v.size() < 2) continue;
    double span = v.back() - v.front();
    for (std::size_t b = 0; b < lag_grid.size(); ++b) {
      double eff = span - lag_grid[b];
      if (eff > 0.0) denom[b] += eff * width;
    }
    const double maxlag = lag_grid.back() + width;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        double d = v[j] - v[i];
        if (d > maxlag) break;
        int b = static_cast<int>(std::floor((d - lag_grid.front() + width / 2) / width));
        if (b >= 0 && b < static_cast<int>(lag_grid.size())) counts[b] += 1.0;
      }
  }

  Curve out;
  out.meta["name"] = "cluster_2pt";
  for (std::size_t b = 0; b < lag_grid.size(); ++b) {
    if (denom[b] <= 0.0) continue;
    out.x.push_back(lag_grid[b]);
    out.y.push_back(counts[b] / denom[b] - 1.0);
  }
  return out;
}

namespace {

// nearest-neighbour distances; cell-grid acceleration beyond 2000 points
void nn_distances(const std::vector<std::complex<double>> &pts,
                  const std::optional<std::pair<std::complex<double>, double>> &window,
                  std::vector<double> &out) {
  const std::size_t n = pts.size();
  if (n < 2) return;
  auto in_window = [&](const std::complex<double> &z) {
    return !window || std::abs(z - window->first) <= window->second;
  };

  if (n <= 2000) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_window(pts[i])) continue;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        best = std::min(best, std::norm(pts[j] - pts[i]));
      }
      out.push_back(std::sqrt(best));
    }
    return;
  }

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto &z : pts) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  double area = std::max((xmax - xmin) * (ymax - ymin), 1e-300);
  double cell = std::sqrt(area / n) + 1e-300;
  int nx = std::max(1, static_cast<int>((xmax - xmin) / cell) + 1);
  int ny = std::max(1, static_cast<int>((ymax - ymin) / cell) + 1);
  std::vector<std::vector<int>> cells(static_cast<std::size_t>(nx) * ny);
  auto cell_of = [&](const std::complex<double> &z) {
    int cx = std::min(nx - 1, static_cast<int>((z.real() - xmin) / cell));
    int cy = std::min(ny - 1, static_cast<int>((z.imag() - ymin) / cell));
    return std::pair<int, int>(cx, cy);
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto [cx, cy] = cell_of(pts[i]);
    cells[static_cast<std::size_t>(cx) * ny + cy].push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_window(pts[i])) continue;
    auto [cx, cy] = cell_of(pts[i]);
    double best = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring < std::max(nx, ny); ++ring) {
      for (int ax = cx - ring; ax <= cx + ring; ++ax) {
        if (ax < 0 || ax >= nx) continue;
        for (int ay = cy - ring; ay <= cy + ring; ++ay) {
          if (ay < 0 || ay >= ny) continue;
          if (std::max(std::abs(ax - cx), std::abs(ay - cy)) != ring) continue;
          for (int j : cells[static_cast<std::size_t>(ax) * ny + ay]) {
            if (static_cast<std::size_t>(j) == i) continue;
            best = std::min(best, std::norm(pts[j] - pts[i]));
          }
        }
      }
      // once a neighbour is found, one more ring guarantees correctness
      if (best < std::numeric_limits<double>::infinity() &&
          std::sqrt(best) <= (ring)*cell) break;
    }
    out.push_back(std::sqrt(best));
  }
}

}  // namespace

Histogram complex_spacings(const std::vector<ComplexSpectrum> &draws,
                           std::optional<std::pair<std::complex<double>, double>> window, double bin_width,
                           double hist_max) {
  std::vector<double> dists;
  for (const auto &z : draws) {
    if (z.size() < 2) continue;
    nn_distances(z.values, window, dists);
  }
  if (dists.empty()) throw invalid_parameter_error("complex_spacings needs >= 2 points");
  return histogram_unit_mean(dists, bin_width, hist_max, "complex_spacings");
}

Histogram complex_spacings(const ComplexSpectrum &z,
                           std::optional<std::pair<std::complex<double>, double>> window, double bin_width,
                           double hist_max) {
  return complex_spacings(std::vector<ComplexSpectrum>{z}, window, bin_width, hist_max);
}

}  // namespace specstat
