#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specstat/spectrum.hpp"

namespace specstat {

// Smooth level-density model with a closed-form or tabulated CDF; the
// unfolding map is mu = N * (cdf(lambda) - cdf(lambda0)).
class DensityModel {
 public:
  enum class Kind { semicircle, marchenko_pastur, polynomial_cdf, gaussian_broadened, tabulated };

  Kind kind() const { return kind_; }
  double pdf(double x) const;
  double cdf(double x) const;  // integral of pdf from support_lo
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

  std::string to_json() const;
  static DensityModel from_json(const std::string &text);

  // quadrature check of the normalization, used by validation paths
  double integral(double abs_tol = 1e-9) const;

  static DensityModel semicircle(double sigma, int n);
  static DensityModel marchenko_pastur(double ratio, double sigma);
  static DensityModel polynomial(std::vector<double> cheb_coeffs, double lo, double hi);
  static DensityModel gaussian_broadened(std::vector<double> centers, double bandwidth);
  static DensityModel tabulated(Curve density_curve);

 private:
  DensityModel() = default;
  void build_tables();

  Kind kind_ = Kind::semicircle;
  double sigma_ = 1.0;
  int n_ = 1;
  double ratio_ = 1.0;
  std::vector<double> coeffs_;   // Chebyshev coefficients of the fitted CDF
  std::vector<double> centers_;
  double bandwidth_ = 1.0;
  double lo_ = 0.0, hi_ = 1.0;
  // nonnegativity-projected density and its cumulative on a uniform grid
  std::vector<double> grid_pdf_, grid_cdf_;
};

struct UnfoldedSpectrum {
  std::vector<double> values;  // sorted, unit local mean spacing
  double origin = 0.0;         // lambda0
  int clamped = 0;             // count of values outside the model support
  std::string source;
};

// Empirical local mean level spacing on [a, b]: telescoped gap sum over pairs
// with both ends inside the window divided by the pair count.
double mean_level_spacing(const Spectrum &s, double a, double b);

enum class FitMethod { polynomial_cdf, gaussian_broadened };

// Least-squares fit of the pooled empirical CDF (polynomial_cdf, with the
// derivative projected onto nonnegativity) or a Gaussian-broadened empirical
// density. param: polynomial degree (default 7) or bandwidth (default twice
// the global mean spacing).
DensityModel fit_density(const std::vector<Spectrum> &spectra, FitMethod method, double param = 0.0);

UnfoldedSpectrum unfold(const Spectrum &s, const DensityModel &m, double lambda0);

// sign(x) * (2/(3 pi)) |x|^{3/2}: sends soft-edge-scaled values to unit mean
// spacing away from the origin
std::vector<double> soft_edge_map(const std::vector<double> &values);
double soft_edge_map_value(double x);

struct TricomiResult {
  Curve density;
  double a = 0.0, b = 0.0;  // support endpoints
};

// One-cut equilibrium density for a confining potential with derivative
// vprime: solves the endpoint conditions by 2D Newton, then evaluates the
// principal-value formula on the grid (subtracted-singularity form under the
// Chebyshev endpoint weight).
TricomiResult tricomi_density(const std::function<double(double)> &vprime, const std::vector<double> &grid);

}  // namespace specstat
