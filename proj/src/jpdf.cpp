#include "specstat/jpdf.hpp"

#include <cmath>
#include <limits>

#include "specstat/errors.hpp"

namespace specstat {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLogPi = 1.14472988584940017414342735135;
constexpr double kLog2Pi = 1.83787706640934548356065947281;
}  // namespace

double vandermonde(const std::vector<double> &e) {
  double p = 1.0;
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b) p *= e[b] - e[a];
  return p;
}

std::complex<double> vandermonde(const std::vector<std::complex<double>> &e) {
  std::complex<double> p(1.0, 0.0);
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b) p *= e[b] - e[a];
  return p;
}

double log_jpdf_dyson(const Spectrum &e, int beta, double sigma) {
  if (beta != 1 && beta != 2 && beta != 4) throw invalid_parameter_error("Dyson index must be 1, 2 or 4");
  if (sigma <= 0.0) throw invalid_parameter_error("sigma must be positive");
  const std::size_t n = e.size();
  if (n == 0) return 0.0;
  // Kramers trace doubling: the beta=4 matrix weight exp[-tr H^2/(2 sigma^2)]
  // carries each eigenvalue twice
  const double se = (beta == 4) ? sigma / std::sqrt(2.0) : sigma;
  const double g = 0.5 * beta;

  double lp = 0.0;
  for (double x : e.values) lp -= x * x / (2.0 * se * se);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      double d = std::abs(e.values[b] - e.values[a]);
      if (d == 0.0) return kNegInf;
      lp += beta * std::log(d);
    }

  // Mehta integral: int |Delta|^beta exp(-sum x^2/2) = (2 pi)^{N/2} prod Gamma(1+j g)/Gamma(1+g)
  double logz = (n + g * n * (n - 1)) * std::log(se) + 0.5 * n * kLog2Pi;
  for (std::size_t j = 1; j <= n; ++j) logz += std::lgamma(1.0 + j * g) - std::lgamma(1.0 + g);
  return lp - logz;
}

double log_jpdf_az(const Spectrum &e, double alpha, int beta, double sigma_e) {
  if (alpha < 0.0) throw invalid_parameter_error("alpha must be nonnegative");
  if (beta != 1 && beta != 2 && beta != 4) throw invalid_parameter_error("Dyson index must be 1, 2 or 4");
  if (sigma_e <= 0.0) throw invalid_parameter_error("sigma must be positive");
  const std::size_t n = e.size();
  if (n == 0) return 0.0;
  const double g = 0.5 * beta;
  const double a = 0.5 * (alpha + 1.0);

  double lp = 0.0;
  for (double x : e.values) {
    lp -= x * x / (2.0 * sigma_e * sigma_e);
    if (alpha > 0.0) {
      if (x == 0.0) return kNegInf;
      lp += alpha * std::log(std::abs(x));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = std::abs(e.values[j] * e.values[j] - e.values[i] * e.values[i]);
      if (d == 0.0) return kNegInf;
      lp += beta * std::log(d);
    }

  // Laguerre Selberg integral after x = E^2:
  // Z = (2 s^2)^{N a + g N(N-1)} prod_j Gamma(a + j g) Gamma(1 + (j+1) g) / Gamma(1 + g)
  double logz = (n * a + g * n * (n - 1)) * std::log(2.0 * sigma_e * sigma_e);
  for (std::size_t j = 0; j < n; ++j)
    logz += std::lgamma(a + j * g) + std::lgamma(1.0 + (j + 1) * g) - std::lgamma(1.0 + g);
  return lp - logz;
}

double log_jpdf_ginibre(const ComplexSpectrum &z, GinibreKind kind, double sigma) {
  if (sigma <= 0.0) throw invalid_parameter_error("sigma must be positive");
  const std::size_t n = z.size();
  if (n == 0) return 0.0;

  if (kind == GinibreKind::complex_kind) {
    double lp = 0.0;
    for (auto w : z.values) lp -= std::norm(w) / (2.0 * sigma * sigma);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        double d = std::abs(z.values[b] - z.values[a]);
        if (d == 0.0) return kNegInf;
        lp += 2.0 * std::log(d);
      }
    // Z = (2 sigma^2)^{N(N+1)/2} N! pi^N prod_{j<N} j!
    double logz = 0.5 * n * (n + 1) * std::log(2.0 * sigma * sigma) + std::lgamma(n + 1.0) + n * kLogPi;
    for (std::size_t j = 1; j < n; ++j) logz += std::lgamma(j + 1.0);
    return lp - logz;
  }

  // quaternion: |Delta_2N(z, z*)| prod |z_j - z_j*| with weight exp(-|z|^2/sigma^2),
  // z taken as the upper-half-plane representatives
  double lp = 0.0;
  for (auto w : z.values) {
    lp -= std::norm(w) / (sigma * sigma);
    double im2 = 2.0 * std::abs(w.imag());
    if (im2 == 0.0) return kNegInf;
    lp += 2.0 * std::log(im2);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      double d = std::abs(z.values[b] - z.values[a]);
      double dc = std::abs(z.values[b] - std::conj(z.values[a]));
      if (d == 0.0 || dc == 0.0) return kNegInf;
      lp += 2.0 * (std::log(d) + std::log(dc));
    }
  // Z = N! sigma^{2N(N+1)} prod_j pi (2j-1)!   (skew-orthogonal monomial norms)
  double logz = std::lgamma(n + 1.0) + 2.0 * n * (n + 1) * std::log(sigma);
  for (std::size_t j = 1; j <= n; ++j) logz += kLogPi + std::lgamma(2.0 * j);
  return lp - logz;
}

}  // namespace specstat
