#include "specstat/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "specstat/errors.hpp"

namespace specstat {

namespace {

// nodes/weights on [-1,1], cached per order
const std::pair<std::vector<double>, std::vector<double>> &reference_rule(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > 1e-15);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

double panel_gauss(const std::function<double(double)> &f, double a, double b, int n) {
  const auto &[x, w] = reference_rule(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += w[i] * f(mid + half * x[i]);
  return s * half;
}

double adaptive(const std::function<double(double)> &f, double a, double b, double tol, int depth, int max_depth) {
  double coarse = panel_gauss(f, a, b, 10);
  double fine = panel_gauss(f, a, b, 21);
  if (std::abs(fine - coarse) <= tol || depth >= max_depth) return fine;
  double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
         adaptive(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 2) throw invalid_parameter_error("quadrature order must be >= 2");
  const auto &[x, w] = reference_rule(order);
  QuadratureRule r;
  r.order = order;
  r.nodes.resize(order);
  r.weights.resize(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < order; ++i) {
    r.nodes[i] = mid + half * x[i];
    r.weights[i] = w[i] * half;
  }
  return r;
}

double integrate(const std::function<double(double)> &f, double a, double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  return sign * adaptive(f, a, b, abs_tol, 0, max_depth);
}

double integrate_chebyshev_weight(const std::function<double(double)> &f, double a, double b, int order) {
  // x = mid + half*cos(theta) turns the endpoint weight into a flat measure
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < order; ++k) {
    double theta = 3.141592653589793 * (k + 0.5) / order;
    s += f(mid + half * std::cos(theta));
  }
  return s * 3.141592653589793 / order;
}

}  // namespace specstat
