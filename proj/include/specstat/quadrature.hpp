#pragma once

#include <functional>
#include <vector>

namespace specstat {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

// Gauss-Legendre rule on [a, b]; nodes by Newton iteration on P_n.
QuadratureRule gauss_legendre(int order, double a, double b);

// Adaptive panel integration with a nested Gauss error estimate
// (half-order rule against full order); bisects until the absolute
// tolerance is met.
double integrate(const std::function<double(double)> &f, double a, double b, double abs_tol = 1e-11,
                 int max_depth = 48);

// Chebyshev-Gauss evaluation of  int_a^b f(x) / sqrt((b-x)(x-a)) dx.
double integrate_chebyshev_weight(const std::function<double(double)> &f, double a, double b, int order = 128);

}  // namespace specstat
