#include "specstat/pfaffian.hpp"

#include <cmath>
#include <limits>

#include "specstat/errors.hpp"

namespace specstat {

namespace {

void check_antisymmetric(const RMatrix &a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw invalid_parameter_error("pfaffian requires a square matrix");
  if (n % 2 != 0) throw invalid_parameter_error("pfaffian requires even dimension");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) return;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(a(i, j) + a(j, i)) > 1e-12 * scale)
        throw invalid_parameter_error("pfaffian requires an antisymmetric matrix");
}

}  // namespace

std::pair<double, double> pfaffian_log(RMatrix a) {
  check_antisymmetric(a);
  const std::size_t n = a.rows();
  if (n == 0) return {1.0, 0.0};

  double sign = 1.0;
  double logabs = 0.0;

  for (std::size_t k = 0; k + 1 < n; k += 2) {
    // pivot: largest |a(i, k)| for i > k
    std::size_t kp = k + 1;
    for (std::size_t i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;

    if (kp != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k + 1, j), a(kp, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, kp));
      sign = -sign;
    }

    double piv = a(k, k + 1);
    if (piv == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
    sign *= piv > 0.0 ? 1.0 : -1.0;
    logabs += std::log(std::abs(piv));

    // Gauss-transform elimination of the pivot pair from the trailing block:
    // A_ij += tau_i c_j - c_i tau_j with tau = A(k, .)/piv, c = A(., k+1)
    if (k + 2 < n) {
      std::vector<double> tau(n), cv(n);
      for (std::size_t j = k + 2; j < n; ++j) {
        tau[j] = a(k, j) / piv;
        cv[j] = a(j, k + 1);
      }
      for (std::size_t i = k + 2; i < n; ++i) {
        const double ti = tau[i], ci = cv[i];
        double *row = a.row(i);
        for (std::size_t j = k + 2; j < n; ++j) row[j] += ti * cv[j] - ci * tau[j];
      }
    }
  }
  return {sign, logabs};
}

double pfaffian(RMatrix a) {
  auto [sign, logabs] = pfaffian_log(std::move(a));
  if (sign == 0.0) return 0.0;
  return sign * std::exp(logabs);
}

}  // namespace specstat
