#pragma once

#include <complex>
#include <vector>

#include "specstat/linalg.hpp"
#include "specstat/special.hpp"

namespace specstat {

// K, D, J triple of a Pfaffian point process (beta = 1, 4 regimes).
// The full J kernel is J + Jsign * sgn(x - y); the distributional part is
// kept separate so operator discretisations can treat it exactly.
struct KernelTriple {
  double K = 0.0, D = 0.0, J = 0.0;
  double Jsign = 0.0;
  double j_total(double x, double y) const { return J + Jsign * (x > y ? 1.0 : (x < y ? -1.0 : 0.0)); }
};

// Limiting / finite-N correlation kernel descriptor.
struct KernelDescriptor {
  enum class Regime { bulk, hard, soft, picket_fence, ginue_bulk, ginue_edge, finite_hermite, finite_laguerre };
  Regime regime = Regime::bulk;
  int beta = 2;       // bulk/hard/soft
  double alpha = 1.0; // hard edge
  int n = 1;          // picket fence, finite-N families
  double sigma = 1.0; // finite_hermite
  double nu = 0.0;    // finite_laguerre
  double phi0 = 0.0;  // ginue_edge boundary point angle

  bool scalar() const;
  void validate() const;

  static KernelDescriptor bulk(int beta);
  static KernelDescriptor hard(int beta, double alpha);
  static KernelDescriptor soft(int beta);
  static KernelDescriptor picket_fence(int n);
  static KernelDescriptor ginue_bulk();
  static KernelDescriptor ginue_edge(double phi0);
  static KernelDescriptor finite_hermite(int n, double sigma);
  static KernelDescriptor finite_laguerre(int n, double nu);
};

// --- bulk (sine) ---------------------------------------------------------------

double sine_kernel(double x, double y);                  // beta = 2 scalar
KernelTriple bulk_triple(int beta, double x, double y);  // beta = 1 or 4

// --- hard edge (Bessel) ----------------------------------------------------------

double hard_edge_scalar(double alpha, double x, double y);  // beta = 2
// symmetrised cocycle gauge of the same kernel (equal determinants)
double hard_edge_scalar_symmetric(double alpha, double x, double y);
KernelTriple hard_edge_triple(int beta, double alpha, double x, double y);
double hard_edge_density(int beta, double alpha, double x);

// --- soft edge (Airy) ------------------------------------------------------------

double soft_edge_scalar(double x, double y);  // beta = 2
KernelTriple soft_edge_triple(int beta, double x, double y);
double soft_edge_density(int beta, double x);

// --- discrete picket fence ---------------------------------------------------------

// Determinant of the counting-measure kernel on integer sites 1..n.
double picket_fence_correlation(const std::vector<int> &points, int n);

// --- Ginibre universal kernels -------------------------------------------------------

// k-point correlation determinant; regime bulk or edge (phi0 used for edge)
double ginue_correlation(const KernelDescriptor &desc, const std::vector<std::complex<double>> &points);

// --- finite-N Christoffel-Darboux kernels ----------------------------------------------

// Hermite (GUE weight exp[-x^2/(2 sigma^2)]): K_N integrates to N on the line.
double hermite_kernel(int n, double sigma, double x, double y);
// Laguerre weight x^nu e^{-x} on [0, inf).
double laguerre_kernel(int n, double nu, double x, double y);

// --- point correlations ------------------------------------------------------------

// det[K(x_a, x_b)] for scalar regimes; throws on triple regimes.
double det_kpoint(const KernelDescriptor &desc, const std::vector<double> &points);
// Pf of the 2k x 2k block [[D, K], [-K^T, J]] for beta = 1, 4 regimes.
double pf_kpoint(const KernelDescriptor &desc, const std::vector<double> &points);

// scalar kernel evaluation dispatch (bulk2/hard2/soft2/finite families)
double kernel_scalar(const KernelDescriptor &desc, double x, double y);
KernelTriple kernel_triple(const KernelDescriptor &desc, double x, double y);

}  // namespace specstat
