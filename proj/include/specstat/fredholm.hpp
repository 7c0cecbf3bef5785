#pragma once

#include <functional>

#include "specstat/kernels.hpp"
#include "specstat/quadrature.hpp"
#include "specstat/spectrum.hpp"

namespace specstat {

using ScalarKernelFn = std::function<double(double, double)>;
using TripleKernelFn = std::function<KernelTriple(double, double)>;

// det(I - W^{1/2} K W^{1/2}) on Gauss-Legendre nodes over [a, b]; the
// symmetrised discretisation keeps the matrix symmetric for symmetric kernels.
// Nystrom quadrature converges exponentially for analytic kernels
// (Bornemann, Math. Comp. 79 (2010) 871).
double fredholm_det(const ScalarKernelFn &k, double a, double b, int order = 64);

// same operator evaluated as prod (1 - alpha_j) over the eigenvalues of the
// discretised matrix; independent route used for cross-checks
double fredholm_det_eigenproduct(const ScalarKernelFn &k, double a, double b, int order = 64);

// Fredholm Pfaffian Pf(J_2 - K_F) of a 2x2 matrix-kernel operator by
// block Nystrom discretisation, normalised so the empty interval gives 1.
// The sign term carried by J enters as a bounded multiplication kernel on
// the nodes. Throws if the discretised block is not antisymmetric to 1e-8.
double fredholm_pfaffian(const TripleKernelFn &t, double a, double b, int order = 64);

// P(no eigenvalue in [a, b]) for the kernel described by desc; scalar regimes
// go through fredholm_det, beta = 1, 4 regimes through fredholm_pfaffian.
double gap_probability(const KernelDescriptor &desc, double a, double b, int order = 64);

// Exact bulk level-spacing density p(s) = d^2/ds^2 P(s) on a uniform grid
// (step <= 0.05), via central differences with one Richardson level.
Curve spacing_exact(int beta, const std::vector<double> &s_grid, int order = 64);

enum class ExtremeSide { max, min };

// CDF of the largest (soft edge) or smallest (hard edge) eigenvalue on the
// grid; semi-infinite Airy domains are truncated where the kernel diagonal
// falls below 1e-16.
Curve extreme_cdf(const KernelDescriptor &desc, const std::vector<double> &lambda_grid, ExtremeSide side,
                  int order = 64);

}  // namespace specstat
