#pragma once

#include "specstat/linalg.hpp"

namespace specstat {

// Pfaffian of an even-dimensional antisymmetric matrix by Parlett-Reid
// skew-symmetric tridiagonalisation with partial pivoting, O(n^3).
// See https://arxiv.org/abs/1102.3440 for the algorithm.
// Throws invalid_parameter_error on odd dimension or asymmetry beyond 1e-12
// relative to the largest entry.
double pfaffian(RMatrix a);

// log |Pf| with sign, for large matrices
std::pair<double, double> pfaffian_log(RMatrix a);  // (sign, log|Pf|)

}  // namespace specstat
