#pragma once

#include <complex>
#include <vector>

#include "specstat/spectrum.hpp"

namespace specstat {

// Vandermonde product prod_{a<b} (E_b - E_a); empty/singleton give 1.
double vandermonde(const std::vector<double> &e);
std::complex<double> vandermonde(const std::vector<std::complex<double>> &e);

// Log joint eigenvalue density of the three Dyson classes, normalized as a
// probability density over R^N. sigma is the Gaussian matrix scale sigma_beta;
// for beta = 4 the per-eigenvalue weight carries the Kramers trace doubling
// (exp[-E^2/sigma^2]).
// Returns -inf on coinciding eigenvalues.
double log_jpdf_dyson(const Spectrum &e, int beta, double sigma);

// Log joint density of the seven non-Dyson classes,
// ~ |Delta(E^2)|^beta prod |E_j|^alpha exp[-E_j^2/(2 sigma_e^2)], normalized
// over R^N. sigma_e is the per-eigenvalue Gaussian scale.
double log_jpdf_az(const Spectrum &e, double alpha, int beta, double sigma_e);

enum class GinibreKind { complex_kind, quaternion_kind };

// Log joint density of Ginibre eigenvalues. complex: over C^N, normalized.
// quaternion: the z are the upper-half-plane representatives, normalized over
// (upper half plane)^N.
double log_jpdf_ginibre(const ComplexSpectrum &z, GinibreKind kind, double sigma);

}  // namespace specstat
