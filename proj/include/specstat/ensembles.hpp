#pragma once

#include <cstdint>
#include <string>

#include "specstat/linalg.hpp"
#include "specstat/rng.hpp"
#include "specstat/spectrum.hpp"

namespace specstat {

// Cartan labels of the ten Hermitian symmetry classes plus the three Ginibre
// ensembles. Chiral classes carry the rectangularity index nu.
enum class Cartan { A, AI, AII, BD, C, AIII, BDI, CII, CI, DIII, GinOE, GinUE, GinSE };

const char *cartan_name(Cartan c);
Cartan cartan_from_name(const std::string &name);

struct EnsembleSpec {
  Cartan cartan = Cartan::A;
  int n = 1;          // block size N
  int nu = 0;         // index (zero-mode count source)
  double sigma = 1.0; // Gaussian scale sigma_beta

  // Validates and applies the sigma convention sigma_4 = sqrt(2) * sigma_1
  // when sigma <= 0 is passed.
  static EnsembleSpec make(Cartan c, int n, int nu = 0, double sigma = 0.0);

  void validate() const;

  int beta() const;          // Dyson index
  double alpha() const;      // origin-repulsion exponent (non-Dyson classes)
  int zero_modes() const;    // generic zero eigenvalue count
  int matrix_dim() const;    // dense dimension of the sampled matrix
  bool hermitian() const { return cartan != Cartan::GinOE && cartan != Cartan::GinUE && cartan != Cartan::GinSE; }
  bool kramers() const { return beta() == 4; }
  bool chiral() const {
    return cartan == Cartan::AIII || cartan == Cartan::BDI || cartan == Cartan::CII || cartan == Cartan::CI ||
           cartan == Cartan::DIII;
  }
};

struct MatrixSample {
  CMatrix entries;
  Cartan structure;
};

// Dense Gaussian sample with the structural constraints of the class holding
// exactly. Deterministic in (spec, seed).
MatrixSample sample_matrix(const EnsembleSpec &spec, std::uint64_t seed);

// Eigenvalues of a fresh sample. Hermitian classes only; sorted real values.
Spectrum sample_spectrum(const EnsembleSpec &spec, std::uint64_t seed);

// Ginibre classes only.
ComplexSpectrum sample_spectrum_complex(const EnsembleSpec &spec, std::uint64_t seed);

// Seed-override hook: diagonalise an explicit matrix as if it were a draw of
// `spec`. Used by tests and the CLI to inject known matrices.
Spectrum spectrum_from_matrix(const EnsembleSpec &spec, const CMatrix &h);
ComplexSpectrum complex_spectrum_from_matrix(const CMatrix &h);

// Matrix text format: one row per line, entries comma separated, complex
// entries written as re:im.
CMatrix parse_matrix_csv(const std::string &text);

// One representative per Kramers pair; throws numeric_error when a value
// cannot be paired within rel_tol of the spectral scale.
Spectrum kramers_reduce(const Spectrum &s, double rel_tol = 1e-8);

// Removes the spec's structural zero modes, which must sit below
// 1e-10 * sigma in magnitude; errors if they are not numerically present.
Spectrum strip_zero_modes(const Spectrum &s, const EnsembleSpec &spec);

// seed stream splitting for Monte-Carlo fans: draw i of a run keyed by
// `master` uses derive_seed(master, i)
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i) {
  return detail::mix64(master ^ detail::mix64(i * 0xd1342543de82ef95ull + 0x9e3779b97f4a7c15ull));
}

}  // namespace specstat
