#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "specstat/density.hpp"
#include "specstat/spectrum.hpp"

namespace specstat {

// Histogram of consecutive spacings pooled across the ensemble, rescaled to
// unit mean. Pairs must have both ends inside `window` when one is given.
// Bins are uniform of width bin_width on [0, hist_max]; samples beyond the
// range still count toward `count` and the rescaling.
Histogram spacing_histogram(const std::vector<UnfoldedSpectrum> &spectra,
                            std::optional<std::pair<double, double>> window = std::nullopt, double bin_width = 0.1,
                            double hist_max = 4.0);

struct SpacingRatios {
  std::vector<double> values;  // r_j in [0, 1]
  double mean = 0.0;
};

// r_j = min(s_j, s_{j-1}) / max(s_j, s_{j-1}); needs length >= 3.
SpacingRatios spacing_ratios(const Spectrum &s);
SpacingRatios spacing_ratios(const std::vector<double> &sorted_values);

// Number variance Sigma^2(L): variance of the count in [x0 - L/2, x0 + L/2],
// averaged over window positions and draws. With a single spectrum the
// variance is taken across positions (centers should then be large).
Curve number_variance(const std::vector<UnfoldedSpectrum> &spectra, const std::vector<double> &l_grid,
                      int centers = 32);

// Connected spectral form factor S(k) = [<|T|^2> - |<T>|^2] / <N> with
// T = sum_j exp(2 pi i k mu_j); the single-spectrum mode cannot subtract the
// disconnected part and says so in the metadata.
Curve form_factor(const std::vector<UnfoldedSpectrum> &spectra, const std::vector<double> &k_grid);

// Two-point cluster estimate C(lag) = R2_hat(lag) - 1 by translation averaging.
Curve cluster_2pt(const std::vector<UnfoldedSpectrum> &spectra, const std::vector<double> &lag_grid);

// Nearest-neighbour modulus distances of a complex spectrum, rescaled to unit
// mean. Points inside the optional disc contribute a distance; all points act
// as potential neighbours. Brute force up to 2000 points, cell grid above.
Histogram complex_spacings(const std::vector<ComplexSpectrum> &draws,
                           std::optional<std::pair<std::complex<double>, double>> window = std::nullopt,
                           double bin_width = 0.1, double hist_max = 4.0);
Histogram complex_spacings(const ComplexSpectrum &z,
                           std::optional<std::pair<std::complex<double>, double>> window = std::nullopt,
                           double bin_width = 0.1, double hist_max = 4.0);

}  // namespace specstat
