#pragma once

#include <functional>
#include <vector>

namespace specstat {

// Closed-form reference statistics used in comparison plots and tests.

// level spacing surmise for any beta > 0; unit zeroth and first moments
double wigner_surmise(double beta, double s);

// e^{-s} (dim 1) or (pi/2) s exp(-pi s^2/4) (dim 2)
double poisson_spacing(int dim, double s);

// window-averaged spacing law of independent eigenvalues with density omega
// on [a, b] (mixed exponentials; exactly e^{-s} for constant omega)
double windowed_poisson(double s, const std::function<double(double)> &omega, double a, double b);

// nearest-neighbour spacing density of the complex Ginibre bulk, rescaled to
// unit first moment via the internally re-derived shat
double ginue_spacing(double s);

// commonly quoted value of the GinUE spacing scale
inline constexpr double ginue_shat = 1.143;
// shat re-derived as the mean nearest-neighbour radius (first-moment
// normalisation); agrees with ginue_shat to ~1e-3
double ginue_shat_derived();

// conditional gap function G(r) = P(nearest neighbour farther than r)
double ginue_gap_conditional(double r);

// large-L number variance of the three Dyson bulk statistics
double numvar_asymptotic(int beta, double l);

// closed-form bulk spectral form factor
double sff_closed(int beta, double k);

// Euler-Mascheroni constant
inline constexpr double euler_gamma = 0.57721566490153286060651209008;

// picket fence spacing law: unit atom at s = 1
struct PicketFenceDescriptor {
  double atom = 1.0;
  double cdf(double s) const { return s >= atom ? 1.0 : 0.0; }
  double first_moment() const { return atom; }
};
PicketFenceDescriptor picket_fence_descriptor();

}  // namespace specstat
