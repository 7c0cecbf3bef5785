#pragma once

#include <complex>

namespace specstat {

// Airy function of the first kind and its derivative. Absolute accuracy
// ~1e-13 on [-20, 20]; Maclaurin series in extended precision in the middle,
// asymptotic expansions in the tails.
double airy_ai(double x);
double airy_ai_prime(double x);

// int_x^infty Ai(t) dt  (equals 1/3 at x = 0)
double airy_ai_integral(double x);

// Bessel function of the first kind, real order >= -1. Absolute accuracy
// ~1e-12 on x in [0, 50] for the orders used by the hard-edge kernels.
double bessel_j(double order, double x);

// int_0^x J_order(t) dt
double bessel_j_integral(double order, double x);

// sine integral Si(x) = int_0^x sin t / t dt
double sine_integral(double x);

// regularized incomplete gamma functions P(a,x), Q(a,x) = 1 - P(a,x)
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// complementary error function for complex argument (series + Lentz
// continued fraction); matches std::erfc on the real axis
std::complex<double> erfc_complex(std::complex<double> z);

}  // namespace specstat
