#include "specstat/special.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "specstat/errors.hpp"
#include "specstat/quadrature.hpp"

namespace specstat {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Ai(0) and -Ai'(0); full quad precision, the series cancellation scales
// the constant error by exp((2/3)|x|^{3/2})
constexpr __float128 kAi0 = 0.3550280538878172392600631860041831763979791741991979Q;
constexpr __float128 kAip0 = 0.2588194037928067984051835601892039634790845416429603Q;

// u_k coefficients of the Airy asymptotic series and the v_k of Ai'
struct AiryAsym {
  std::vector<long double> u, v;
  AiryAsym() : u(24), v(24) {
    u[0] = v[0] = 1.0L;
    for (int k = 0; k + 1 < 24; ++k) {
      long double kk = k;
      u[k + 1] = u[k] * (6 * kk + 5) * (6 * kk + 3) * (6 * kk + 1) / (216 * (kk + 1) * (2 * kk + 1));
      v[k + 1] = -u[k + 1] * (6 * (kk + 1) + 1) / (6 * (kk + 1) - 1);
    }
  }
};
const AiryAsym &airy_asym() {
  static const AiryAsym a;
  return a;
}

// Maclaurin series for Ai and Ai'. The partial sums peak at ~exp(zeta) with
// zeta = (2/3)|x|^{3/2}, so the floating type sets the usable radius:
// long double to |x| ~ 5, __float128 to |x| ~ 11.5.
template <typename F>
void airy_series_t(double x, double &ai, double &aip) {
  const F lx = x;
  F f = F(1), g = lx;          // term_k of f(x), g(x)
  F fs = f, gs = g;            // sums
  F fps = F(0), gps = F(1);    // derivative sums
  const F x3 = lx * lx * lx;
  for (int k = 0; k < 260; ++k) {
    F fnew = f * x3 / F((3.0 * k + 2) * (3.0 * k + 3));
    F gnew = g * x3 / F((3.0 * k + 3) * (3.0 * k + 4));
    fs += fnew;
    gs += gnew;
    if (x != 0.0) {
      fps += fnew * F(3.0 * k + 3) / lx;
      gps += gnew * F(3.0 * k + 4) / lx;
    }
    f = fnew;
    g = gnew;
    double fd = static_cast<double>(fnew), gd = static_cast<double>(gnew);
    if (k > 4 && std::abs(fd) < 1e-40 && std::abs(gd) < 1e-40) break;
  }
  ai = static_cast<double>(F(kAi0) * fs - F(kAip0) * gs);
  aip = static_cast<double>(F(kAi0) * fps - F(kAip0) * gps);
}

void airy_series(double x, double &ai, double &aip) {
  if (std::abs(x) <= 5.0)
    airy_series_t<long double>(x, ai, aip);
  else
    airy_series_t<__float128>(x, ai, aip);
}

void airy_asym_pos(double x, double &ai, double &aip) {
  const auto &A = airy_asym();
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  long double su = 0.0L, sv = 0.0L, pw = 1.0L;
  long double prev = std::numeric_limits<long double>::max();
  for (int k = 0; k < 24; ++k) {
    long double tu = A.u[k] * pw;
    if (std::abs((double)tu) > std::abs((double)prev)) break;
    su += (k % 2 == 0 ? tu : -tu);
    sv += (k % 2 == 0 ? A.v[k] * pw : -A.v[k] * pw);
    prev = tu;
    pw /= zeta;
  }
  double pre = std::exp(-zeta) / (2.0 * std::sqrt(kPi));
  ai = pre * (double)su / std::pow(x, 0.25);
  aip = -pre * (double)sv * std::pow(x, 0.25);
}

void airy_asym_neg(double x, double &ai, double &aip) {
  const auto &A = airy_asym();
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  // even/odd split: sum (-1)^k u_{2k} zeta^{-2k}, sum (-1)^k u_{2k+1} zeta^{-2k-1}
  long double se = 0.0L, so = 0.0L, pe = 0.0L, po = 0.0L;
  long double zin = 1.0L;
  for (int k = 0; 2 * k + 1 < 24; ++k) {
    long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
    se += sgn * A.u[2 * k] * zin;
    pe += sgn * A.v[2 * k] * zin;
    long double zin1 = zin / zeta;
    so += sgn * A.u[2 * k + 1] * zin1;
    po += sgn * A.v[2 * k + 1] * zin1;
    zin = zin1 / zeta;
    if (std::abs((double)(A.u[2 * k + 1] * zin1)) < 1e-18) break;
  }
  const double arg = zeta + kPi / 4.0;
  const double sn = std::sin(arg), cs = std::cos(arg);
  const double q = std::pow(z, 0.25);
  ai = (sn * (double)se - cs * (double)so) / (std::sqrt(kPi) * q);
  aip = -q / std::sqrt(kPi) * (cs * (double)pe + sn * (double)po);
}

void airy_both(double x, double &ai, double &aip) {
  if (x >= 11.5)
    airy_asym_pos(x, ai, aip);
  else if (x <= -11.5)
    airy_asym_neg(x, ai, aip);
  else
    airy_series(x, ai, aip);
}

}  // namespace

double airy_ai(double x) {
  double ai, aip;
  airy_both(x, ai, aip);
  return ai;
}

double airy_ai_prime(double x) {
  double ai, aip;
  airy_both(x, ai, aip);
  return aip;
}

double airy_ai_integral(double x) {
  if (x >= 8.0) {
    // int_x^inf Ai ~ e^{-zeta}/(2 sqrt(pi) x^{3/4}) (1 - 41/(48 zeta) + ...)
    double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double s = 1.0 - 41.0 / 48.0 / zeta + 9241.0 / 4608.0 / (zeta * zeta);
    return std::exp(-zeta) / (2.0 * std::sqrt(kPi) * std::pow(x, 0.75)) * s;
  }
  return 1.0 / 3.0 - integrate([](double t) { return airy_ai(t); }, 0.0, x, 1e-12);
}

// --- Bessel J ------------------------------------------------------------------

namespace {

template <typename F>
double bessel_series_t(double nu, double x) {
  const F hx = F(0.5) * F(x);
  const F q = -hx * hx;
  // prefactor (x/2)^nu / Gamma(nu+1) only needs double accuracy (no cancellation)
  F term = F(std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0)));
  F sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (F(k) * (F(nu) + F(k)));
    sum += term;
    double td = static_cast<double>(term);
    if (k > 3 && std::abs(td) < 1e-24 * (1.0 + std::abs(static_cast<double>(sum)))) break;
  }
  return static_cast<double>(sum);
}

double bessel_series(double nu, double x) {
  if (nu == -1.0) return -bessel_series(1.0, x);  // J_{-1} = -J_1
  if (x <= 12.0) return bessel_series_t<long double>(nu, x);
  return bessel_series_t<__float128>(nu, x);
}

// Hankel asymptotic expansion; good for x well above nu^2
double bessel_hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  long double p = 1.0L, q = 0.0L;
  long double term = 1.0L;
  const long double ex = 8.0L * (long double)x;
  long double prev = std::numeric_limits<long double>::max();
  for (int k = 1; k < 30; ++k) {
    term *= (mu - (2.0L * k - 1) * (2.0L * k - 1)) / (k * ex);
    if (std::abs((double)term) > std::abs((double)prev)) break;
    prev = term;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (std::abs((double)term) < 1e-18) break;
  }
  const double omega = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * ((double)p * std::cos(omega) - (double)q * std::sin(omega));
}

}  // namespace

double bessel_j(double nu, double x) {
  if (nu < -1.0) throw invalid_parameter_error("bessel_j requires order >= -1");
  if (x < 0.0) throw invalid_parameter_error("bessel_j requires x >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 35.0 || nu >= 0.8 * x) return bessel_series(nu, x);
  if (nu <= 3.5) return bessel_hankel(nu, x);
  // x > 35 and 3.5 < nu < 0.8 x: forward recurrence from the fractional base
  // order, which stays in the Hankel regime
  double f = nu - std::floor(nu);
  double j0 = bessel_hankel(f, x);
  double j1 = bessel_hankel(f + 1.0, x);
  double ord = f + 1.0;
  while (ord < nu - 0.5) {
    double jn = (2.0 * ord / x) * j1 - j0;
    j0 = j1;
    j1 = jn;
    ord += 1.0;
  }
  return j1;
}

double bessel_j_integral(double nu, double x) {
  if (x == 0.0) return 0.0;
  return integrate([nu](double t) { return bessel_j(nu, t); }, 0.0, x, 1e-11);
}

// --- sine integral ---------------------------------------------------------------

namespace {
template <typename F>
double si_series_t(double ax) {
  F term = F(ax), sum = F(ax);
  const F x2 = F(ax) * F(ax);
  for (int k = 1; k < 300; ++k) {
    term *= -x2 / (F(2.0 * k) * F(2.0 * k + 1));
    sum += term / F(2.0 * k + 1);
    double td = static_cast<double>(term);
    if (std::abs(td) < 1e-30) break;
  }
  return static_cast<double>(sum);
}
}  // namespace

double sine_integral(double x) {
  const double ax = std::abs(x);
  double result;
  if (ax <= 20.0) {
    result = si_series_t<long double>(ax);
  } else if (ax <= 42.0) {
    result = si_series_t<__float128>(ax);
  } else {
    // Si(x) = pi/2 - cos(x) f(x) - sin(x) g(x)
    long double f = 0.0L, g = 0.0L;
    long double tf = 1.0L / ax;  // (2k)!/x^{2k+1}
    for (int k = 0; k < 24; ++k) {
      long double tg = tf * (2.0L * k + 1) / ax;
      f += (k % 2 == 0 ? tf : -tf);
      g += (k % 2 == 0 ? tg : -tg);
      long double tnext = tf * (2.0L * k + 1) * (2.0L * k + 2) / ((long double)ax * ax);
      if (tnext > tf) break;  // asymptotic series turned
      tf = tnext;
      if ((double)tf < 1e-19) break;
    }
    result = kPi / 2.0 - std::cos(ax) * (double)f - std::sin(ax) * (double)g;
  }
  return x < 0.0 ? -result : result;
}

// --- incomplete gamma --------------------------------------------------------------

namespace {

double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw invalid_parameter_error("gamma_p requires x >= 0, a > 0");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw invalid_parameter_error("gamma_q requires x >= 0, a > 0");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

// --- complex erfc ---------------------------------------------------------------

namespace {

std::complex<double> erf_series(std::complex<double> z) {
  std::complex<long double> lz((long double)z.real(), (long double)z.imag());
  std::complex<long double> z2 = lz * lz;
  std::complex<long double> term = lz, sum = lz;
  for (int k = 1; k < 160; ++k) {
    term *= -z2 / (long double)k;
    sum += term / (2.0L * k + 1);
    if (std::abs(std::complex<double>((double)term.real(), (double)term.imag())) < 1e-22) break;
  }
  const long double c = 1.1283791670955125738961589031215L;  // 2/sqrt(pi)
  std::complex<long double> r = c * sum;
  return {(double)r.real(), (double)r.imag()};
}

std::complex<double> erfc_cf(std::complex<double> z) {
  // Laplace continued fraction for Re z > 0:
  // erfc(z) = e^{-z^2}/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
  std::complex<double> f = z, c = z, d(0.0, 0.0);
  const double tiny = 1e-300;
  for (int i = 1; i < 300; ++i) {
    double an = 0.5 * i;
    d = z + an * d;
    if (std::abs(d) < tiny) d = tiny;
    c = z + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    std::complex<double> delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z * z) / std::sqrt(kPi) / f;
}

}  // namespace

std::complex<double> erfc_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return {std::erfc(z.real()), 0.0};
  if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
  if (std::abs(z) <= 4.0) return 1.0 - erf_series(z);
  return erfc_cf(z);
}

}  // namespace specstat
