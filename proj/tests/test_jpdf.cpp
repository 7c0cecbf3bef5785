#include "specstat/jpdf.hpp"

#include <cmath>

#include "doctest.h"
#include "specstat/ensembles.hpp"
#include "specstat/errors.hpp"
#include "specstat/quadrature.hpp"

using namespace specstat;

TEST_CASE("vandermonde") {
  CHECK(vandermonde(std::vector<double>{}) == 1.0);
  CHECK(vandermonde(std::vector<double>{5.0}) == 1.0);
  CHECK(vandermonde(std::vector<double>{0.0, 1.0}) == 1.0);
  CHECK(vandermonde(std::vector<double>{1.0, 2.0, 3.0}) == doctest::Approx(2.0));
  CHECK(vandermonde(std::vector<double>{1.0, 2.0, 2.0}) == 0.0);
  // points (0, i, 1): (i)(1)(1 - i) = 1 + i
  auto v = vandermonde(std::vector<std::complex<double>>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(std::abs(v - std::complex<double>(1, 1)) < 1e-15);
}

TEST_CASE("log_jpdf_dyson basics") {
  CHECK(std::isinf(log_jpdf_dyson(Spectrum({1.0, 1.0}), 2, 1.0)));
  // permutation invariance is free (Spectrum sorts); check translation of inputs instead
  double a = log_jpdf_dyson(Spectrum({0.3, -1.2, 0.9}), 2, 1.0);
  double b = log_jpdf_dyson(Spectrum({0.9, 0.3, -1.2}), 2, 1.0);
  CHECK(a == b);
  // N=1 is the plain Gaussian for beta = 1, 2
  for (int beta : {1, 2}) {
    double lp = log_jpdf_dyson(Spectrum({0.7}), beta, 1.0);
    CHECK(lp == doctest::Approx(-0.5 * 0.7 * 0.7 - 0.5 * std::log(2.0 * 3.14159265358979324)).epsilon(1e-12));
  }
}

TEST_CASE("log_jpdf_dyson normalization by tensor quadrature (N=2)") {
  // beta = 2, 4: smooth integrand, plain tensor grid
  for (int beta : {2, 4}) {
    double sigma = beta == 4 ? std::sqrt(2.0) : 1.0;
    QuadratureRule q = gauss_legendre(160, -8.0, 8.0);
    double total = 0.0;
    for (int i = 0; i < q.order; ++i)
      for (int j = 0; j < q.order; ++j) {
        double lp = log_jpdf_dyson(Spectrum({q.nodes[i], q.nodes[j]}), beta, sigma);
        total += q.weights[i] * q.weights[j] * std::exp(lp);
      }
    CHECK(total == doctest::Approx(1.0).epsilon(2e-6));
  }
  // beta = 1 has a kink on the diagonal: integrate the ordered region, doubled
  double tot1 = integrate(
      [&](double y) {
        return integrate(
            [&](double x) { return std::exp(log_jpdf_dyson(Spectrum({x, y}), 1, 1.0)); }, -8.0, y, 1e-12);
      },
      -8.0, 8.0, 1e-10);
  CHECK(2.0 * tot1 == doctest::Approx(1.0).epsilon(2e-6));
}

TEST_CASE("log_jpdf_az basics and normalization") {
  CHECK_THROWS_AS(log_jpdf_az(Spectrum({1.0}), -0.5, 2, 1.0), invalid_parameter_error);
  CHECK(std::isinf(log_jpdf_az(Spectrum({0.0, 1.0}), 1.0, 2, 1.0)));
  // invariance under E -> -E per entry
  double p1 = log_jpdf_az(Spectrum({0.5, 1.5}), 3.0, 2, 1.0);
  double p2 = log_jpdf_az(Spectrum({-0.5, 1.5}), 3.0, 2, 1.0);
  CHECK(p1 == doctest::Approx(p2).epsilon(1e-13));

  // N=1, alpha=1, beta=2: 1D quadrature to 1e-8
  {
    double total = integrate(
        [&](double x) { return std::exp(log_jpdf_az(Spectrum({x}), 1.0, 2, 1.0)); }, -9.0, 9.0, 1e-11);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  }
  // N=2 normalizations across (alpha, beta) exercise the closed-form Selberg
  // constant; the density is even per entry, so integrate the ordered positive
  // quadrant (smooth there) and multiply by 8
  struct Case {
    double alpha;
    int beta;
  };
  for (auto cs : {Case{1.0, 2}, Case{2.0, 2}, Case{1.0, 1}, Case{3.0, 4}}) {
    double total = integrate(
        [&](double y) {
          return integrate(
              [&](double x) { return std::exp(log_jpdf_az(Spectrum({x, y}), cs.alpha, cs.beta, 1.0)); }, 0.0, y,
              1e-12);
        },
        0.0, 8.0, 1e-10);
    CHECK(8.0 * total == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("log_jpdf_az bulk factorization far from the origin") {
  // n=2 far from the origin: exp(log_jpdf) ~ |Delta(dE)|^beta within 1%
  const double e0 = 60.0;
  const double dref = 1e-3;
  for (int beta : {1, 2, 4}) {
    double alpha = 3.0;
    auto lp = [&](double d) {
      return log_jpdf_az(Spectrum({e0 - 0.5 * d, e0 + 0.5 * d}), alpha, beta, 1.0);
    };
    for (double d : {3e-3, 7e-3}) {
      double got = lp(d) - lp(dref);
      double expect = beta * std::log(d / dref);
      CHECK(std::abs(got - expect) < 0.01);
    }
  }
}

TEST_CASE("log_jpdf_ginibre: degenerate cases") {
  ComplexSpectrum pair(std::vector<std::complex<double>>{{0.5, 0.5}, {0.5, 0.5}});
  CHECK(std::isinf(log_jpdf_ginibre(pair, GinibreKind::complex_kind, 1.0)));
  ComplexSpectrum real_entry(std::vector<std::complex<double>>{{0.7, 0.0}});
  CHECK(std::isinf(log_jpdf_ginibre(real_entry, GinibreKind::quaternion_kind, 1.0)));
}

TEST_CASE("log_jpdf_ginibre complex: N=1 and N=2 normalization") {
  // N=1 polar quadrature to 1e-8
  double total = integrate(
      [&](double r) {
        ComplexSpectrum z(std::vector<std::complex<double>>{{r, 0.0}});
        // isotropic: angular integral contributes 2 pi r
        return 2.0 * 3.14159265358979324 * r * std::exp(log_jpdf_ginibre(z, GinibreKind::complex_kind, 1.0));
      },
      0.0, 10.0, 1e-11);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));

  // N=2: reduce with rotation invariance; z1 on the positive axis
  // integral = int r1 dr1 (2 pi) int d^2 z2 p(r1, z2)
  QuadratureRule qr = gauss_legendre(90, 0.0, 7.0);
  QuadratureRule qx = gauss_legendre(110, -7.0, 7.0);
  double tot2 = 0.0;
  for (int i = 0; i < qr.order; ++i) {
    double r1 = qr.nodes[i];
    double inner = 0.0;
    for (int j = 0; j < qx.order; ++j)
      for (int k = 0; k < qx.order; ++k) {
        ComplexSpectrum z(std::vector<std::complex<double>>{{r1, 0.0}, {qx.nodes[j], qx.nodes[k]}});
        inner += qx.weights[j] * qx.weights[k] * std::exp(log_jpdf_ginibre(z, GinibreKind::complex_kind, 1.0));
      }
    tot2 += qr.weights[i] * 2.0 * 3.14159265358979324 * r1 * inner;
  }
  CHECK(tot2 == doctest::Approx(1.0).epsilon(2e-4));
}

TEST_CASE("log_jpdf_ginibre quaternion: N=1 normalization over the upper half plane") {
  QuadratureRule qx = gauss_legendre(140, -8.0, 8.0);
  QuadratureRule qy = gauss_legendre(90, 0.0, 8.0);
  double total = 0.0;
  for (int i = 0; i < qx.order; ++i)
    for (int j = 0; j < qy.order; ++j) {
      ComplexSpectrum z(std::vector<std::complex<double>>{{qx.nodes[i], qy.nodes[j]}});
      total += qx.weights[i] * qy.weights[j] * std::exp(log_jpdf_ginibre(z, GinibreKind::quaternion_kind, 1.0));
    }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("log_jpdf_ginibre quaternion: N=2 normalization (skew-norm constant)") {
  // 4D tensor quadrature over (UHP)^2, sigma = 1
  const int nx = 44, ny = 30;
  QuadratureRule qx = gauss_legendre(nx, -6.5, 6.5);
  QuadratureRule qy = gauss_legendre(ny, 0.0, 6.5);
  double total = 0.0;
  for (int i1 = 0; i1 < nx; ++i1)
    for (int j1 = 0; j1 < ny; ++j1) {
      double w1 = qx.weights[i1] * qy.weights[j1];
      std::complex<double> z1(qx.nodes[i1], qy.nodes[j1]);
      double inner = 0.0;
      for (int i2 = 0; i2 < nx; ++i2)
        for (int j2 = 0; j2 < ny; ++j2) {
          ComplexSpectrum z(std::vector<std::complex<double>>{z1, {qx.nodes[i2], qy.nodes[j2]}});
          inner += qx.weights[i2] * qy.weights[j2] *
                   std::exp(log_jpdf_ginibre(z, GinibreKind::quaternion_kind, 1.0));
        }
      total += w1 * inner;
    }
  CHECK(total == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("GinSE sampler matches the N=1 analytic density") {
  // upper-half-plane representative of a 2x2 quaternion Ginibre draw
  auto spec = EnsembleSpec::make(Cartan::GinSE, 1);  // sigma defaults to sqrt(2)
  const int draws = 200000;
  // histogram of Im z (radial profile of the y-marginal is a clean projection)
  const double ymax = 4.0;
  const int bins = 20;
  std::vector<double> counts(bins, 0.0);
  for (int d = 0; d < draws; ++d) {
    auto z = sample_spectrum_complex(spec, derive_seed(31, d));
    std::complex<double> up = z.values[0].imag() >= 0.0 ? z.values[0] : z.values[1];
    int b = static_cast<int>(up.imag() / ymax * bins);
    if (b >= 0 && b < bins) counts[b] += 1.0;
  }
  // marginal in y: int dx p(x + i y) with p the N=1 quaternion jpdf
  for (int b = 0; b < bins; ++b) {
    double y = (b + 0.5) * ymax / bins;
    double marg = integrate(
        [&](double x) {
          ComplexSpectrum z(std::vector<std::complex<double>>{{x, y}});
          return std::exp(log_jpdf_ginibre(z, GinibreKind::quaternion_kind, spec.sigma));
        },
        -10.0, 10.0, 1e-10);
    double emp = counts[b] / (draws * (ymax / bins));
    CHECK(std::abs(emp - marg) < 0.02);
  }
}

TEST_CASE("sampling oracle: A class n=3 marginal vs jpdf quadrature (reduced)") {
  // light version of the determinantal-consistency criterion: 1e5 draws
  auto spec = EnsembleSpec::make(Cartan::A, 3);
  const int draws = 100000;
  const double xmax = 4.0;
  const int bins = 32;
  std::vector<double> counts(bins, 0.0);
  for (int d = 0; d < draws; ++d) {
    auto s = sample_spectrum(spec, derive_seed(5150, d));
    for (double v : s.values) {
      int b = static_cast<int>((v + xmax) / (2.0 * xmax) * bins);
      if (b >= 0 && b < bins) counts[b] += 1.0;
    }
  }
  QuadratureRule q = gauss_legendre(110, -8.5, 8.5);
  for (int b = 0; b < bins; ++b) {
    double x = -xmax + (b + 0.5) * (2.0 * xmax / bins);
    double marg = 0.0;
    for (int i = 0; i < q.order; ++i)
      for (int j = 0; j < q.order; ++j)
        marg += q.weights[i] * q.weights[j] *
                std::exp(log_jpdf_dyson(Spectrum({x, q.nodes[i], q.nodes[j]}), 2, 1.0));
    // marg integrates to 1 in x, matching the per-eigenvalue density
    double emp = counts[b] / (draws * 3.0 * (2.0 * xmax / bins));
    CHECK(std::abs(emp - marg) < 0.02);
  }
}
