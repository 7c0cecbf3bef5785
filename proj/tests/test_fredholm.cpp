#include "specstat/fredholm.hpp"

#include <cmath>

#include "doctest.h"
#include "specstat/benchmarks.hpp"
#include "specstat/errors.hpp"
#include "specstat/pfaffian.hpp"

using namespace specstat;

TEST_CASE("fredholm_det: empty interval, monotonicity, self-convergence") {
  auto sine = [](double x, double y) { return sine_kernel(x, y); };
  CHECK(fredholm_det(sine, 0.3, 0.3, 64) == 1.0);

  // order doubling at s=1 agrees to 1e-10; n>=32 self-convergence <= 1e-9
  double d32 = fredholm_det(sine, -0.5, 0.5, 32);
  double d64 = fredholm_det(sine, -0.5, 0.5, 64);
  CHECK(std::abs(d32 - d64) < 1e-10);
  for (double s : {2.0, 4.0}) {
    double a = fredholm_det(sine, -s / 2, s / 2, 32);
    double b = fredholm_det(sine, -s / 2, s / 2, 64);
    CHECK(std::abs(a - b) < 1e-9);
  }

  // decreasing in s, value in (0,1) for s in (0,4]
  double prev = 1.0;
  for (double s = 0.25; s <= 4.0; s += 0.25) {
    double v = fredholm_det(sine, -s / 2, s / 2, 64);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("fredholm_det agrees with the eigenvalue product to 1e-10") {
  auto sine = [](double x, double y) { return sine_kernel(x, y); };
  for (double s : {0.8, 2.0, 3.5}) {
    double lu = fredholm_det(sine, -s / 2, s / 2, 64);
    double prod = fredholm_det_eigenproduct(sine, -s / 2, s / 2, 64);
    CHECK(lu == doctest::Approx(prod).epsilon(1e-10));
  }
}

TEST_CASE("fredholm_pfaffian: empty interval, Pf^2 = det, squared consistency with beta=2") {
  auto triple4 = [](double x, double y) { return bulk_triple(4, x, y); };
  CHECK(fredholm_pfaffian(triple4, 0.1, 0.1, 32) == 1.0);

  // Pf of the assembled block squares to its determinant
  {
    const int order = 24;
    QuadratureRule q = gauss_legendre(order, -0.7, 0.7);
    std::vector<double> sw(order);
    for (int i = 0; i < order; ++i) sw[i] = std::sqrt(q.weights[i]);
    RMatrix m(2 * order, 2 * order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j) {
        KernelTriple t = bulk_triple(1, q.nodes[i], q.nodes[j]);
        m(i, j) = -sw[i] * t.D * sw[j];
        m(i, order + j) = (i == j ? 1.0 : 0.0) - sw[i] * t.K * sw[j];
        m(order + j, i) = -m(i, order + j);
        m(order + i, order + j) = -sw[i] * t.J * sw[j];
      }
    for (int i = 0; i < 2 * order; ++i) {
      m(i, i) = 0.0;
      for (int j = i + 1; j < 2 * order; ++j) {
        double v = 0.5 * (m(i, j) - m(j, i));
        m(i, j) = v;
        m(j, i) = -v;
      }
    }
    double pf = pfaffian(m);
    double det = lu_det(m);
    CHECK(pf * pf == doctest::Approx(det).epsilon(1e-8));
  }
}

TEST_CASE("gap probabilities: nesting, wrappers, order self-convergence for beta=4") {
  auto d2 = KernelDescriptor::bulk(2);
  CHECK(gap_probability(d2, 0.0, 0.0) == 1.0);
  double pab = gap_probability(d2, -0.5, 0.5);
  double pac = gap_probability(d2, -0.5, 0.9);
  CHECK(pab >= pac);

  auto d4 = KernelDescriptor::bulk(4);
  double a = gap_probability(d4, -0.6, 0.6, 32);
  double b = gap_probability(d4, -0.6, 0.6, 64);
  CHECK(std::abs(a - b) < 1e-9);  // analytic triple: exponential convergence
  CHECK(b > 0.0);
  CHECK(b < 1.0);
}

TEST_CASE("spacing_exact beta=2 against the surmise band") {
  std::vector<double> grid;
  for (int i = 0; i <= 60; ++i) grid.push_back(0.05 * i);
  auto p = spacing_exact(2, grid, 48);
  CHECK(std::abs(p.y[0]) < 1e-5);
  double sup = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i) sup = std::max(sup, std::abs(p.y[i] - wigner_surmise(2.0, p.x[i])));
  CHECK(sup < 0.015);
  // normalization grid check on [0, 6]
  std::vector<double> wide;
  for (int i = 0; i <= 120; ++i) wide.push_back(0.05 * i);
  auto pw = spacing_exact(2, wide, 48);
  double mass = 0.0, first = 0.0;
  for (std::size_t i = 0; i + 1 < pw.x.size(); ++i) {
    double h = pw.x[i + 1] - pw.x[i];
    mass += 0.5 * (pw.y[i] + pw.y[i + 1]) * h;
    first += 0.5 * (pw.x[i] * pw.y[i] + pw.x[i + 1] * pw.y[i + 1]) * h;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(first == doctest::Approx(1.0).epsilon(2e-3));
  CHECK_THROWS_AS(spacing_exact(2, std::vector<double>{0.0, 0.2}, 48), invalid_parameter_error);
}

TEST_CASE("spacing_exact beta=1 and beta=4: repulsion and bracketing near the peak") {
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(0.05 * i);
  auto p1 = spacing_exact(1, grid, 32);
  auto p4 = spacing_exact(4, grid, 32);
  auto p2 = spacing_exact(2, grid, 48);
  // the s=0 stencil is clamped to s=h, so beta=1 reports p(h) ~ pi^2 h/6
  CHECK(std::abs(p1.y[0]) < 2e-3);
  CHECK(std::abs(p4.y[0]) < 1e-6);
  // small-s ordering p1 > p2 > p4; near s ~ 1.25 the order flips (stiffness)
  auto at = [&](const Curve &c, double s) {
    for (std::size_t i = 0; i < c.x.size(); ++i)
      if (std::abs(c.x[i] - s) < 1e-12) return c.y[i];
    return -1.0;
  };
  CHECK(at(p1, 0.5) > at(p2, 0.5));
  CHECK(at(p2, 0.5) > at(p4, 0.5));
  CHECK(at(p4, 1.25) > at(p2, 1.25));
  CHECK(at(p2, 1.25) > at(p1, 1.25));
}

TEST_CASE("extreme_cdf: soft-edge law is a proper CDF; truncation bound") {
  auto d = KernelDescriptor::soft(2);
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(-6.0 + 0.2 * i);
  auto f = extreme_cdf(d, grid, ExtremeSide::max, 64);
  CHECK(f.y.front() < 1e-3);
  CHECK(f.y.back() > 1.0 - 1e-3);
  for (std::size_t i = 0; i + 1 < f.y.size(); ++i) CHECK(f.y[i] <= f.y[i + 1] + 1e-12);
  // truncating at lambda + 10 vs lambda + 16 changes nothing at the 1e-8 level
  double t = -3.0;
  double a = fredholm_det([&](double x, double y) { return kernel_scalar(d, x, y); }, t, t + 10.0, 64);
  double b = fredholm_det([&](double x, double y) { return kernel_scalar(d, x, y); }, t, t + 16.0, 96);
  CHECK(std::abs(a - b) < 1e-8);
  CHECK_THROWS_AS(extreme_cdf(d, grid, ExtremeSide::min, 64), invalid_parameter_error);
}

TEST_CASE("extreme_cdf: hard-edge smallest eigenvalue") {
  auto d = KernelDescriptor::hard(2, 1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(0.05 + 0.1 * i);
  auto f = extreme_cdf(d, grid, ExtremeSide::min, 64);
  for (std::size_t i = 0; i + 1 < f.y.size(); ++i) CHECK(f.y[i] <= f.y[i + 1] + 1e-10);
  CHECK(f.y.front() >= 0.0);
  CHECK(f.y.back() <= 1.0);
  CHECK(f.y.back() > 0.9);
}

TEST_CASE("Fredholm Pfaffian gaps match the even/odd scalar determinants") {
  // classical parity decomposition of the sine process on a centred interval:
  // E2 = E+ E-, E1 = E+, and the beta=4 gap at half the interval is the
  // average (E+ + E-)/2; the scalar route is independent of the Pfaffian path
  auto kplus = [](double x, double y) { return sine_kernel(x, y) + sine_kernel(x, -y); };
  auto kminus = [](double x, double y) { return sine_kernel(x, y) - sine_kernel(x, -y); };
  for (double s : {0.5, 1.0, 2.0, 3.0}) {
    double e2 = fredholm_det([](double x, double y) { return sine_kernel(x, y); }, -s / 2, s / 2, 64);
    double ep = fredholm_det(kplus, 0.0, s / 2, 64);
    double em = fredholm_det(kminus, 0.0, s / 2, 64);
    double e1 = gap_probability(KernelDescriptor::bulk(1), -s / 2, s / 2, 48);
    double e4 = gap_probability(KernelDescriptor::bulk(4), -s / 4, s / 4, 48);
    CHECK(e2 == doctest::Approx(ep * em).epsilon(1e-9));
    CHECK(e1 == doctest::Approx(ep).epsilon(1e-8));
    CHECK(e4 == doctest::Approx(0.5 * (ep + em)).epsilon(1e-8));
  }
}

TEST_CASE("hard-edge gap: closed form at alpha=1 and gauge invariance") {
  // Bessel order zero: P(no eigenvalue in [0,s]) = exp(-pi^2 s^2/4)
  auto d = KernelDescriptor::hard(2, 1.0);
  for (double s : {0.2, 0.5, 1.0, 1.5}) {
    double g = gap_probability(d, 0.0, s, 80);
    CHECK(g == doctest::Approx(std::exp(-0.25 * 3.14159265358979324 * 3.14159265358979324 * s * s)).epsilon(1e-10));
  }
  // the literal (asymmetric) kernel gauge gives the same determinant
  for (double alpha : {1.0, 3.0}) {
    for (double s : {0.6, 1.2}) {
      double sym = fredholm_det(
          [&](double x, double y) { return hard_edge_scalar_symmetric(alpha, x, y); }, 0.0, s, 64);
      double lit = fredholm_det([&](double x, double y) { return hard_edge_scalar(alpha, x, y); }, 0.0, s, 64);
      CHECK(sym == doctest::Approx(lit).epsilon(1e-10));
    }
  }
}
