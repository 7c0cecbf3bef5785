// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured figure against its pinned tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>
#include <vector>

#include "doctest.h"
#include "specstat/pfaffian.hpp"
#include "specstat/benchmarks.hpp"
#include "specstat/density.hpp"
#include "specstat/ensembles.hpp"
#include "specstat/errors.hpp"
#include "specstat/fredholm.hpp"
#include "specstat/jpdf.hpp"
#include "specstat/kernels.hpp"
#include "specstat/observables.hpp"
#include "specstat/quadrature.hpp"
#include "specstat/rng.hpp"

using namespace specstat;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void report(int criterion, const char *what, double value, double tol, bool pass) {
  std::printf("[criterion %2d] %s: %s (%.5g vs tolerance %.5g)\n", criterion, pass ? "PASS" : "FAIL", what, value,
              tol);
  std::fflush(stdout);
}

bool check_report(int criterion, const char *what, double value, double tol) {
  bool pass = value <= tol;
  report(criterion, what, value, tol, pass);
  return pass;
}

// ---- shared GUE n=100 ensemble (criteria 2, 7, 8, 11) -------------------------

struct GuePool {
  std::vector<Spectrum> draws;                  // 20000 draws of (A, n=100)
  std::vector<UnfoldedSpectrum> bulk;           // central 60% unfolded
  double sample_seconds = 0.0;
};

const GuePool &gue_pool() {
  static GuePool pool = [] {
    GuePool p;
    const int n = 100, draws = 20000;
    auto spec = EnsembleSpec::make(Cartan::A, n);
    auto model = DensityModel::semicircle(1.0, n);
    double t0 = now_seconds();
    p.draws.reserve(draws);
    for (int i = 0; i < draws; ++i) p.draws.push_back(sample_spectrum(spec, derive_seed(20600, i)));
    p.sample_seconds = now_seconds() - t0;
    p.bulk.reserve(draws);
    for (const auto &s : p.draws) {
      auto u = unfold(s, model, 0.0);
      UnfoldedSpectrum b;
      b.values.assign(u.values.begin() + n / 5, u.values.end() - n / 5);
      p.bulk.push_back(std::move(b));
    }
    return p;
  }();
  return pool;
}

double sup_vs_bin_averaged(const Histogram &h, const std::function<double(double)> &f, double smax) {
  double sup = 0.0;
  for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b) {
    if (h.bin_edges[b + 1] > smax + 1e-12) break;
    double lo = h.bin_edges[b], hi = h.bin_edges[b + 1];
    double ref = integrate(f, lo, hi, 1e-10) / (hi - lo);
    sup = std::max(sup, std::abs(h.density[b] - ref));
  }
  return sup;
}

double rms_vs_bin_averaged(const Histogram &h, const std::function<double(double)> &f, double smax) {
  double acc = 0.0;
  int cnt = 0;
  for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b) {
    if (h.bin_edges[b + 1] > smax + 1e-12) break;
    double lo = h.bin_edges[b], hi = h.bin_edges[b + 1];
    double ref = integrate(f, lo, hi, 1e-10) / (hi - lo);
    acc += (h.density[b] - ref) * (h.density[b] - ref);
    ++cnt;
  }
  return std::sqrt(acc / cnt);
}

std::function<double(double)> curve_interp(const Curve &c) {
  return [c](double s) {
    if (s <= c.x.front()) return c.y.front();
    if (s >= c.x.back()) return c.y.back();
    std::size_t i = static_cast<std::size_t>((s - c.x.front()) / (c.x[1] - c.x[0]));
    i = std::min(i, c.x.size() - 2);
    double t = (s - c.x[i]) / (c.x[i + 1] - c.x[i]);
    return c.y[i] + t * (c.y[i + 1] - c.y[i]);
  };
}

}  // namespace

TEST_CASE("criterion 1: operator-exact spacing vs surmise") {
  std::vector<double> grid;
  for (int i = 0; i <= 120; ++i) grid.push_back(0.025 * i);
  struct Row {
    int beta;
    int order;
    double tol;
  };
  for (auto row : {Row{2, 48, 0.015}, Row{1, 48, 0.02}, Row{4, 48, 0.02}}) {
    double t0 = now_seconds();
    auto p = spacing_exact(row.beta, grid, row.order);
    double dt = now_seconds() - t0;
    double sup = 0.0;
    for (std::size_t i = 0; i < p.x.size(); ++i)
      sup = std::max(sup, std::abs(p.y[i] - wigner_surmise(row.beta, p.x[i])));
    char label[96];
    std::snprintf(label, sizeof(label), "spacing_exact(beta=%d) vs surmise sup on [0,3], %.1f s", row.beta, dt);
    CHECK(check_report(1, label, sup, row.tol));
    CHECK(check_report(1, "runtime seconds", dt, 120.0));
  }
}

TEST_CASE("criterion 2: GUE pipeline spacing vs surmise and vs exact") {
  const auto &pool = gue_pool();
  // the criterion runs 5000 draws; the pool's first 5000 are that ensemble
  std::vector<UnfoldedSpectrum> bulk(pool.bulk.begin(), pool.bulk.begin() + 5000);
  auto h = spacing_histogram(bulk, std::nullopt, 0.25, 4.0);

  auto surmise = [](double s) { return wigner_surmise(2.0, s); };
  double sup = sup_vs_bin_averaged(h, surmise, 4.0);
  CHECK(check_report(2, "spacing histogram vs surmise(2) sup", sup, 0.02));

  std::vector<double> grid;
  for (int i = 0; i <= 160; ++i) grid.push_back(0.025 * i);
  auto exact_curve = spacing_exact(2, grid, 48);
  auto exact = curve_interp(exact_curve);
  double rms_exact = rms_vs_bin_averaged(h, exact, 4.0);
  double rms_surmise = rms_vs_bin_averaged(h, surmise, 4.0);
  std::printf("[criterion  2] residual vs exact %.5g, vs surmise %.5g\n", rms_exact, rms_surmise);
  bool closer = rms_exact < rms_surmise;
  report(2, "exact law fits the data better than the surmise", rms_exact, rms_surmise, closer);
  CHECK(closer);

  // sampling wall time, scaled to the criterion's 8-thread budget
  double budget = 300.0 * 8.0 / std::max(1u, std::thread::hardware_concurrency());
  CHECK(check_report(2, "5000-draw sampling wall seconds (thread-scaled budget)", pool.sample_seconds / 4.0, budget));
}

TEST_CASE("criterion 3: Poisson control") {
  CounterRng rng(303);
  const int m = 100000;
  std::vector<double> v(m);
  for (auto &x : v) x = rng.uniform();
  Curve flat;
  flat.x = {0.0, 1.0};
  flat.y = {1.0, 1.0};
  auto u = unfold(Spectrum(std::move(v)), DensityModel::tabulated(std::move(flat)), 0.0);

  std::vector<double> gaps;
  gaps.reserve(m);
  for (std::size_t i = 0; i + 1 < u.values.size(); ++i) gaps.push_back(u.values[i + 1] - u.values[i]);
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= gaps.size();
  std::sort(gaps.begin(), gaps.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    double f = 1.0 - std::exp(-gaps[i] / mean);
    ks = std::max(ks, std::abs(f - (i + 1.0) / gaps.size()));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / gaps.size()));
  }
  CHECK(check_report(3, "unfolded Poisson spacing KS vs exp(-s)", ks, 0.01));

  auto r = spacing_ratios(u.values);
  double dev = std::abs(r.mean - 0.386);
  CHECK(check_report(3, "spacing ratio mean |r - 0.386|", dev, 0.005));
}

TEST_CASE("criterion 4: beta=4 pipeline (AII, Kramers reduction)") {
  const int n = 100, draws = 3000;
  auto spec = EnsembleSpec::make(Cartan::AII, n);
  // Kramers-distinct levels follow the sigma_2 = sigma_4/sqrt(2) semicircle
  auto model = DensityModel::semicircle(spec.sigma / std::sqrt(2.0), n);
  std::vector<UnfoldedSpectrum> bulk;
  bulk.reserve(draws);
  for (int i = 0; i < draws; ++i) {
    auto s = sample_spectrum(spec, derive_seed(404, i));
    auto red = kramers_reduce(s, 1e-8);
    auto u = unfold(red, model, 0.0);
    UnfoldedSpectrum b;
    b.values.assign(u.values.begin() + n / 5, u.values.end() - n / 5);
    bulk.push_back(std::move(b));
  }
  auto h = spacing_histogram(bulk, std::nullopt, 0.25, 4.0);
  double sup = sup_vs_bin_averaged(h, [](double s) { return wigner_surmise(4.0, s); }, 4.0);
  CHECK(check_report(4, "AII spacing vs surmise(4) sup", sup, 0.02));
}

TEST_CASE("criterion 5: hard edge zero modes and microscopic density") {
  const int n = 100, draws = 10000;
  for (int nu : {0, 1}) {
    auto spec = EnsembleSpec::make(Cartan::AIII, n, nu);
    const double scale = 2.0 * std::sqrt(static_cast<double>(n)) / (kPi * spec.sigma);  // N rho_sv(0)
    const double w = 0.375;
    const int bins = 8;
    std::vector<double> counts(bins, 0.0);
    int bad_zero_draws = 0;
    for (int i = 0; i < draws; ++i) {
      auto s = sample_spectrum(spec, derive_seed(505 + nu, i));
      int zeros = 0;
      for (double v : s.values) {
        if (std::abs(v) <= 1e-10 * spec.sigma) {
          ++zeros;
          continue;
        }
        if (v <= 0.0) continue;
        double xi = v * scale;
        int b = static_cast<int>(xi / w);
        if (b >= 0 && b < bins) counts[b] += 1.0;
      }
      if (zeros != nu) ++bad_zero_draws;
    }
    char label[96];
    std::snprintf(label, sizeof(label), "nu=%d draws with wrong zero-mode count", nu);
    CHECK(check_report(5, label, static_cast<double>(bad_zero_draws), 0.0));

    double alpha = 2.0 * nu + 1.0;
    double sup = 0.0;
    for (int b = 0; b < bins; ++b) {
      double emp = counts[b] / (draws * w);
      double ref = integrate([&](double x) { return hard_edge_density(2, alpha, x); }, b * w, (b + 1) * w, 1e-9) / w;
      sup = std::max(sup, std::abs(emp - ref));
    }
    std::snprintf(label, sizeof(label), "nu=%d microscopic density vs Bessel diag sup on [0,3]", nu);
    CHECK(check_report(5, label, sup, 0.05));
  }
}

TEST_CASE("criterion 6: soft edge largest-eigenvalue law") {
  const int n = 200, draws = 10000;
  auto spec = EnsembleSpec::make(Cartan::A, n);
  const double center = 2.0 * spec.sigma * std::sqrt(static_cast<double>(n));
  const double fluct = spec.sigma * std::pow(static_cast<double>(n), -1.0 / 6.0);
  std::vector<double> xi(draws);
  for (int i = 0; i < draws; ++i) {
    auto s = sample_spectrum(spec, derive_seed(606, i));
    xi[i] = (s.values.back() - center) / fluct;
  }
  std::sort(xi.begin(), xi.end());

  auto d = KernelDescriptor::soft(2);
  std::vector<double> grid;
  for (int i = 0; i <= 85; ++i) grid.push_back(-5.0 + 0.08 * i);
  auto f = extreme_cdf(d, grid, ExtremeSide::max, 64);
  double sup = 0.0;
  for (std::size_t i = 0; i < f.x.size(); ++i) {
    double emp = static_cast<double>(std::lower_bound(xi.begin(), xi.end(), f.x[i]) - xi.begin()) / draws;
    sup = std::max(sup, std::abs(emp - f.y[i]));
  }
  CHECK(check_report(6, "largest-eigenvalue empirical CDF vs soft-edge law sup", sup, 0.02));
}

TEST_CASE("criterion 7: number variance, GUE bulk and Poisson") {
  const auto &pool = gue_pool();
  std::vector<double> lgrid = {3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
  auto nv = number_variance(pool.bulk, lgrid, 32);
  double worst = 0.0;
  for (std::size_t i = 0; i < nv.x.size(); ++i)
    worst = std::max(worst, std::abs(nv.y[i] - numvar_asymptotic(2, nv.x[i])));
  CHECK(check_report(7, "GUE bulk |Sigma^2(L) - asymptotic| on [3,10]", worst, 0.05));

  CounterRng rng(707);
  UnfoldedSpectrum pois;
  double x = 0.0;
  for (int i = 0; i < 100000; ++i) {
    x += -std::log(rng.uniform());
    pois.values.push_back(x);
  }
  auto nvp = number_variance({pois}, lgrid, 4000);
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < nvp.x.size(); ++i)
    worst_rel = std::max(worst_rel, std::abs(nvp.y[i] - nvp.x[i]) / nvp.x[i]);
  CHECK(check_report(7, "Poisson |Sigma^2(L) - L|/L", worst_rel, 0.03));
}

TEST_CASE("criterion 8: spectral form factor") {
  const auto &pool = gue_pool();
  std::vector<double> kgrid;
  for (int i = 0; i <= 29; ++i) kgrid.push_back(0.1 + i * 0.1);
  auto s = form_factor(pool.bulk, kgrid);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) worst = std::max(worst, std::abs(s.y[i] - sff_closed(2, s.x[i])));
  CHECK(check_report(8, "GUE S(k) vs closed form on [0.1,3]", worst, 0.03));

  // Poisson control: fixed-count uniform spectra
  CounterRng rng(808);
  std::vector<UnfoldedSpectrum> pois(20000);
  for (auto &u : pois) {
    u.values.resize(60);
    for (auto &v : u.values) v = 60.0 * rng.uniform();
    std::sort(u.values.begin(), u.values.end());
  }
  auto sp = form_factor(pois, kgrid);
  double worstp = 0.0;
  for (double y : sp.y) worstp = std::max(worstp, std::abs(y - 1.0));
  CHECK(check_report(8, "Poisson S(k) = 1", worstp, 0.03));
}

TEST_CASE("criterion 9: GinUE bulk spacings, circular law, shat") {
  const int n = 500, draws = 200;
  auto spec = EnsembleSpec::make(Cartan::GinUE, n);
  const double edge = std::sqrt(2.0 * n) * spec.sigma;
  std::vector<ComplexSpectrum> ens;
  ens.reserve(draws);
  for (int i = 0; i < draws; ++i) ens.push_back(sample_spectrum_complex(spec, derive_seed(909, i)));

  auto h = complex_spacings(ens, std::make_pair(std::complex<double>(0.0, 0.0), 0.75 * edge), 0.5, 4.0);
  double sup = sup_vs_bin_averaged(h, [](double s) { return ginue_spacing(s); }, 4.0);
  CHECK(check_report(9, "bulk nearest-neighbour spacing vs GinUE law sup", sup, 0.02));

  // radial CDF of the circular law on [0, 0.9]
  std::vector<double> radii;
  for (const auto &z : ens)
    for (auto v : z.values) radii.push_back(std::abs(v) / edge);
  std::sort(radii.begin(), radii.end());
  double sup_cdf = 0.0;
  for (double r = 0.05; r <= 0.9 + 1e-12; r += 0.05) {
    double emp = static_cast<double>(std::lower_bound(radii.begin(), radii.end(), r) - radii.begin()) / radii.size();
    sup_cdf = std::max(sup_cdf, std::abs(emp - r * r));
  }
  CHECK(check_report(9, "circular-law radial CDF sup on [0,0.9]", sup_cdf, 0.02));

  double shat_dev = std::abs(ginue_shat_derived() - 1.143);
  CHECK(check_report(9, "re-derived shat vs 1.143", shat_dev, 0.01));
}

TEST_CASE("criterion 10: determinantal consistency of finite-N kernels") {
  // N=2 kernel diagonal vs brute-force quadrature marginal (pointwise 1e-8)
  double worst = 0.0;
  for (double x = -2.5; x <= 2.5; x += 0.25) {
    double marg = integrate(
        [&](double y) { return std::exp(log_jpdf_dyson(Spectrum({x, y}), 2, 1.0)); }, -10.0, 10.0, 1e-13);
    worst = std::max(worst, std::abs(hermite_kernel(2, 1.0, x, x) - 2.0 * marg));
  }
  CHECK(check_report(10, "hermite N=2 diagonal vs jpdf marginal", worst, 1e-8));

  // sampled N=3 marginal vs jpdf quadrature, 1e6 draws
  auto spec = EnsembleSpec::make(Cartan::A, 3);
  const int draws = 1000000;
  const double xmax = 4.0;
  const int bins = 32;
  std::vector<double> counts(bins, 0.0);
  for (int i = 0; i < draws; ++i) {
    auto s = sample_spectrum(spec, derive_seed(1010, i));
    for (double v : s.values) {
      int b = static_cast<int>((v + xmax) / (2.0 * xmax) * bins);
      if (b >= 0 && b < bins) counts[b] += 1.0;
    }
  }
  QuadratureRule q = gauss_legendre(110, -8.5, 8.5);
  double sup = 0.0;
  const double w = 2.0 * xmax / bins;
  for (int b = 0; b < bins; ++b) {
    double x = -xmax + (b + 0.5) * w;
    double marg = 0.0;
    for (int i = 0; i < q.order; ++i)
      for (int j = 0; j < q.order; ++j)
        marg += q.weights[i] * q.weights[j] *
                std::exp(log_jpdf_dyson(Spectrum({x, q.nodes[i], q.nodes[j]}), 2, 1.0));
    double emp = counts[b] / (draws * 3.0 * w);
    sup = std::max(sup, std::abs(emp - marg));
  }
  CHECK(check_report(10, "sampled N=3 marginal vs jpdf quadrature sup", sup, 0.02));
}

TEST_CASE("criterion 11: operator numerics") {
  // Pf^2 = det on random antisymmetric matrices up to 20x20
  CounterRng rng(1111);
  double worst = 0.0;
  for (int n : {4, 8, 12, 16, 20}) {
    for (int rep = 0; rep < 10; ++rep) {
      RMatrix a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          double v = rng.normal();
          a(i, j) = v;
          a(j, i) = -v;
        }
      double pf = pfaffian(a);
      double det = lu_det(a);
      worst = std::max(worst, std::abs(pf * pf - det) / std::max(1.0, std::abs(det)));
    }
  }
  CHECK(check_report(11, "Pf^2 = det relative error", worst, 1e-10));

  // Fredholm order-doubling self-consistency
  double self = 0.0;
  for (double s : {1.0, 2.0, 4.0}) {
    double a = fredholm_det([](double x, double y) { return sine_kernel(x, y); }, -s / 2, s / 2, 32);
    double b = fredholm_det([](double x, double y) { return sine_kernel(x, y); }, -s / 2, s / 2, 64);
    self = std::max(self, std::abs(a - b));
  }
  CHECK(check_report(11, "sine-kernel determinant order doubling 32 vs 64", self, 1e-9));

  // gap probability vs Monte-Carlo void frequency in the unfolded GUE bulk
  const auto &pool = gue_pool();
  double exact = gap_probability(KernelDescriptor::bulk(2), -0.5, 0.5, 64);
  long voids = 0, trials = 0;
  for (const auto &u : pool.bulk) {
    double lo = u.values.front(), hi = u.values.back();
    for (int c = 0; c < 6; ++c) {
      double x0 = lo + 3.0 + (hi - lo - 6.0) * (c + 0.5) / 6.0;
      auto i1 = std::lower_bound(u.values.begin(), u.values.end(), x0 - 0.5);
      auto i2 = std::lower_bound(u.values.begin(), u.values.end(), x0 + 0.5);
      if (i1 == i2) ++voids;
      ++trials;
    }
  }
  double mc = static_cast<double>(voids) / trials;
  CHECK(check_report(11, "gap_probability(sine 2, s=1) vs MC void frequency", std::abs(mc - exact), 0.005));
}

TEST_CASE("criterion 12: unfolding edge behaviour") {
  // soft-edge map composed with the Airy density is flat about 1
  double worst = 0.0;
  for (double mu = -8.0; mu <= -3.0; mu += 0.5) {
    double lam = -std::pow(3.0 * kPi * std::abs(mu) / 2.0, 2.0 / 3.0);
    double jac = kPi * std::pow(3.0 * kPi * std::abs(mu) / 2.0, -1.0 / 3.0);
    worst = std::max(worst, std::abs(soft_edge_density(2, lam) * jac - 1.0));
  }
  CHECK(check_report(12, "soft-edge-mapped Airy density |rho - 1| for mu <= -3", worst, 0.02));

  std::vector<double> grid = {-1.0, 0.0, 1.0};
  auto res = tricomi_density([](double x) { return x; }, grid);
  double end_dev = std::max(std::abs(res.a + std::sqrt(2.0)), std::abs(res.b - std::sqrt(2.0)));
  CHECK(check_report(12, "quadratic-potential endpoints vs +-sqrt(2)", end_dev, 1e-6));
  double rho0_dev = std::abs(res.density.y[1] - std::sqrt(2.0) / kPi);
  CHECK(check_report(12, "equilibrium density at 0 vs sqrt(2)/pi", rho0_dev, 1e-4));
}
