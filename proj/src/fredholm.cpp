#include "specstat/fredholm.hpp"

#include <cmath>

#include "specstat/eigen.hpp"
#include "specstat/errors.hpp"
#include "specstat/pfaffian.hpp"

namespace specstat {

namespace {

RMatrix nystrom_matrix(const ScalarKernelFn &k, double a, double b, int order) {
  QuadratureRule q = gauss_legendre(order, a, b);
  std::vector<double> sw(order);
  for (int i = 0; i < order; ++i) sw[i] = std::sqrt(q.weights[i]);
  RMatrix m(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      double v = k(q.nodes[i], q.nodes[j]);
      if (!std::isfinite(v)) throw numeric_error("non-finite kernel value in Nystrom discretisation");
      m(i, j) = sw[i] * v * sw[j];
    }
  return m;
}

}  // namespace

double fredholm_det(const ScalarKernelFn &k, double a, double b, int order) {
  if (a == b) return 1.0;
  RMatrix km = nystrom_matrix(k, a, b, order);
  const int n = km.rows();
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - km(i, j);
  auto [sign, logabs] = lu_log_det(std::move(m));
  if (sign == 0.0) return 0.0;
  return sign * std::exp(logabs);
}

double fredholm_det_eigenproduct(const ScalarKernelFn &k, double a, double b, int order) {
  if (a == b) return 1.0;
  RMatrix km = nystrom_matrix(k, a, b, order);
  std::vector<double> alphas = eig_sym(std::move(km));
  double p = 1.0;
  for (double al : alphas) p *= 1.0 - al;
  return p;
}

double fredholm_pfaffian(const TripleKernelFn &t, double a, double b, int order) {
  if (a == b) return 1.0;
  QuadratureRule q = gauss_legendre(order, a, b);
  std::vector<double> sw(order);
  for (int i = 0; i < order; ++i) sw[i] = std::sqrt(q.weights[i]);
  const int n = order;

  // Exact node matrix of (S g)(x_i) = int_a^b sgn(x_i - y) g(y) dy acting on
  // the Gauss-Legendre interpolant: S_ij = 2 int_a^{x_i} l_j - w_j, with the
  // Lagrange-basis integrals through the Legendre expansion
  // l_j(u) = sum_m (2m+1)/2 w_j P_m(u_j) P_m(u). Keeps the distributional
  // sign part of J from wrecking the otherwise exponential convergence.
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  std::vector<double> uu(n);
  for (int i = 0; i < n; ++i) uu[i] = (q.nodes[i] - mid) / half;
  // P_m(u_i) for m = 0..n
  RMatrix pv(n, order + 1);
  for (int i = 0; i < n; ++i) {
    pv(i, 0) = 1.0;
    pv(i, 1) = uu[i];
    for (int m = 1; m < order; ++m) pv(i, m + 1) = ((2.0 * m + 1.0) * uu[i] * pv(i, m) - m * pv(i, m - 1)) / (m + 1);
  }
  // c_j(u_i) = int_{-1}^{u_i} l_j du, l_j expanded in Legendre polynomials
  // int_{-1}^{u} P_0 = u + 1; int_{-1}^{u} P_m = (P_{m+1}(u) - P_{m-1}(u))/(2m+1)
  RMatrix sgn_op(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double wj_ref = q.weights[j] / half;
      double c = 0.5 * wj_ref * (uu[i] + 1.0);
      for (int m = 1; m < order; ++m) {
        double im = (pv(i, m + 1) - pv(i, m - 1)) / (2.0 * m + 1.0);
        c += (2.0 * m + 1.0) / 2.0 * wj_ref * pv(j, m) * im;
      }
      // back to [a, b]: integrals scale by half; S_ij = 2 int_a^{x_i} l_j - w_j
      sgn_op(i, j) = 2.0 * c * half - q.weights[j];
    }
  }

  RMatrix m(2 * n, 2 * n);
  // J_2 - K_F in the symmetrised node basis: [[D, I - K], [-(I - K)^T, -J]].
  // The D block carries the same flipped sign as pf_kpoint, which makes the
  // expansion of the Pfaffian reproduce sum (-1)^k/k! int R_k.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      KernelTriple kt = t(q.nodes[i], q.nodes[j]);
      if (!std::isfinite(kt.K) || !std::isfinite(kt.D) || !std::isfinite(kt.J))
        throw numeric_error("non-finite kernel value in Nystrom discretisation");
      double dd = sw[i] * kt.D * sw[j];
      double kk = sw[i] * kt.K * sw[j];
      double jj = sw[i] * kt.J * sw[j] + kt.Jsign * sw[i] * sgn_op(i, j) / sw[j];
      m(i, j) = dd;
      m(i, n + j) = (i == j ? 1.0 : 0.0) - kk;
      m(n + j, i) = -((i == j ? 1.0 : 0.0) - kk);
      m(n + i, n + j) = -jj;
    }
  // antisymmetry check on the assembled block
  double asym = 0.0, scale = 0.0;
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i; j < 2 * n; ++j) {
      asym = std::max(asym, std::abs(m(i, j) + m(j, i)));
      scale = std::max(scale, std::abs(m(i, j)));
    }
  if (asym > 1e-8 * std::max(1.0, scale))
    throw numeric_error("discretised Fredholm Pfaffian block is not antisymmetric");
  for (int i = 0; i < 2 * n; ++i) {
    m(i, i) = 0.0;
    for (int j = i + 1; j < 2 * n; ++j) {
      double v = 0.5 * (m(i, j) - m(j, i));
      m(i, j) = v;
      m(j, i) = -v;
    }
  }
  double pf = pfaffian(std::move(m));
  // normalise by Pf of the block form J_2: (-1)^{n(n-1)/2}
  double norm = ((static_cast<long>(n) * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return pf * norm;
}

double gap_probability(const KernelDescriptor &desc, double a, double b, int order) {
  if (a == b) return 1.0;
  if (a > b) std::swap(a, b);
  desc.validate();
  if (desc.scalar()) {
    return fredholm_det([&](double x, double y) { return kernel_scalar(desc, x, y); }, a, b, order);
  }
  return fredholm_pfaffian([&](double x, double y) { return kernel_triple(desc, x, y); }, a, b, order);
}

Curve spacing_exact(int beta, const std::vector<double> &s_grid, int order) {
  if (beta != 1 && beta != 2 && beta != 4) throw invalid_parameter_error("beta must be 1, 2 or 4");
  if (s_grid.size() < 2) throw invalid_parameter_error("spacing grid needs >= 2 points");
  for (std::size_t i = 0; i + 1 < s_grid.size(); ++i) {
    double step = s_grid[i + 1] - s_grid[i];
    if (step <= 0.0 || step > 0.05 + 1e-12)
      throw invalid_parameter_error("spacing grid must be increasing with step <= 0.05");
  }
  KernelDescriptor desc = KernelDescriptor::bulk(beta);
  // gap probability of a centred interval of length s; even in s
  auto gp = [&](double s) {
    s = std::abs(s);
    if (s == 0.0) return 1.0;
    return gap_probability(desc, -0.5 * s, 0.5 * s, order);
  };
  const double h = 1e-3;
  Curve out;
  out.meta["name"] = "spacing_exact";
  out.meta["beta"] = std::to_string(beta);
  for (double s : s_grid) {
    // P(s) = 1 - s + O(s^4) has a cusp in its even extension, so stay on s >= 0
    double base = std::max(s, h);
    double p0 = gp(base);
    double d_h = (gp(base + h) - 2.0 * p0 + gp(base - h)) / (h * h);
    double d_h2 = (gp(base + 0.5 * h) - 2.0 * p0 + gp(base - 0.5 * h)) / (0.25 * h * h);
    out.x.push_back(s);
    out.y.push_back((4.0 * d_h2 - d_h) / 3.0);
  }
  return out;
}

Curve extreme_cdf(const KernelDescriptor &desc, const std::vector<double> &lambda_grid, ExtremeSide side, int order) {
  desc.validate();
  Curve out;
  out.meta["name"] = "extreme_cdf";
  out.meta["side"] = side == ExtremeSide::max ? "max" : "min";
  if (desc.regime == KernelDescriptor::Regime::soft) {
    if (side != ExtremeSide::max) throw invalid_parameter_error("soft-edge extreme law is for the largest eigenvalue");
    // truncation point: kernel diagonal below 1e-16 past s ~ 9.5
    const double cut = 9.8;
    for (double t : lambda_grid) {
      double upper = std::max(cut, t + 2.0);
      out.x.push_back(t);
      out.y.push_back(gap_probability(desc, t, upper, order));
    }
    return out;
  }
  if (desc.regime == KernelDescriptor::Regime::hard) {
    if (side != ExtremeSide::min) throw invalid_parameter_error("hard-edge extreme law is for the smallest eigenvalue");
    for (double t : lambda_grid) {
      out.x.push_back(t);
      out.y.push_back(t <= 0.0 ? 0.0 : 1.0 - gap_probability(desc, 0.0, t, order));
    }
    return out;
  }
  throw invalid_parameter_error("extreme_cdf needs a soft or hard regime kernel");
}

}  // namespace specstat
