#include "specstat/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specstat/errors.hpp"

namespace specstat {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kQlMaxIter = 60;
constexpr int kQrMaxIterPerEig = 100;

inline cplx phase_of(cplx z) {
  double a = std::abs(z);
  return a == 0.0 ? cplx(1.0, 0.0) : z / a;
}
}  // namespace

void sym_tridiag(RMatrix &a, std::vector<double> &d, std::vector<double> &e) {
  const std::size_t n = a.rows();
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n < 2) {
    if (n == 1) d[0] = a(0, 0);
    return;
  }
  std::vector<double> v(n), p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // trailing block size
    double sig2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) sig2 += a(i, k) * a(i, k);
    double sigma = std::sqrt(sig2);
    if (sigma == 0.0) {
      e[k] = 0.0;
      continue;
    }
    double x1 = a(k + 1, k);
    double alpha = x1 >= 0.0 ? -sigma : sigma;
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    double tau = 1.0 / (sigma * (sigma + std::abs(x1)));

    // p = tau * B v over the trailing block
    for (std::size_t i = 0; i < m; ++i) {
      const double *row = a.row(k + 1 + i) + (k + 1);
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
      p[i] = tau * s;
    }
    double vp = 0.0;
    for (std::size_t i = 0; i < m; ++i) vp += v[i] * p[i];
    double kc = 0.5 * tau * vp;
    for (std::size_t i = 0; i < m; ++i) p[i] -= kc * v[i];  // now w

    for (std::size_t i = 0; i < m; ++i) {
      double *row = a.row(k + 1 + i) + (k + 1);
      const double vi = v[i], wi = p[i];
      for (std::size_t j = 0; j < m; ++j) row[j] -= vi * p[j] + wi * v[j];
    }
    e[k] = alpha;
  }
  e[n - 2] = a(n - 1, n - 2);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
}

void herm_tridiag(CMatrix &a, std::vector<double> &d, std::vector<double> &e) {
  const std::size_t n = a.rows();
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n < 2) {
    if (n == 1) d[0] = a(0, 0).real();
    return;
  }
  std::vector<cplx> v(n), p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double sig2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) sig2 += std::norm(a(i, k));
    double sigma = std::sqrt(sig2);
    if (sigma == 0.0) {
      e[k] = 0.0;
      continue;
    }
    cplx x1 = a(k + 1, k);
    cplx alpha = -phase_of(x1) * sigma;
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    double tau = 1.0 / (sigma * (sigma + std::abs(x1)));

    for (std::size_t i = 0; i < m; ++i) {
      const cplx *row = a.row(k + 1 + i) + (k + 1);
      cplx s(0.0, 0.0);
      for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
      p[i] = tau * s;
    }
    double vp = 0.0;  // v† p is real for Hermitian blocks
    for (std::size_t i = 0; i < m; ++i) vp += (std::conj(v[i]) * p[i]).real();
    double kc = 0.5 * tau * vp;
    for (std::size_t i = 0; i < m; ++i) p[i] -= kc * v[i];

    for (std::size_t i = 0; i < m; ++i) {
      cplx *row = a.row(k + 1 + i) + (k + 1);
      const cplx vi = v[i], wi = p[i];
      for (std::size_t j = 0; j < m; ++j) row[j] -= vi * std::conj(p[j]) + wi * std::conj(v[j]);
    }
    e[k] = sigma;  // |alpha|
  }
  e[n - 2] = std::abs(a(n - 1, n - 2));
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
}

void tridiag_ql_eigenvalues(std::vector<double> &d, std::vector<double> &e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.resize(n, 0.0);  // sentinel slot

  // total iteration budget; clustered spectra can push single eigenvalues
  // well past the classic cap of 30
  long budget = static_cast<long>(kQlMaxIter) * std::max(n, 8);
  for (int l = 0; l < n; ++l) {
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (--budget < 0) throw numeric_error("QL eigenvalue iteration failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, pshift = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= pshift;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - pshift;
          r = (d[i] - g) * s + 2.0 * c * b;
          pshift = s * r;
          d[i + 1] = g + pshift;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= pshift;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
}

std::vector<double> eig_sym(RMatrix a) {
  std::vector<double> d, e;
  sym_tridiag(a, d, e);
  tridiag_ql_eigenvalues(d, e);
  return d;
}

std::vector<double> eig_herm(CMatrix a) {
  std::vector<double> d, e;
  herm_tridiag(a, d, e);
  tridiag_ql_eigenvalues(d, e);
  return d;
}

// --- general complex eigenvalues ---------------------------------------------

namespace {

void hessenberg(CMatrix &a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<cplx> v(n), s(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double sig2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) sig2 += std::norm(a(i, k));
    double sigma = std::sqrt(sig2);
    if (sigma == 0.0) continue;
    cplx x1 = a(k + 1, k);
    cplx alpha = -phase_of(x1) * sigma;
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    double tau = 1.0 / (sigma * (sigma + std::abs(x1)));

    // left (I - tau v v^H) applied to rows k+1..n-1, cols k..n-1, row-major
    const std::size_t w = n - k;  // columns k..n-1
    for (std::size_t j = 0; j < w; ++j) s[j] = cplx(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const cplx cv = std::conj(v[i]);
      const cplx *row = a.row(k + 1 + i) + k;
      for (std::size_t j = 0; j < w; ++j) s[j] += cv * row[j];
    }
    for (std::size_t j = 0; j < w; ++j) s[j] *= tau;
    for (std::size_t i = 0; i < m; ++i) {
      const cplx vi = v[i];
      cplx *row = a.row(k + 1 + i) + k;
      for (std::size_t j = 0; j < w; ++j) row[j] -= vi * s[j];
    }
    // right, cols k+1..n-1, all rows
    for (std::size_t i = 0; i < n; ++i) {
      cplx *row = a.row(i) + (k + 1);
      cplx acc(0.0, 0.0);
      for (std::size_t j = 0; j < m; ++j) acc += row[j] * v[j];
      acc *= tau;
      for (std::size_t j = 0; j < m; ++j) row[j] -= acc * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = cplx(0.0, 0.0);
  }
}

struct Givens {
  double c;
  cplx s;
};

inline Givens make_givens(cplx x, cplx y) {
  double ax = std::abs(x), ay = std::abs(y);
  if (ay == 0.0) return {1.0, cplx(0.0, 0.0)};
  if (ax == 0.0) return {0.0, std::conj(y) / ay};
  double t = std::hypot(ax, ay);
  return {ax / t, (x / ax) * std::conj(y) / t};
}

// eigenvalues of a complex 2x2
std::pair<cplx, cplx> eig2(cplx a, cplx b, cplx c, cplx d) {
  cplx tr2 = 0.5 * (a + d);
  cplx disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
  return {tr2 + disc, tr2 - disc};
}

}  // namespace

std::vector<cplx> eig_general(CMatrix a) {
  const std::size_t n = a.rows();
  std::vector<cplx> eig;
  eig.reserve(n);
  if (n == 0) return eig;
  if (n == 1) return {a(0, 0)};

  hessenberg(a);

  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i > 0 ? i - 1 : 0); j < n; ++j) anorm += std::abs(a(i, j));
  if (anorm == 0.0) anorm = 1.0;

  int hi = static_cast<int>(n) - 1;
  int its = 0;
  long total_its = 0;
  const long cap = static_cast<long>(kQrMaxIterPerEig) * static_cast<long>(n);
  std::vector<Givens> rot(n);

  while (hi >= 0) {
    // deflation scan
    int l;
    for (l = hi; l > 0; --l) {
      double small = kEps * (std::abs(a(l - 1, l - 1)) + std::abs(a(l, l)));
      if (small == 0.0) small = kEps * anorm;
      if (std::abs(a(l, l - 1)) <= small) {
        a(l, l - 1) = cplx(0.0, 0.0);
        break;
      }
    }
    if (l == hi) {
      eig.push_back(a(hi, hi));
      --hi;
      its = 0;
      continue;
    }
    if (l == hi - 1) {
      auto [z1, z2] = eig2(a(l, l), a(l, hi), a(hi, l), a(hi, hi));
      eig.push_back(z1);
      eig.push_back(z2);
      hi -= 2;
      its = 0;
      continue;
    }
    if (++total_its > cap) throw numeric_error("QR eigenvalue iteration failed to converge");

    // Wilkinson shift from the trailing 2x2; occasional exceptional shift
    cplx mu;
    if (its > 0 && its % 20 == 0) {
      mu = a(hi, hi) + 0.75 * std::abs(a(hi, hi - 1));
    } else {
      auto [z1, z2] = eig2(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1), a(hi, hi));
      mu = (std::abs(z1 - a(hi, hi)) < std::abs(z2 - a(hi, hi))) ? z1 : z2;
    }
    ++its;

    for (int i = l; i <= hi; ++i) a(i, i) -= mu;

    // QR by Givens chain, then RQ
    for (int j = l; j < hi; ++j) {
      Givens g = make_givens(a(j, j), a(j + 1, j));
      rot[j] = g;
      for (int col = j; col <= hi; ++col) {
        cplx x = a(j, col), y = a(j + 1, col);
        a(j, col) = g.c * x + g.s * y;
        a(j + 1, col) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (int j = l; j < hi; ++j) {
      const Givens &g = rot[j];
      int top = std::min(j + 1, hi);
      for (int row = l; row <= top; ++row) {
        cplx x = a(row, j), y = a(row, j + 1);
        a(row, j) = g.c * x + std::conj(g.s) * y;
        a(row, j + 1) = -g.s * x + g.c * y;
      }
    }
    for (int i = l; i <= hi; ++i) a(i, i) += mu;
  }
  return eig;
}

}  // namespace specstat
