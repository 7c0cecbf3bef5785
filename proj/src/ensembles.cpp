#include "specstat/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specstat/eigen.hpp"
#include "specstat/errors.hpp"

namespace specstat {

namespace {
const char *kNames[] = {"A", "AI", "AII", "BD", "C", "AIII", "BDI", "CII", "CI", "DIII", "GinOE", "GinUE", "GinSE"};
}

const char *cartan_name(Cartan c) { return kNames[static_cast<int>(c)]; }

Cartan cartan_from_name(const std::string &name) {
  for (int i = 0; i < 13; ++i)
    if (name == kNames[i]) return static_cast<Cartan>(i);
  throw invalid_spec_error("unknown symmetry class '" + name + "'");
}

EnsembleSpec EnsembleSpec::make(Cartan c, int n, int nu, double sigma) {
  EnsembleSpec s;
  s.cartan = c;
  s.n = n;
  s.nu = nu;
  if (sigma > 0.0) {
    s.sigma = sigma;
  } else {
    s.sigma = 1.0;
    switch (c) {
      case Cartan::AII:
      case Cartan::CII:
      case Cartan::DIII:
      case Cartan::GinSE:
        s.sigma = std::sqrt(2.0);  // sigma_4 = sqrt(2) sigma_2 keeps Kramers levels on the sigma_2 scale
        break;
      default:
        break;
    }
  }
  s.validate();
  return s;
}

void EnsembleSpec::validate() const {
  if (n < 1) throw invalid_spec_error("block size n must be positive");
  if (sigma <= 0.0 || !std::isfinite(sigma)) throw invalid_spec_error("sigma must be positive");
  if (nu < 0) throw invalid_spec_error("nu must be nonnegative");
  switch (cartan) {
    case Cartan::BD:
    case Cartan::DIII:
      if (nu > 1) throw invalid_spec_error(std::string(cartan_name(cartan)) + " admits nu in {0,1}");
      break;
    case Cartan::AIII:
    case Cartan::BDI:
    case Cartan::CII:
      break;  // any nu >= 0
    default:
      if (nu != 0) throw invalid_spec_error(std::string(cartan_name(cartan)) + " requires nu = 0");
  }
}

int EnsembleSpec::beta() const {
  switch (cartan) {
    case Cartan::AI:
    case Cartan::BDI:
    case Cartan::CI:
    case Cartan::GinOE:
      return 1;
    case Cartan::AII:
    case Cartan::CII:
    case Cartan::DIII:
    case Cartan::GinSE:
      return 4;
    default:
      return 2;
  }
}

double EnsembleSpec::alpha() const {
  switch (cartan) {
    case Cartan::BD:
      return 2.0 * nu;
    case Cartan::C:
      return 2.0;
    case Cartan::AIII:
      return 2.0 * nu + 1.0;
    case Cartan::BDI:
      return nu;
    case Cartan::CII:
      return 4.0 * nu + 3.0;
    case Cartan::CI:
      return 1.0;
    case Cartan::DIII:
      return 4.0 * nu + 1.0;
    default:
      throw invalid_spec_error("alpha is defined for the seven non-Dyson classes only");
  }
}

int EnsembleSpec::zero_modes() const {
  switch (cartan) {
    case Cartan::BD:
    case Cartan::AIII:
    case Cartan::BDI:
      return nu;
    case Cartan::CII:
    case Cartan::DIII:
      return 2 * nu;
    default:
      return 0;
  }
}

int EnsembleSpec::matrix_dim() const {
  switch (cartan) {
    case Cartan::A:
    case Cartan::AI:
    case Cartan::GinOE:
    case Cartan::GinUE:
      return n;
    case Cartan::AII:
    case Cartan::C:
    case Cartan::CI:
    case Cartan::GinSE:
      return 2 * n;
    case Cartan::BD:
      return 2 * n + nu;
    case Cartan::AIII:
    case Cartan::BDI:
      return 2 * n + nu;
    case Cartan::CII:
      return 4 * n + 2 * nu;
    case Cartan::DIII:
      return 2 * (2 * n + nu);
  }
  return n;
}

// ---- samplers ----------------------------------------------------------------
//
// All entry variances follow from the flat measure with weight
// exp[-tr H^2 / (2 sigma^2)] (exp[-tr X X^dag / (2 sigma^2)] for Ginibre)
// restricted to the structure of the class.

namespace {

// Hermitian N x N: diagonal Var sigma^2, off-diagonal complex comps sigma^2/2.
CMatrix gauss_hermitian(int n, double sd_diag, double sd_off, CounterRng &rng) {
  CMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = sd_diag * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      cplx z(sd_off * rng.normal(), sd_off * rng.normal());
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

CMatrix gauss_real_symmetric(int n, double sd_diag, double sd_off, CounterRng &rng) {
  CMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = sd_diag * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      double x = sd_off * rng.normal();
      h(i, j) = x;
      h(j, i) = x;
    }
  }
  return h;
}

CMatrix gauss_complex_symmetric(int n, double sd_diag, double sd_off, CounterRng &rng) {
  CMatrix w(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, i) = cplx(sd_diag * rng.normal(), sd_diag * rng.normal());
    for (int j = i + 1; j < n; ++j) {
      cplx z(sd_off * rng.normal(), sd_off * rng.normal());
      w(i, j) = z;
      w(j, i) = z;
    }
  }
  return w;
}

CMatrix gauss_complex_antisymmetric(int n, double sd_off, CounterRng &rng) {
  CMatrix w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cplx z(sd_off * rng.normal(), sd_off * rng.normal());
      w(i, j) = z;
      w(j, i) = -z;
    }
  return w;
}

CMatrix gauss_complex_rect(int r, int c, double sd, CounterRng &rng) {
  CMatrix w(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) w(i, j) = cplx(sd * rng.normal(), sd * rng.normal());
  return w;
}

CMatrix gauss_real_rect(int r, int c, double sd, CounterRng &rng) {
  CMatrix w(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) w(i, j) = sd * rng.normal();
  return w;
}

// quaternion block pair in the tau_2 x 1 embedding: [[P, Q], [-conj(Q), conj(P)]]
CMatrix quaternion_embed(const CMatrix &p, const CMatrix &q) {
  const std::size_t r = p.rows(), c = p.cols();
  CMatrix w(2 * r, 2 * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      w(i, j) = p(i, j);
      w(i, c + j) = q(i, j);
      w(r + i, j) = -std::conj(q(i, j));
      w(r + i, c + j) = std::conj(p(i, j));
    }
  return w;
}

// chiral embedding [[0, W], [W^dag, 0]]
CMatrix chiral_embed(const CMatrix &w) {
  const std::size_t r = w.rows(), c = w.cols();
  CMatrix h(r + c, r + c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      h(i, r + j) = w(i, j);
      h(r + j, i) = std::conj(w(i, j));
    }
  return h;
}

// the off-diagonal block W of a chiral class draw
CMatrix chiral_block(const EnsembleSpec &s, CounterRng &rng) {
  const double sg = s.sigma;
  switch (s.cartan) {
    case Cartan::AIII:
      return gauss_complex_rect(s.n, s.n + s.nu, sg / std::sqrt(2.0), rng);
    case Cartan::BDI:
      return gauss_real_rect(s.n, s.n + s.nu, sg / std::sqrt(2.0), rng);
    case Cartan::CII: {
      CMatrix p = gauss_complex_rect(s.n, s.n + s.nu, sg / 2.0, rng);
      CMatrix q = gauss_complex_rect(s.n, s.n + s.nu, sg / 2.0, rng);
      return quaternion_embed(p, q);
    }
    case Cartan::CI:
      return gauss_complex_symmetric(s.n, sg / std::sqrt(2.0), sg / 2.0, rng);
    case Cartan::DIII:
      return gauss_complex_antisymmetric(2 * s.n + s.nu, sg / 2.0, rng);
    default:
      throw invalid_spec_error("not a chiral class");
  }
}

// AII: [[A, B], [B^dag, conj(A)]], A Hermitian, B complex antisymmetric.
// C:   [[A, B], [B^dag, -conj(A)]], A Hermitian, B complex symmetric.
CMatrix bdg_embed(const CMatrix &a, const CMatrix &b, double lower_sign) {
  const std::size_t n = a.rows();
  CMatrix h(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = a(i, j);
      h(i, n + j) = b(i, j);
      h(n + i, j) = std::conj(b(j, i));
      h(n + i, n + j) = lower_sign * std::conj(a(i, j));
    }
  return h;
}

CMatrix build_matrix(const EnsembleSpec &s, CounterRng &rng) {
  const double sg = s.sigma;
  const double r2 = std::sqrt(2.0);
  switch (s.cartan) {
    case Cartan::A:
      return gauss_hermitian(s.n, sg, sg / r2, rng);
    case Cartan::AI:
      return gauss_real_symmetric(s.n, sg, sg / r2, rng);
    case Cartan::AII: {
      CMatrix a = gauss_hermitian(s.n, sg / r2, sg / 2.0, rng);
      CMatrix b = gauss_complex_antisymmetric(s.n, sg / 2.0, rng);
      return bdg_embed(a, b, 1.0);
    }
    case Cartan::BD: {
      const int d = 2 * s.n + s.nu;
      CMatrix h(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
          double x = sg / r2 * rng.normal();
          h(i, j) = cplx(0.0, x);
          h(j, i) = cplx(0.0, -x);
        }
      return h;
    }
    case Cartan::C: {
      CMatrix a = gauss_hermitian(s.n, sg / r2, sg / 2.0, rng);
      CMatrix b = gauss_complex_symmetric(s.n, sg / r2, sg / 2.0, rng);
      return bdg_embed(a, b, -1.0);
    }
    case Cartan::AIII:
    case Cartan::BDI:
    case Cartan::CII:
    case Cartan::CI:
    case Cartan::DIII:
      return chiral_embed(chiral_block(s, rng));
    case Cartan::GinOE:
      return gauss_real_rect(s.n, s.n, sg, rng);
    case Cartan::GinUE:
      return gauss_complex_rect(s.n, s.n, sg, rng);
    case Cartan::GinSE: {
      CMatrix p = gauss_complex_rect(s.n, s.n, sg / r2, rng);
      CMatrix q = gauss_complex_rect(s.n, s.n, sg / r2, rng);
      return quaternion_embed(p, q);
    }
  }
  throw invalid_spec_error("unsupported class");
}

std::vector<double> herm_eigenvalues(const CMatrix &h, std::uint64_t seed) {
  try {
    RMatrix re(h.rows(), h.cols());
    bool is_real = true;
    for (std::size_t i = 0; i < h.rows() && is_real; ++i)
      for (std::size_t j = 0; j < h.cols(); ++j)
        if (h(i, j).imag() != 0.0) {
          is_real = false;
          break;
        }
    if (is_real) {
      for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) re(i, j) = h(i, j).real();
      return eig_sym(std::move(re));
    }
    return eig_herm(h);
  } catch (const numeric_error &e) {
    throw numeric_error(e.what(), seed);
  }
}

// smaller-side Gram matrix of W; its eigenvalues are the squared singular values
CMatrix gram_small(const CMatrix &w) {
  const std::size_t r = w.rows(), c = w.cols();
  if (r <= c) {
    CMatrix g(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        cplx s(0.0, 0.0);
        const cplx *wi = w.row(i), *wj = w.row(j);
        for (std::size_t k = 0; k < c; ++k) s += wi[k] * std::conj(wj[k]);
        g(i, j) = s;
        g(j, i) = std::conj(s);
      }
    return g;
  }
  CMatrix g(c, c);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i; j < c; ++j) {
      cplx s(0.0, 0.0);
      for (std::size_t k = 0; k < r; ++k) s += std::conj(w(k, i)) * w(k, j);
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  return g;
}

}  // namespace

MatrixSample sample_matrix(const EnsembleSpec &spec, std::uint64_t seed) {
  spec.validate();
  CounterRng rng(seed);
  return MatrixSample{build_matrix(spec, rng), spec.cartan};
}

Spectrum sample_spectrum(const EnsembleSpec &spec, std::uint64_t seed) {
  spec.validate();
  if (!spec.hermitian()) throw invalid_spec_error("Ginibre classes have complex spectra; use sample_spectrum_complex");
  CounterRng rng(seed);

  // Chiral classes with rectangular W: eigenvalues are +-singular values of W
  // plus the structural zeros, obtained from the small Gram matrix. DIII keeps
  // the dense path so its zero modes stay at solver accuracy.
  if (spec.chiral() && spec.cartan != Cartan::DIII) {
    CMatrix w = chiral_block(spec, rng);
    CMatrix g = gram_small(w);
    std::vector<double> g_eigs = herm_eigenvalues(g, seed);
    std::vector<double> vals;
    vals.reserve(spec.matrix_dim());
    for (double x : g_eigs) {
      double sv = std::sqrt(std::max(x, 0.0));
      vals.push_back(sv);
      vals.push_back(-sv);
    }
    for (int k = 0; k < spec.matrix_dim() - 2 * static_cast<int>(g_eigs.size()); ++k) vals.push_back(0.0);
    Spectrum s(std::move(vals));
    s.source = std::string("sampled ") + cartan_name(spec.cartan);
    return s;
  }

  CMatrix h = build_matrix(spec, rng);
  Spectrum s(herm_eigenvalues(h, seed));
  s.source = std::string("sampled ") + cartan_name(spec.cartan);
  return s;
}

ComplexSpectrum sample_spectrum_complex(const EnsembleSpec &spec, std::uint64_t seed) {
  spec.validate();
  if (spec.hermitian()) throw invalid_spec_error("Hermitian classes have real spectra; use sample_spectrum");
  CounterRng rng(seed);
  CMatrix x = build_matrix(spec, rng);
  try {
    ComplexSpectrum s(eig_general(std::move(x)));
    s.source = std::string("sampled ") + cartan_name(spec.cartan);
    return s;
  } catch (const numeric_error &e) {
    throw numeric_error(e.what(), seed);
  }
}

Spectrum spectrum_from_matrix(const EnsembleSpec &spec, const CMatrix &h) {
  if (h.rows() != h.cols()) throw invalid_parameter_error("matrix must be square");
  return Spectrum(herm_eigenvalues(h, 0), "override matrix");
}

ComplexSpectrum complex_spectrum_from_matrix(const CMatrix &h) {
  if (h.rows() != h.cols()) throw invalid_parameter_error("matrix must be square");
  return ComplexSpectrum(eig_general(h), "override matrix");
}

CMatrix parse_matrix_csv(const std::string &text) {
  std::vector<std::vector<cplx>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<cplx> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t colon = tok.find(':');
      try {
        if (colon == std::string::npos) {
          row.emplace_back(std::stod(tok), 0.0);
        } else {
          row.emplace_back(std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
        }
      } catch (...) {
        throw parse_error(lineno, "malformed matrix entry '" + tok + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw parse_error(lineno, "ragged matrix row");
    rows.push_back(std::move(row));
  }
  CMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Spectrum kramers_reduce(const Spectrum &s, double rel_tol) {
  if (s.size() % 2 != 0) throw numeric_error("Kramers reduction needs an even number of eigenvalues");
  std::vector<double> out;
  out.reserve(s.size() / 2);
  double scale = 0.0;
  for (double v : s.values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
    double a = s.values[i], b = s.values[i + 1];
    if (std::abs(b - a) > rel_tol * std::max(scale, std::max(std::abs(a), std::abs(b))))
      throw numeric_error("unpaired eigenvalue in Kramers reduction: gap " + format_double(b - a) + " at value " +
                          format_double(a));
    out.push_back(0.5 * (a + b));
  }
  Spectrum r(std::move(out), s.source);
  return r;
}

Spectrum strip_zero_modes(const Spectrum &s, const EnsembleSpec &spec) {
  const int k = spec.zero_modes();
  if (k == 0) return s;
  if (static_cast<int>(s.size()) < k) throw numeric_error("spectrum smaller than prescribed zero-mode count");
  std::vector<std::size_t> idx(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(s.values[a]) < std::abs(s.values[b]); });
  const double thr = 1e-10 * spec.sigma;
  for (int i = 0; i < k; ++i)
    if (std::abs(s.values[idx[i]]) > thr)
      throw numeric_error("prescribed zero mode missing: |" + format_double(s.values[idx[i]]) + "| > " +
                          format_double(thr));
  std::vector<bool> drop(s.size(), false);
  for (int i = 0; i < k; ++i) drop[idx[i]] = true;
  std::vector<double> vals;
  vals.reserve(s.size() - k);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!drop[i]) vals.push_back(s.values[i]);
  return Spectrum(std::move(vals), s.source);
}

}  // namespace specstat
