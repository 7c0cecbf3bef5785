#include "specstat/density.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "specstat/errors.hpp"
#include "specstat/quadrature.hpp"

namespace specstat {

using nlohmann::json;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr int kProjectionGrid = 512;

double cheb_eval(const std::vector<double> &c, double t) {
  // Clenshaw, t in [-1, 1]
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}
}  // namespace

// --- constructors ----------------------------------------------------------

DensityModel DensityModel::semicircle(double sigma, int n) {
  if (sigma <= 0.0 || n < 1) throw invalid_parameter_error("semicircle needs sigma > 0, n >= 1");
  DensityModel m;
  m.kind_ = Kind::semicircle;
  m.sigma_ = sigma;
  m.n_ = n;
  double r = 2.0 * sigma * std::sqrt(static_cast<double>(n));
  m.lo_ = -r;
  m.hi_ = r;
  return m;
}

DensityModel DensityModel::marchenko_pastur(double ratio, double sigma) {
  if (ratio <= 0.0 || ratio > 1.0 || sigma <= 0.0)
    throw invalid_parameter_error("marchenko_pastur needs ratio in (0,1], sigma > 0");
  DensityModel m;
  m.kind_ = Kind::marchenko_pastur;
  m.ratio_ = ratio;
  m.sigma_ = sigma;
  double s2 = sigma * sigma;
  m.lo_ = s2 * (1.0 - std::sqrt(ratio)) * (1.0 - std::sqrt(ratio));
  m.hi_ = s2 * (1.0 + std::sqrt(ratio)) * (1.0 + std::sqrt(ratio));
  m.build_tables();
  return m;
}

DensityModel DensityModel::polynomial(std::vector<double> cheb_coeffs, double lo, double hi) {
  if (cheb_coeffs.size() < 2 || !(hi > lo)) throw invalid_parameter_error("polynomial model needs degree >= 1, hi > lo");
  DensityModel m;
  m.kind_ = Kind::polynomial_cdf;
  m.coeffs_ = std::move(cheb_coeffs);
  m.lo_ = lo;
  m.hi_ = hi;
  m.build_tables();
  return m;
}

DensityModel DensityModel::gaussian_broadened(std::vector<double> centers, double bandwidth) {
  if (centers.empty() || bandwidth <= 0.0)
    throw invalid_parameter_error("gaussian_broadened needs centers and bandwidth > 0");
  DensityModel m;
  m.kind_ = Kind::gaussian_broadened;
  std::sort(centers.begin(), centers.end());
  m.lo_ = centers.front() - 8.0 * bandwidth;
  m.hi_ = centers.back() + 8.0 * bandwidth;
  m.centers_ = std::move(centers);
  m.bandwidth_ = bandwidth;
  return m;
}

DensityModel DensityModel::tabulated(Curve c) {
  if (c.x.size() < 2 || c.x.size() != c.y.size()) throw invalid_parameter_error("tabulated model needs a curve");
  DensityModel m;
  m.kind_ = Kind::tabulated;
  m.lo_ = c.x.front();
  m.hi_ = c.x.back();
  const std::size_t g = c.x.size();
  m.grid_pdf_.resize(g);
  m.grid_cdf_.resize(g, 0.0);
  // resample onto the stored uniform grid
  std::vector<double> xs(g);
  for (std::size_t i = 0; i < g; ++i) xs[i] = m.lo_ + (m.hi_ - m.lo_) * i / (g - 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < g; ++i) {
    double x = xs[i];
    while (j + 2 < c.x.size() && c.x[j + 1] < x) ++j;
    double t = (x - c.x[j]) / (c.x[j + 1] - c.x[j]);
    t = std::clamp(t, 0.0, 1.0);
    m.grid_pdf_[i] = std::max(0.0, c.y[j] + t * (c.y[j + 1] - c.y[j]));
  }
  double h = (m.hi_ - m.lo_) / (g - 1);
  for (std::size_t i = 1; i < g; ++i)
    m.grid_cdf_[i] = m.grid_cdf_[i - 1] + 0.5 * h * (m.grid_pdf_[i - 1] + m.grid_pdf_[i]);
  double total = m.grid_cdf_.back();
  if (total <= 0.0) throw invalid_parameter_error("tabulated density has zero mass");
  for (std::size_t i = 0; i < g; ++i) {
    m.grid_pdf_[i] /= total;
    m.grid_cdf_[i] /= total;
  }
  return m;
}

void DensityModel::build_tables() {
  const int g = kProjectionGrid;
  grid_pdf_.assign(g, 0.0);
  grid_cdf_.assign(g, 0.0);
  const double h = (hi_ - lo_) / (g - 1);
  for (int i = 0; i < g; ++i) {
    double x = lo_ + i * h;
    double p = 0.0;
    if (kind_ == Kind::marchenko_pastur) {
      double s2 = sigma_ * sigma_;
      double num = (hi_ - x) * (x - lo_);
      p = num > 0.0 && x > 0.0 ? std::sqrt(num) / (2.0 * kPi * s2 * ratio_ * x) : 0.0;
    } else if (kind_ == Kind::polynomial_cdf) {
      // derivative of the Chebyshev CDF fit, projected onto >= 0
      double t = 2.0 * (x - lo_) / (hi_ - lo_) - 1.0;
      double dt = 1e-6;
      double tm = std::max(-1.0, t - dt), tp = std::min(1.0, t + dt);
      p = std::max(0.0, (cheb_eval(coeffs_, tp) - cheb_eval(coeffs_, tm)) / ((tp - tm) * 0.5 * (hi_ - lo_)));
    }
    grid_pdf_[i] = p;
  }
  for (int i = 1; i < g; ++i) grid_cdf_[i] = grid_cdf_[i - 1] + 0.5 * h * (grid_pdf_[i - 1] + grid_pdf_[i]);
  double total = grid_cdf_.back();
  if (total <= 0.0) throw invalid_parameter_error("density model has zero mass");
  for (int i = 0; i < g; ++i) {
    grid_pdf_[i] /= total;
    grid_cdf_[i] /= total;
  }
}

// --- evaluation --------------------------------------------------------------

double DensityModel::pdf(double x) const {
  switch (kind_) {
    case Kind::semicircle: {
      double r = hi_;
      double q = r * r - x * x;
      return q > 0.0 ? std::sqrt(q) / (0.5 * kPi * r * r) : 0.0;
    }
    case Kind::gaussian_broadened: {
      double s = 0.0;
      const double inv = 1.0 / (bandwidth_ * std::sqrt(2.0 * kPi));
      for (double c : centers_) {
        double u = (x - c) / bandwidth_;
        s += std::exp(-0.5 * u * u);
      }
      return s * inv / centers_.size();
    }
    default: {
      if (x <= lo_ || x >= hi_) return 0.0;
      double pos = (x - lo_) / (hi_ - lo_) * (grid_pdf_.size() - 1);
      std::size_t i = std::min(static_cast<std::size_t>(pos), grid_pdf_.size() - 2);
      double t = pos - i;
      return grid_pdf_[i] + t * (grid_pdf_[i + 1] - grid_pdf_[i]);
    }
  }
}

double DensityModel::cdf(double x) const {
  switch (kind_) {
    case Kind::semicircle: {
      double r = hi_;
      if (x <= -r) return 0.0;
      if (x >= r) return 1.0;
      return 0.5 + x * std::sqrt(r * r - x * x) / (kPi * r * r) + std::asin(x / r) / kPi;
    }
    case Kind::gaussian_broadened: {
      double s = 0.0;
      for (double c : centers_) s += 0.5 * std::erfc(-(x - c) / (bandwidth_ * std::sqrt(2.0)));
      return s / centers_.size();
    }
    default: {
      if (x <= lo_) return 0.0;
      if (x >= hi_) return 1.0;
      double pos = (x - lo_) / (hi_ - lo_) * (grid_cdf_.size() - 1);
      std::size_t i = std::min(static_cast<std::size_t>(pos), grid_cdf_.size() - 2);
      double t = pos - i;
      return grid_cdf_[i] + t * (grid_cdf_[i + 1] - grid_cdf_[i]);
    }
  }
}

double DensityModel::integral(double abs_tol) const {
  return integrate([this](double x) { return pdf(x); }, lo_, hi_, abs_tol);
}

std::string DensityModel::to_json() const {
  json j;
  switch (kind_) {
    case Kind::semicircle:
      j["kind"] = "semicircle";
      j["sigma"] = sigma_;
      j["n"] = n_;
      break;
    case Kind::marchenko_pastur:
      j["kind"] = "marchenko_pastur";
      j["ratio"] = ratio_;
      j["sigma"] = sigma_;
      break;
    case Kind::polynomial_cdf:
      j["kind"] = "polynomial_cdf";
      j["coeffs"] = coeffs_;
      j["lo"] = lo_;
      j["hi"] = hi_;
      break;
    case Kind::gaussian_broadened:
      j["kind"] = "gaussian_broadened";
      j["centers"] = centers_;
      j["bandwidth"] = bandwidth_;
      break;
    case Kind::tabulated: {
      j["kind"] = "tabulated";
      j["lo"] = lo_;
      j["hi"] = hi_;
      j["pdf"] = grid_pdf_;
      break;
    }
  }
  return j.dump();
}

DensityModel DensityModel::from_json(const std::string &text) {
  json j = json::parse(text);
  std::string kind = j.at("kind");
  if (kind == "semicircle") return semicircle(j.at("sigma"), j.at("n"));
  if (kind == "marchenko_pastur") return marchenko_pastur(j.at("ratio"), j.at("sigma"));
  if (kind == "polynomial_cdf") return polynomial(j.at("coeffs").get<std::vector<double>>(), j.at("lo"), j.at("hi"));
  if (kind == "gaussian_broadened")
    return gaussian_broadened(j.at("centers").get<std::vector<double>>(), j.at("bandwidth"));
  if (kind == "tabulated") {
    Curve c;
    std::vector<double> pdf = j.at("pdf").get<std::vector<double>>();
    double lo = j.at("lo"), hi = j.at("hi");
    for (std::size_t i = 0; i < pdf.size(); ++i) {
      c.x.push_back(lo + (hi - lo) * i / (pdf.size() - 1));
      c.y.push_back(pdf[i]);
    }
    return tabulated(std::move(c));
  }
  throw invalid_parameter_error("unknown density model kind '" + kind + "'");
}

// --- operations -------------------------------------------------------------

double mean_level_spacing(const Spectrum &s, double a, double b) {
  if (!(a < b)) throw invalid_parameter_error("mean_level_spacing needs a < b");
  double num = 0.0;
  std::size_t pairs = 0;
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    if (s.values[j] >= a && s.values[j + 1] <= b) {
      num += s.values[j + 1] - s.values[j];
      ++pairs;
    }
  }
  if (pairs == 0) throw invalid_parameter_error("no consecutive eigenvalue pair inside the window");
  return num / static_cast<double>(pairs);
}

DensityModel fit_density(const std::vector<Spectrum> &spectra, FitMethod method, double param) {
  std::vector<double> pooled;
  for (const auto &s : spectra) pooled.insert(pooled.end(), s.values.begin(), s.values.end());
  if (pooled.empty()) throw invalid_parameter_error("fit_density needs a nonempty input");
  std::sort(pooled.begin(), pooled.end());
  const std::size_t m = pooled.size();

  if (method == FitMethod::gaussian_broadened) {
    double bw = param;
    if (bw == 0.0) {
      double span = pooled.back() - pooled.front();
      bw = m > 1 ? 2.0 * span / static_cast<double>(m - 1) : 1.0;  // twice the global mean spacing
      if (bw <= 0.0) bw = 1.0;
    }
    if (bw <= 0.0) throw invalid_parameter_error("bandwidth must be positive");
    return DensityModel::gaussian_broadened(pooled, bw);
  }

  int degree = param == 0.0 ? 7 : static_cast<int>(param);
  if (degree < 1) throw invalid_parameter_error("polynomial degree must be >= 1");
  double pad = (pooled.back() - pooled.front()) * 1e-3 + 1e-12;
  double lo = pooled.front() - pad, hi = pooled.back() + pad;

  // least squares of the empirical CDF in the Chebyshev basis (normal equations)
  const int nc = degree + 1;
  std::vector<double> ata(nc * nc, 0.0), atb(nc, 0.0), tvals(nc);
  const std::size_t stride = std::max<std::size_t>(1, m / 4096);  // cap the design size
  for (std::size_t i = 0; i < m; i += stride) {
    double t = 2.0 * (pooled[i] - lo) / (hi - lo) - 1.0;
    double f = (i + 0.5) / static_cast<double>(m);
    tvals[0] = 1.0;
    if (nc > 1) tvals[1] = t;
    for (int k = 2; k < nc; ++k) tvals[k] = 2.0 * t * tvals[k - 1] - tvals[k - 2];
    for (int r = 0; r < nc; ++r) {
      atb[r] += tvals[r] * f;
      for (int c = 0; c <= r; ++c) ata[r * nc + c] += tvals[r] * tvals[c];
    }
  }
  for (int r = 0; r < nc; ++r)
    for (int c = r + 1; c < nc; ++c) ata[r * nc + c] = ata[c * nc + r];
  // tiny ridge keeps the normal equations solvable for degenerate inputs
  for (int r = 0; r < nc; ++r) ata[r * nc + r] += 1e-12;

  // Cholesky-free: Gaussian elimination with partial pivoting
  std::vector<double> x(atb);
  for (int k = 0; k < nc; ++k) {
    int p = k;
    for (int i = k + 1; i < nc; ++i)
      if (std::abs(ata[i * nc + k]) > std::abs(ata[p * nc + k])) p = i;
    if (p != k) {
      for (int j = 0; j < nc; ++j) std::swap(ata[k * nc + j], ata[p * nc + j]);
      std::swap(x[k], x[p]);
    }
    double piv = ata[k * nc + k];
    for (int i = k + 1; i < nc; ++i) {
      double f = ata[i * nc + k] / piv;
      for (int j = k; j < nc; ++j) ata[i * nc + j] -= f * ata[k * nc + j];
      x[i] -= f * x[k];
    }
  }
  for (int k = nc - 1; k >= 0; --k) {
    for (int j = k + 1; j < nc; ++j) x[k] -= ata[k * nc + j] * x[j];
    x[k] /= ata[k * nc + k];
  }
  return DensityModel::polynomial(std::move(x), lo, hi);
}

UnfoldedSpectrum unfold(const Spectrum &s, const DensityModel &m, double lambda0) {
  if (lambda0 < m.support_lo() - 1e-12 || lambda0 > m.support_hi() + 1e-12)
    throw invalid_parameter_error("lambda0 must lie in the model support");
  UnfoldedSpectrum u;
  u.origin = lambda0;
  u.source = s.source;
  const double n = static_cast<double>(s.size());
  const double c0 = m.cdf(lambda0);
  u.values.reserve(s.size());
  for (double x : s.values) {
    if (x < m.support_lo() || x > m.support_hi()) ++u.clamped;  // cdf extends by constants
    u.values.push_back(n * (m.cdf(x) - c0));
  }
  return u;
}

double soft_edge_map_value(double x) {
  return (x >= 0.0 ? 1.0 : -1.0) * 2.0 / (3.0 * kPi) * std::pow(std::abs(x), 1.5);
}

std::vector<double> soft_edge_map(const std::vector<double> &values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double x : values) out.push_back(soft_edge_map_value(x));
  return out;
}

TricomiResult tricomi_density(const std::function<double(double)> &vprime, const std::vector<double> &grid) {
  // endpoint conditions:
  //   F1 = int_a^b V'(mu)/sqrt((b-mu)(mu-a)) dmu = 0
  //   F2 = (1/pi) int_a^b V'(mu) mu / sqrt(...) dmu - 1 = 0
  auto conditions = [&](double a, double b, double &f1, double &f2) {
    f1 = integrate_chebyshev_weight(vprime, a, b, 160);
    f2 = integrate_chebyshev_weight([&](double mu) { return vprime(mu) * mu; }, a, b, 160) / kPi - 1.0;
  };

  double a = -2.0, b = 2.0;
  bool converged = false;
  for (int it = 0; it < 80; ++it) {
    double f1, f2;
    conditions(a, b, f1, f2);
    if (std::abs(f1) < 1e-12 && std::abs(f2) < 1e-12) {
      converged = true;
      break;
    }
    double h = 1e-6 * (b - a);
    double f1a, f2a, f1b, f2b;
    conditions(a + h, b, f1a, f2a);
    conditions(a, b + h, f1b, f2b);
    double j11 = (f1a - f1) / h, j12 = (f1b - f1) / h;
    double j21 = (f2a - f2) / h, j22 = (f2b - f2) / h;
    double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || std::abs(det) < 1e-300) throw numeric_error("one-cut endpoint solve: singular Jacobian");
    double da = (-f1 * j22 + f2 * j12) / det;
    double db = (-j11 * f2 + j21 * f1) / det;
    // damped step, keep a < b
    double scale = 1.0;
    while (scale > 1e-4 && a + scale * da >= b + scale * db) scale *= 0.5;
    a += scale * da;
    b += scale * db;
    if (std::abs(da) + std::abs(db) < 1e-14 * (1.0 + std::abs(a) + std::abs(b))) {
      conditions(a, b, f1, f2);
      converged = std::abs(f1) < 1e-10 && std::abs(f2) < 1e-10;
      break;
    }
  }
  if (!converged) {
    double f1, f2;
    conditions(a, b, f1, f2);
    if (!(std::abs(f1) < 1e-10 && std::abs(f2) < 1e-10))
      throw numeric_error("one-cut endpoint solve failed to converge");
  }

  TricomiResult res;
  res.a = a;
  res.b = b;
  res.density.meta["name"] = "tricomi_density";
  res.density.meta["a"] = format_double(a);
  res.density.meta["b"] = format_double(b);
  for (double lam : grid) {
    double rho = 0.0;
    if (lam > a && lam < b) {
      double vl = vprime(lam);
      double pv = integrate_chebyshev_weight(
          [&](double mu) {
            double d = mu - lam;
            if (std::abs(d) < 1e-9 * (b - a)) {
              double eps = 1e-6 * (b - a);
              return (vprime(lam + eps) - vprime(lam - eps)) / (2.0 * eps);
            }
            return (vprime(mu) - vl) / d;
          },
          a, b, 256);
      rho = std::sqrt((b - lam) * (lam - a)) * pv / (kPi * kPi);
    }
    res.density.x.push_back(lam);
    res.density.y.push_back(rho);
  }
  return res;
}

}  // namespace specstat
