// Command-line front end: sample -> (split/unfold) -> local statistics ->
// comparison against closed-form and operator-exact benchmarks.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "specstat/benchmarks.hpp"
#include "specstat/density.hpp"
#include "specstat/ensembles.hpp"
#include "specstat/errors.hpp"
#include "specstat/fredholm.hpp"
#include "specstat/jpdf.hpp"
#include "specstat/kernels.hpp"
#include "specstat/observables.hpp"
#include "specstat/quadrature.hpp"
#include "specstat/spectrum.hpp"
#include "specstat/svg.hpp"

using namespace specstat;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::string out_dir;
  std::string format = "csv";
  int threads = 1;
  bool svg = false;
  std::string argv_echo;
};

SeriesFormat series_format(const GlobalOpts &g) {
  return g.format == "json" ? SeriesFormat::json : SeriesFormat::csv;
}

std::string out_path(const GlobalOpts &g, const std::string &name) {
  if (g.out_dir.empty()) return name;
  return g.out_dir + "/" + name;
}

std::string provenance(const GlobalOpts &g, const json &config) {
  json j;
  j["command"] = g.argv_echo;
  j["config"] = config;
  j["version"] = kVersion;
  return j.dump();
}

void emit(const GlobalOpts &g, Curve c, const json &config, const std::string &name) {
  c.meta["provenance"] = provenance(g, config);
  std::ofstream out(out_path(g, name));
  if (!out) throw std::runtime_error("cannot open output file " + out_path(g, name));
  write_series(c, out, series_format(g));
  if (g.svg) {
    std::ofstream sv(out_path(g, name + ".svg"));
    sv << render_svg({c}, {});
  }
  std::cout << "wrote " << out_path(g, name) << "\n";
}

void emit(const GlobalOpts &g, Histogram h, const json &config, const std::string &name) {
  h.meta["provenance"] = provenance(g, config);
  std::ofstream out(out_path(g, name));
  if (!out) throw std::runtime_error("cannot open output file " + out_path(g, name));
  write_series(h, out, series_format(g));
  if (g.svg) {
    std::ofstream sv(out_path(g, name + ".svg"));
    sv << render_svg({}, {h});
  }
  std::cout << "wrote " << out_path(g, name) << "\n";
}

// model grammar: semicircle[:sigma[:n]] | poly:degree | gauss:bandwidth |
//                mp:ratio:sigma | uniform:a:b
DensityModel make_model(const std::string &spec, const std::vector<Spectrum> &data, int n_hint, double sigma_hint) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw invalid_parameter_error("empty model spec");
  if (parts[0] == "semicircle") {
    double sigma = parts.size() > 1 ? std::stod(parts[1]) : sigma_hint;
    int n = parts.size() > 2 ? std::stoi(parts[2]) : n_hint;
    return DensityModel::semicircle(sigma, n);
  }
  if (parts[0] == "poly") {
    double degree = parts.size() > 1 ? std::stod(parts[1]) : 7.0;
    return fit_density(data, FitMethod::polynomial_cdf, degree);
  }
  if (parts[0] == "gauss") {
    double bw = parts.size() > 1 ? std::stod(parts[1]) : 0.0;
    return fit_density(data, FitMethod::gaussian_broadened, bw);
  }
  if (parts[0] == "mp") {
    if (parts.size() < 3) throw invalid_parameter_error("mp model needs mp:ratio:sigma");
    return DensityModel::marchenko_pastur(std::stod(parts[1]), std::stod(parts[2]));
  }
  if (parts[0] == "uniform") {
    double a = parts.size() > 1 ? std::stod(parts[1]) : 0.0;
    double b = parts.size() > 2 ? std::stod(parts[2]) : 1.0;
    Curve c;
    c.x = {a, b};
    c.y = {1.0, 1.0};
    return DensityModel::tabulated(std::move(c));
  }
  throw invalid_parameter_error("unknown model '" + parts[0] + "'");
}

KernelDescriptor make_descriptor(const std::string &regime, int beta, double alpha, int n, double sigma, double nu,
                                 double phi0) {
  if (regime == "bulk") return KernelDescriptor::bulk(beta);
  if (regime == "hard") return KernelDescriptor::hard(beta, alpha);
  if (regime == "soft") return KernelDescriptor::soft(beta);
  if (regime == "picket") return KernelDescriptor::picket_fence(n);
  if (regime == "ginue-bulk") return KernelDescriptor::ginue_bulk();
  if (regime == "ginue-edge") return KernelDescriptor::ginue_edge(phi0);
  if (regime == "hermite") return KernelDescriptor::finite_hermite(n, sigma);
  if (regime == "laguerre") return KernelDescriptor::finite_laguerre(n, nu);
  throw invalid_parameter_error("unknown kernel regime '" + regime + "'");
}

Spectrum read_spectrum(const std::string &path, const std::string &fmt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto p = parse_spectrum(in, fmt == "csv" ? SpectrumFormat::csv : SpectrumFormat::plain);
  return *p.real;
}

// benchmark grammar: wigner:beta | poisson:dim | ginue | numvar:beta | sff:beta
std::function<double(double)> make_benchmark(const std::string &spec, std::string &label) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  label = spec;
  if (parts[0] == "wigner") {
    double beta = parts.size() > 1 ? std::stod(parts[1]) : 2.0;
    return [beta](double s) { return wigner_surmise(beta, s); };
  }
  if (parts[0] == "poisson") {
    int dim = parts.size() > 1 ? std::stoi(parts[1]) : 1;
    return [dim](double s) { return poisson_spacing(dim, s); };
  }
  if (parts[0] == "ginue") return [](double s) { return ginue_spacing(s); };
  if (parts[0] == "numvar") {
    int beta = parts.size() > 1 ? std::stoi(parts[1]) : 2;
    return [beta](double l) { return numvar_asymptotic(beta, l); };
  }
  if (parts[0] == "sff") {
    int beta = parts.size() > 1 ? std::stoi(parts[1]) : 2;
    return [beta](double k) { return sff_closed(beta, k); };
  }
  throw invalid_parameter_error("unknown benchmark '" + spec + "'");
}

// deterministic ensemble: draw i always uses derive_seed(seed, i), so the
// result is independent of the thread count
std::vector<Spectrum> sample_ensemble(const EnsembleSpec &spec, std::uint64_t seed, int draws, int threads) {
  std::vector<Spectrum> out(draws);
  if (threads <= 1) {
    for (int i = 0; i < draws; ++i) out[i] = sample_spectrum(spec, derive_seed(seed, i));
    return out;
  }
  std::atomic<int> next(0);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < draws; i = next.fetch_add(1))
        out[i] = sample_spectrum(spec, derive_seed(seed, i));
    });
  for (auto &th : pool) th.join();
  return out;
}

std::vector<UnfoldedSpectrum> unfold_bulk(const std::vector<Spectrum> &draws, const DensityModel &model,
                                          double window_frac) {
  std::vector<UnfoldedSpectrum> out;
  out.reserve(draws.size());
  for (const auto &s : draws) {
    auto u = unfold(s, model, 0.5 * (model.support_lo() + model.support_hi()));
    std::size_t n = u.values.size();
    std::size_t skip = static_cast<std::size_t>(n * (1.0 - window_frac) / 2.0);
    UnfoldedSpectrum bulk;
    bulk.origin = u.origin;
    bulk.values.assign(u.values.begin() + skip, u.values.end() - skip);
    out.push_back(std::move(bulk));
  }
  return out;
}

struct CompareReport {
  double sup = 0.0;
  double ks = 0.0;
};

// sup distance of the histogram against the bin-averaged benchmark density,
// plus a KS statistic of the cumulative histogram against the benchmark CDF
CompareReport compare_histogram(const Histogram &h, const std::function<double(double)> &bench) {
  CompareReport r;
  double cum_emp = 0.0, cum_ref = 0.0;
  for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b) {
    double lo = h.bin_edges[b], hi = h.bin_edges[b + 1];
    double ref = integrate(bench, lo, hi, 1e-10);
    r.sup = std::max(r.sup, std::abs(h.density[b] - ref / (hi - lo)));
    cum_emp += h.density[b] * (hi - lo);
    cum_ref += ref;
    r.ks = std::max(r.ks, std::abs(cum_emp - cum_ref));
  }
  return r;
}

json spacing_run(const std::vector<Spectrum> &spectra, const std::string &model_spec, int n_hint, double sigma_hint,
                 double window_frac, double bin_width, Histogram &out) {
  DensityModel model = make_model(model_spec, spectra, n_hint, sigma_hint);
  auto unfolded = unfold_bulk(spectra, model, window_frac);
  out = spacing_histogram(unfolded, std::nullopt, bin_width, 4.0);
  json cfg;
  cfg["model"] = model_spec;
  cfg["window_frac"] = window_frac;
  cfg["bin_width"] = bin_width;
  return cfg;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"spectral statistics toolkit: symmetry-class sampling, unfolding, local statistics"};
  app.require_subcommand(1);

  GlobalOpts g;
  const char *env_dir = std::getenv("SPECSTAT_OUT_DIR");
  g.out_dir = env_dir ? env_dir : ".";
  for (int i = 0; i < argc; ++i) {
    if (i) g.argv_echo += " ";
    g.argv_echo += argv[i];
  }
  app.add_option("--out-dir", g.out_dir, "output directory (env SPECSTAT_OUT_DIR)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "worker threads for Monte-Carlo fans");
  app.add_flag("--svg", g.svg, "also render a static SVG next to each output");

  std::string cls = "A";
  int n = 2, nu = 0, draws = 1;
  double sigma = 0.0;
  std::uint64_t seed = 1;
  std::string in_file, fmt = "plain", model_spec = "semicircle", out_name;
  double window_frac = 0.6, bin_width = 0.1, lambda0 = 0.0;
  std::string regime = "bulk";
  int beta = 2;
  double alpha = 1.0, nu_k = 0.0, phi0 = 0.0;
  double grid_min = 0.0, grid_max = 3.0;
  int grid_points = 61;
  int order = 64;
  std::string bench_spec = "wigner:2", hist_file, matrix_file, side = "max";

  auto *c_sample = app.add_subcommand("sample", "draw spectra from a symmetry class");
  c_sample->add_option("--class", cls, "Cartan label or GinOE/GinUE/GinSE");
  c_sample->add_option("--n", n, "block size N");
  c_sample->add_option("--nu", nu, "index nu");
  c_sample->add_option("--sigma", sigma, "scale sigma (0: class default)");
  c_sample->add_option("--draws", draws);
  c_sample->add_option("--seed", seed);
  c_sample->add_option("--matrix-file", matrix_file, "diagonalise this matrix instead (seed-override hook)");
  c_sample->add_option("--out", out_name, "output name prefix");

  auto *c_unfold = app.add_subcommand("unfold", "unfold a spectrum to unit mean spacing");
  c_unfold->add_option("--in", in_file)->required();
  c_unfold->add_option("--in-format", fmt, "plain or csv");
  c_unfold->add_option("--model", model_spec, "semicircle[:sigma:n] | poly:d | gauss:h | mp:r:s | uniform:a:b");
  c_unfold->add_option("--lambda0", lambda0);
  c_unfold->add_option("--n-hint", n, "N for semicircle defaults");
  c_unfold->add_option("--sigma-hint", sigma);
  c_unfold->add_option("--out", out_name);

  auto *c_spacing = app.add_subcommand("spacing", "nearest-neighbour spacing histogram");
  c_spacing->add_option("--in", in_file, "input spectrum (empirical mode)");
  c_spacing->add_option("--in-format", fmt);
  c_spacing->add_option("--class", cls, "Monte-Carlo mode ensemble class");
  c_spacing->add_option("--n", n);
  c_spacing->add_option("--nu", nu);
  c_spacing->add_option("--sigma", sigma);
  c_spacing->add_option("--draws", draws);
  c_spacing->add_option("--seed", seed);
  c_spacing->add_option("--unfold", model_spec);
  c_spacing->add_option("--window-frac", window_frac);
  c_spacing->add_option("--bin-width", bin_width);
  c_spacing->add_option("--out", out_name);

  auto *c_ratios = app.add_subcommand("ratios", "consecutive spacing ratios");
  c_ratios->add_option("--in", in_file)->required();
  c_ratios->add_option("--in-format", fmt);
  c_ratios->add_option("--out", out_name);

  auto *c_numvar = app.add_subcommand("numvar", "number variance of unfolded spectra");
  auto *c_sff = app.add_subcommand("sff", "connected spectral form factor");
  auto *c_cluster = app.add_subcommand("cluster", "two-point cluster function estimate");
  for (auto *c : {c_numvar, c_sff, c_cluster}) {
    c->add_option("--class", cls);
    c->add_option("--n", n);
    c->add_option("--nu", nu);
    c->add_option("--sigma", sigma);
    c->add_option("--draws", draws);
    c->add_option("--seed", seed);
    c->add_option("--unfold", model_spec);
    c->add_option("--window-frac", window_frac);
    c->add_option("--min", grid_min);
    c->add_option("--max", grid_max);
    c->add_option("--points", grid_points);
    c->add_option("--out", out_name);
  }

  auto *c_kernel = app.add_subcommand("kernel", "tabulate a correlation kernel on a grid");
  c_kernel->add_option("--regime", regime, "bulk|hard|soft|hermite|laguerre|ginue-bulk|ginue-edge");
  c_kernel->add_option("--beta", beta);
  c_kernel->add_option("--alpha", alpha);
  c_kernel->add_option("--n", n);
  c_kernel->add_option("--sigma", sigma);
  c_kernel->add_option("--nu", nu_k);
  c_kernel->add_option("--phi0", phi0);
  c_kernel->add_option("--min", grid_min);
  c_kernel->add_option("--max", grid_max);
  c_kernel->add_option("--points", grid_points);
  c_kernel->add_option("--out", out_name);

  auto *c_gap = app.add_subcommand("gap", "gap probability curve");
  c_gap->add_option("--regime", regime, "bulk|hard|soft");
  c_gap->add_option("--beta", beta);
  c_gap->add_option("--alpha", alpha);
  c_gap->add_option("--min", grid_min);
  c_gap->add_option("--max", grid_max);
  c_gap->add_option("--points", grid_points);
  c_gap->add_option("--order", order);
  c_gap->add_option("--out", out_name);

  auto *c_spexact = app.add_subcommand("spacing-exact", "operator-exact bulk spacing density");
  double step = 0.025;
  c_spexact->add_option("--beta", beta);
  c_spexact->add_option("--smax", grid_max);
  c_spexact->add_option("--step", step, "grid step (<= 0.05)");
  c_spexact->add_option("--order", order);
  c_spexact->add_option("--out", out_name);

  auto *c_extreme = app.add_subcommand("extreme", "extreme-eigenvalue CDF at a spectral edge");
  c_extreme->add_option("--regime", regime, "soft|hard");
  c_extreme->add_option("--beta", beta);
  c_extreme->add_option("--alpha", alpha);
  c_extreme->add_option("--min", grid_min);
  c_extreme->add_option("--max", grid_max);
  c_extreme->add_option("--points", grid_points);
  c_extreme->add_option("--order", order);
  c_extreme->add_option("--side", side, "max or min");
  c_extreme->add_option("--out", out_name);

  auto *c_bench = app.add_subcommand("benchmark", "tabulate a closed-form reference curve");
  c_bench->add_option("--name", bench_spec, "wigner:b|poisson:d|ginue|numvar:b|sff:b");
  c_bench->add_option("--min", grid_min);
  c_bench->add_option("--max", grid_max);
  c_bench->add_option("--points", grid_points);
  c_bench->add_option("--out", out_name);

  auto *c_compare = app.add_subcommand("compare", "compare a histogram against a benchmark");
  c_compare->add_option("--hist", hist_file)->required();
  c_compare->add_option("--benchmark", bench_spec);
  c_compare->add_option("--out", out_name);

  auto *c_pipeline = app.add_subcommand("pipeline", "sample -> unfold -> spacing -> compare");
  c_pipeline->add_option("--class", cls);
  c_pipeline->add_option("--n", n);
  c_pipeline->add_option("--nu", nu);
  c_pipeline->add_option("--sigma", sigma);
  c_pipeline->add_option("--draws", draws);
  c_pipeline->add_option("--seed", seed);
  c_pipeline->add_option("--unfold", model_spec);
  c_pipeline->add_option("--window-frac", window_frac);
  c_pipeline->add_option("--bin-width", bin_width);
  c_pipeline->add_option("--benchmark", bench_spec);
  c_pipeline->add_option("--out", out_name);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_sample->parsed()) {
      auto spec = EnsembleSpec::make(cartan_from_name(cls), n, nu, sigma);
      std::string prefix = out_name.empty() ? "sample_" + cls : out_name;
      if (!matrix_file.empty()) {
        std::ifstream mf(matrix_file);
        if (!mf) throw std::runtime_error("cannot open " + matrix_file);
        std::stringstream buf;
        buf << mf.rdbuf();
        auto s = spectrum_from_matrix(spec, parse_matrix_csv(buf.str()));
        std::ofstream out(out_path(g, prefix + "_override.txt"));
        out << "# provenance: " << provenance(g, {{"matrix_file", matrix_file}}) << "\n";
        for (double v : s.values) out << format_double(v) << "\n";
        std::cout << "wrote " << out_path(g, prefix + "_override.txt") << "\n";
        return 0;
      }
      json cfg = {{"class", cls}, {"n", n}, {"nu", nu}, {"sigma", spec.sigma}, {"draws", draws}, {"seed", seed}};
      for (int i = 0; i < draws; ++i) {
        std::string name = prefix + "_" + std::to_string(seed) + "_" + std::to_string(i) + ".txt";
        std::ofstream out(out_path(g, name));
        if (!out) throw std::runtime_error("cannot open output file");
        out << "# provenance: " << provenance(g, cfg) << "\n";
        if (spec.hermitian()) {
          auto s = sample_spectrum(spec, derive_seed(seed, i));
          for (double v : s.values) out << format_double(v) << "\n";
        } else {
          auto z = sample_spectrum_complex(spec, derive_seed(seed, i));
          for (auto v : z.values) out << format_double(v.real()) << " " << format_double(v.imag()) << "\n";
        }
        std::cout << "wrote " << out_path(g, name) << "\n";
      }
    } else if (c_unfold->parsed()) {
      Spectrum s = read_spectrum(in_file, fmt);
      DensityModel model = make_model(model_spec, {s}, n, sigma > 0 ? sigma : 1.0);
      auto u = unfold(s, model, lambda0);
      json cfg = {{"in", in_file}, {"model", model_spec}, {"lambda0", lambda0}, {"clamped", u.clamped}};
      std::string name = out_name.empty() ? "unfolded.txt" : out_name;
      std::ofstream out(out_path(g, name));
      out << "# provenance: " << provenance(g, cfg) << "\n# model: " << model.to_json() << "\n";
      for (double v : u.values) out << format_double(v) << "\n";
      std::cout << "wrote " << out_path(g, name) << "\n";
    } else if (c_spacing->parsed()) {
      Histogram h;
      json cfg;
      if (!in_file.empty()) {
        Spectrum s = read_spectrum(in_file, fmt);
        cfg = spacing_run({s}, model_spec, static_cast<int>(s.size()), sigma > 0 ? sigma : 1.0, window_frac,
                          bin_width, h);
        cfg["in"] = in_file;
      } else {
        auto spec = EnsembleSpec::make(cartan_from_name(cls), n, nu, sigma);
        auto ens = sample_ensemble(spec, seed, draws, g.threads);
        cfg = spacing_run(ens, model_spec, spec.matrix_dim(), spec.sigma, window_frac, bin_width, h);
        cfg["class"] = cls;
        cfg["n"] = n;
        cfg["draws"] = draws;
        cfg["seed"] = seed;
      }
      emit(g, std::move(h), cfg, out_name.empty() ? "spacing_hist." + g.format : out_name);
    } else if (c_ratios->parsed()) {
      Spectrum s = read_spectrum(in_file, fmt);
      auto r = spacing_ratios(s);
      Curve c;
      for (std::size_t i = 0; i < r.values.size(); ++i) {
        c.x.push_back(static_cast<double>(i + 1));
        c.y.push_back(r.values[i]);
      }
      c.meta["name"] = "spacing_ratios";
      c.meta["mean"] = format_double(r.mean);
      std::cout << "mean ratio " << r.mean << "\n";
      emit(g, std::move(c), json{{"in", in_file}}, out_name.empty() ? "ratios." + g.format : out_name);
    } else if (c_numvar->parsed() || c_sff->parsed() || c_cluster->parsed()) {
      auto spec = EnsembleSpec::make(cartan_from_name(cls), n, nu, sigma);
      auto ens = sample_ensemble(spec, seed, draws, g.threads);
      DensityModel model = make_model(model_spec, ens, spec.matrix_dim(), spec.sigma);
      auto unfolded = unfold_bulk(ens, model, window_frac);
      json cfg = {{"class", cls},       {"n", n},
                  {"draws", draws},     {"seed", seed},
                  {"model", model_spec}, {"window_frac", window_frac}};
      if (c_numvar->parsed()) {
        auto c = number_variance(unfolded, linspace(std::max(grid_min, 0.25), grid_max, grid_points));
        emit(g, std::move(c), cfg, out_name.empty() ? "numvar." + g.format : out_name);
      } else if (c_sff->parsed()) {
        auto c = form_factor(unfolded, linspace(std::max(grid_min, 0.02), grid_max, grid_points));
        emit(g, std::move(c), cfg, out_name.empty() ? "sff." + g.format : out_name);
      } else {
        auto c = cluster_2pt(unfolded, linspace(grid_max / grid_points, grid_max, grid_points));
        emit(g, std::move(c), cfg, out_name.empty() ? "cluster." + g.format : out_name);
      }
    } else if (c_kernel->parsed()) {
      auto d = make_descriptor(regime, beta, alpha, n, sigma > 0 ? sigma : 1.0, nu_k, phi0);
      Curve c;
      c.meta["name"] = "kernel_" + regime;
      for (double x : linspace(grid_min, grid_max, grid_points)) {
        c.x.push_back(x);
        if (d.regime == KernelDescriptor::Regime::ginue_bulk || d.regime == KernelDescriptor::Regime::ginue_edge) {
          c.y.push_back(ginue_correlation(d, {std::complex<double>(x, 0.0)}));
        } else if (d.scalar()) {
          c.y.push_back(kernel_scalar(d, x, x));
        } else {
          c.y.push_back(pf_kpoint(d, {x}));
        }
      }
      json cfg = {{"regime", regime}, {"beta", beta}, {"alpha", alpha}, {"n", n}};
      emit(g, std::move(c), cfg, out_name.empty() ? "kernel." + g.format : out_name);
    } else if (c_gap->parsed()) {
      auto d = make_descriptor(regime, beta, alpha, n, 1.0, nu_k, phi0);
      Curve c;
      c.meta["name"] = "gap_probability";
      for (double s : linspace(grid_min, grid_max, grid_points)) {
        c.x.push_back(s);
        if (d.regime == KernelDescriptor::Regime::bulk)
          c.y.push_back(gap_probability(d, -0.5 * s, 0.5 * s, order));
        else if (d.regime == KernelDescriptor::Regime::hard)
          c.y.push_back(gap_probability(d, 0.0, s, order));
        else
          c.y.push_back(gap_probability(d, s, std::max(9.8, s + 2.0), order));
      }
      json cfg = {{"regime", regime}, {"beta", beta}, {"alpha", alpha}, {"order", order}};
      emit(g, std::move(c), cfg, out_name.empty() ? "gap." + g.format : out_name);
    } else if (c_spexact->parsed()) {
      int pts = static_cast<int>(grid_max / step + 0.5) + 1;
      auto c = spacing_exact(beta, linspace(0.0, grid_max, pts), order);
      json cfg = {{"beta", beta}, {"step", step}, {"order", order}};
      emit(g, std::move(c), cfg, out_name.empty() ? "spacing_exact." + g.format : out_name);
    } else if (c_extreme->parsed()) {
      auto d = make_descriptor(regime, beta, alpha, n, 1.0, nu_k, phi0);
      ExtremeSide es = (side == "min" || regime == "hard") ? ExtremeSide::min : ExtremeSide::max;
      auto c = extreme_cdf(d, linspace(grid_min, grid_max, grid_points), es, order);
      json cfg = {{"regime", regime}, {"beta", beta}, {"side", es == ExtremeSide::min ? "min" : "max"}};
      emit(g, std::move(c), cfg, out_name.empty() ? "extreme." + g.format : out_name);
    } else if (c_bench->parsed()) {
      std::string label;
      auto f = make_benchmark(bench_spec, label);
      Curve c;
      c.meta["name"] = label;
      double lo = grid_min;
      if (bench_spec.rfind("numvar", 0) == 0 && lo <= 0.0) lo = 0.5;
      for (double s : linspace(lo, grid_max, grid_points)) {
        c.x.push_back(s);
        c.y.push_back(f(s));
      }
      emit(g, std::move(c), json{{"name", bench_spec}}, out_name.empty() ? "benchmark." + g.format : out_name);
    } else if (c_compare->parsed()) {
      std::ifstream in(hist_file);
      if (!in) throw std::runtime_error("cannot open " + hist_file);
      SeriesFormat hf = hist_file.size() > 4 && hist_file.substr(hist_file.size() - 4) == "json"
                            ? SeriesFormat::json
                            : SeriesFormat::csv;
      Histogram h = parse_histogram(in, hf);
      std::string label;
      auto f = make_benchmark(bench_spec, label);
      auto rep = compare_histogram(h, f);
      json out = {{"benchmark", label},
                  {"sup_distance", rep.sup},
                  {"ks_statistic", rep.ks},
                  {"provenance", provenance(g, json{{"hist", hist_file}})}};
      std::cout << out.dump(2) << "\n";
      if (!out_name.empty()) {
        std::ofstream of(out_path(g, out_name));
        of << out.dump(2) << "\n";
      }
    } else if (c_pipeline->parsed()) {
      auto spec = EnsembleSpec::make(cartan_from_name(cls), n, nu, sigma);
      auto ens = sample_ensemble(spec, seed, draws, g.threads);
      Histogram h;
      json cfg = spacing_run(ens, model_spec, spec.matrix_dim(), spec.sigma, window_frac, bin_width, h);
      cfg["class"] = cls;
      cfg["n"] = n;
      cfg["draws"] = draws;
      cfg["seed"] = seed;
      cfg["benchmark"] = bench_spec;
      std::string base = out_name.empty() ? "pipeline" : out_name;
      emit(g, h, cfg, base + "_hist." + g.format);
      std::string label;
      auto f = make_benchmark(bench_spec, label);
      auto rep = compare_histogram(h, f);
      json repj = {{"benchmark", label},
                   {"sup_distance", rep.sup},
                   {"ks_statistic", rep.ks},
                   {"provenance", provenance(g, cfg)}};
      std::ofstream of(out_path(g, base + "_report.json"));
      of << repj.dump(2) << "\n";
      std::cout << repj.dump(2) << "\n";
    }
  } catch (const invalid_spec_error &e) {
    std::cerr << "invalid specification: " << e.what() << "\n";
    return 2;
  } catch (const invalid_parameter_error &e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 2;
  } catch (const parse_error &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error &e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
