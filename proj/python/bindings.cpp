#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specstat/benchmarks.hpp"
#include "specstat/density.hpp"
#include "specstat/ensembles.hpp"
#include "specstat/fredholm.hpp"
#include "specstat/jpdf.hpp"
#include "specstat/kernels.hpp"
#include "specstat/observables.hpp"
#include "specstat/pfaffian.hpp"
#include "specstat/spectrum.hpp"

namespace py = pybind11;
using namespace specstat;

namespace {

EnsembleSpec spec_of(const std::string &cls, int n, int nu, double sigma) {
  return EnsembleSpec::make(cartan_from_name(cls), n, nu, sigma);
}

RMatrix to_matrix(const std::vector<std::vector<double>> &rows) {
  RMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw invalid_parameter_error("ragged matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

KernelDescriptor descriptor_of(const std::string &regime, int beta, double alpha, int n, double sigma, double nu,
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

}  // namespace

PYBIND11_MODULE(_specstat, m) {
  m.doc() = "spectral statistics toolkit: symmetry-class sampling, unfolding, local statistics";
  m.attr("__version__") = kVersion;

  m.def(
      "sample_spectrum",
      [](const std::string &cls, int n, int nu, double sigma, std::uint64_t seed) {
        return sample_spectrum(spec_of(cls, n, nu, sigma), seed).values;
      },
      py::arg("cls"), py::arg("n"), py::arg("nu") = 0, py::arg("sigma") = 0.0, py::arg("seed") = 1,
      "sorted eigenvalues of one draw of a Hermitian symmetry class");
  m.def(
      "sample_spectrum_complex",
      [](const std::string &cls, int n, double sigma, std::uint64_t seed) {
        return sample_spectrum_complex(spec_of(cls, n, 0, sigma), seed).values;
      },
      py::arg("cls"), py::arg("n"), py::arg("sigma") = 0.0, py::arg("seed") = 1,
      "complex eigenvalues of one Ginibre draw");
  m.def(
      "spectrum_from_matrix",
      [](const std::vector<std::vector<double>> &rows) {
        RMatrix r = to_matrix(rows);
        CMatrix h(r.rows(), r.cols());
        for (std::size_t i = 0; i < r.rows(); ++i)
          for (std::size_t j = 0; j < r.cols(); ++j) h(i, j) = r(i, j);
        return spectrum_from_matrix(EnsembleSpec::make(Cartan::A, std::max<int>(1, r.rows())), h).values;
      },
      py::arg("rows"), "eigenvalues of an explicit real symmetric matrix");

  m.def(
      "unfold_semicircle",
      [](std::vector<double> values, double sigma, int n, double lambda0) {
        auto u = unfold(Spectrum(std::move(values)), DensityModel::semicircle(sigma, n), lambda0);
        return u.values;
      },
      py::arg("values"), py::arg("sigma"), py::arg("n"), py::arg("lambda0") = 0.0);
  m.def(
      "spacing_ratios",
      [](std::vector<double> values) {
        auto r = spacing_ratios(values);
        return py::make_tuple(r.values, r.mean);
      },
      py::arg("values"));
  m.def("soft_edge_map", py::overload_cast<const std::vector<double> &>(&soft_edge_map));

  m.def("wigner_surmise", &wigner_surmise, py::arg("beta"), py::arg("s"));
  m.def("poisson_spacing", &poisson_spacing, py::arg("dim"), py::arg("s"));
  m.def("ginue_spacing", &ginue_spacing, py::arg("s"));
  m.def("ginue_shat_derived", &ginue_shat_derived);
  m.def("numvar_asymptotic", &numvar_asymptotic, py::arg("beta"), py::arg("l"));
  m.def("sff_closed", &sff_closed, py::arg("beta"), py::arg("k"));

  m.def("airy_ai", &airy_ai);
  m.def("bessel_j", &bessel_j, py::arg("order"), py::arg("x"));
  m.def("sine_kernel", &sine_kernel, py::arg("x"), py::arg("y"));
  m.def("hard_edge_density", &hard_edge_density, py::arg("beta"), py::arg("alpha"), py::arg("x"));
  m.def("soft_edge_density", &soft_edge_density, py::arg("beta"), py::arg("x"));
  m.def("hermite_kernel", &hermite_kernel, py::arg("n"), py::arg("sigma"), py::arg("x"), py::arg("y"));
  m.def("laguerre_kernel", &laguerre_kernel, py::arg("n"), py::arg("nu"), py::arg("x"), py::arg("y"));

  m.def(
      "det_kpoint",
      [](const std::string &regime, int beta, double alpha, int n, double sigma, double nu,
         const std::vector<double> &points) {
        return det_kpoint(descriptor_of(regime, beta, alpha, n, sigma, nu, 0.0), points);
      },
      py::arg("regime"), py::arg("beta"), py::arg("alpha"), py::arg("n"), py::arg("sigma"), py::arg("nu"),
      py::arg("points"));
  m.def(
      "pf_kpoint",
      [](const std::string &regime, int beta, double alpha, const std::vector<double> &points) {
        return pf_kpoint(descriptor_of(regime, beta, alpha, 1, 1.0, 0.0, 0.0), points);
      },
      py::arg("regime"), py::arg("beta"), py::arg("alpha"), py::arg("points"));

  m.def("pfaffian", [](const std::vector<std::vector<double>> &rows) { return pfaffian(to_matrix(rows)); });

  m.def(
      "gap_probability",
      [](const std::string &regime, int beta, double alpha, double a, double b, int order) {
        return gap_probability(descriptor_of(regime, beta, alpha, 1, 1.0, 0.0, 0.0), a, b, order);
      },
      py::arg("regime"), py::arg("beta"), py::arg("alpha"), py::arg("a"), py::arg("b"), py::arg("order") = 64);
  m.def(
      "spacing_exact",
      [](int beta, const std::vector<double> &grid, int order) {
        auto c = spacing_exact(beta, grid, order);
        return py::make_tuple(c.x, c.y);
      },
      py::arg("beta"), py::arg("grid"), py::arg("order") = 64);
  m.def(
      "extreme_cdf",
      [](const std::string &regime, int beta, double alpha, const std::vector<double> &grid, const std::string &side,
         int order) {
        auto c = extreme_cdf(descriptor_of(regime, beta, alpha, 1, 1.0, 0.0, 0.0), grid,
                             side == "min" ? ExtremeSide::min : ExtremeSide::max, order);
        return py::make_tuple(c.x, c.y);
      },
      py::arg("regime"), py::arg("beta"), py::arg("alpha"), py::arg("grid"), py::arg("side") = "max",
      py::arg("order") = 64);

  m.def(
      "log_jpdf_dyson",
      [](std::vector<double> e, int beta, double sigma) { return log_jpdf_dyson(Spectrum(std::move(e)), beta, sigma); },
      py::arg("values"), py::arg("beta"), py::arg("sigma") = 1.0);
}
