#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specstat/errors.hpp"

namespace specstat {

using LabelMap = std::map<std::string, std::string>;

// Ordered real eigenvalue spectrum. labels, when non-empty, carries one
// tag->value map per eigenvalue and is permuted together with values.
struct Spectrum {
  std::vector<double> values;
  std::vector<LabelMap> labels;
  std::string source;

  Spectrum() = default;
  explicit Spectrum(std::vector<double> v, std::string src = "");
  Spectrum(std::vector<double> v, std::vector<LabelMap> l, std::string src = "");

  std::size_t size() const { return values.size(); }
};

struct ComplexSpectrum {
  std::vector<std::complex<double>> values;
  std::vector<LabelMap> labels;
  std::string source;

  ComplexSpectrum() = default;
  explicit ComplexSpectrum(std::vector<std::complex<double>> v, std::string src = "");

  std::size_t size() const { return values.size(); }
};

struct Histogram {
  std::vector<double> bin_edges;   // strictly increasing, size = bins+1
  std::vector<double> density;     // per bin
  std::size_t count = 0;           // total samples, including out-of-range ones
  bool normalized = false;         // true iff sum(density*width) == 1
  std::map<std::string, std::string> meta;
};

struct Curve {
  std::vector<double> x;                       // strictly increasing
  std::vector<double> y;
  std::vector<double> y_imag;                  // empty for real-valued curves
  std::map<std::string, std::string> meta;     // name, parameters, provenance
};

enum class SpectrumFormat { plain, csv, complex_pairs };
enum class SeriesFormat { csv, json };

// --- parsing ----------------------------------------------------------------

struct ParsedSpectrum {
  std::optional<Spectrum> real;
  std::optional<ComplexSpectrum> complex_values;
};

// plain: one real per line, '#' comments. csv: value, then key=value labels.
// complex: two whitespace-separated reals (Re, Im) per line.
// Empty input gives an empty spectrum. Malformed lines throw parse_error.
ParsedSpectrum parse_spectrum(std::istream &in, SpectrumFormat format);
ParsedSpectrum parse_spectrum(const std::string &text, SpectrumFormat format);

// --- operations -------------------------------------------------------------

// Partition by label value under `key`; values missing the key land in a final
// residual bucket. Outputs are sorted and ordered by canonical label value.
std::vector<Spectrum> split_by_labels(const Spectrum &s, const std::string &key);

// #{E_j <= mu} / N; throws invalid_parameter_error on an empty spectrum.
double empirical_cdf(const Spectrum &s, double mu);

void write_series(const Curve &c, std::ostream &out, SeriesFormat format);
void write_series(const Histogram &h, std::ostream &out, SeriesFormat format);
Curve parse_curve(std::istream &in, SeriesFormat format);
Histogram parse_histogram(std::istream &in, SeriesFormat format);

// canonical numeric formatting used in label ordering and serialization:
// 17 significant digits, guaranteeing value-exact round trips
std::string format_double(double v);

}  // namespace specstat
