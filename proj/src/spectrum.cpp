#include "specstat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace specstat {

using nlohmann::json;

static void sort_with_labels(std::vector<double> &v, std::vector<LabelMap> &l) {
  if (l.empty()) {
    std::sort(v.begin(), v.end());
    return;
  }
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> v2(v.size());
  std::vector<LabelMap> l2(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    v2[i] = v[idx[i]];
    l2[i] = l[idx[i]];
  }
  v = std::move(v2);
  l = std::move(l2);
}

static void check_finite(const std::vector<double> &v) {
  for (double x : v)
    if (!std::isfinite(x)) throw invalid_parameter_error("spectrum contains non-finite value");
}

Spectrum::Spectrum(std::vector<double> v, std::string src) : values(std::move(v)), source(std::move(src)) {
  check_finite(values);
  std::sort(values.begin(), values.end());
}

Spectrum::Spectrum(std::vector<double> v, std::vector<LabelMap> l, std::string src)
    : values(std::move(v)), labels(std::move(l)), source(std::move(src)) {
  check_finite(values);
  if (!labels.empty() && labels.size() != values.size())
    throw invalid_parameter_error("label list size must match value list size");
  sort_with_labels(values, labels);
}

ComplexSpectrum::ComplexSpectrum(std::vector<std::complex<double>> v, std::string src)
    : values(std::move(v)), source(std::move(src)) {
  for (auto &z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw invalid_parameter_error("spectrum contains non-finite value");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// --- parsing ----------------------------------------------------------------

static std::string strip(const std::string &s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

static double parse_number(const std::string &tok, std::size_t lineno) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw parse_error(lineno, "trailing characters in number '" + tok + "'");
    if (!std::isfinite(v)) throw parse_error(lineno, "non-finite value '" + tok + "'");
    return v;
  } catch (const std::invalid_argument &) {
    throw parse_error(lineno, "malformed number '" + tok + "'");
  } catch (const std::out_of_range &) {
    throw parse_error(lineno, "number out of range '" + tok + "'");
  }
}

ParsedSpectrum parse_spectrum(std::istream &in, SpectrumFormat format) {
  std::vector<double> vals;
  std::vector<LabelMap> labels;
  std::vector<std::complex<double>> cvals;
  bool any_label = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;

    switch (format) {
      case SpectrumFormat::plain: {
        vals.push_back(parse_number(line, lineno));
        labels.emplace_back();
        break;
      }
      case SpectrumFormat::csv: {
        std::stringstream ss(line);
        std::string tok;
        if (!std::getline(ss, tok, ',')) throw parse_error(lineno, "empty row");
        vals.push_back(parse_number(strip(tok), lineno));
        LabelMap m;
        while (std::getline(ss, tok, ',')) {
          tok = strip(tok);
          if (tok.empty()) continue;
          std::size_t eq = tok.find('=');
          if (eq == std::string::npos) throw parse_error(lineno, "label '" + tok + "' is not key=value");
          m[strip(tok.substr(0, eq))] = strip(tok.substr(eq + 1));
        }
        if (!m.empty()) any_label = true;
        labels.push_back(std::move(m));
        break;
      }
      case SpectrumFormat::complex_pairs: {
        std::stringstream ss(line);
        std::string t1, t2, extra;
        if (!(ss >> t1 >> t2)) throw parse_error(lineno, "expected two reals (Re, Im)");
        if (ss >> extra) throw parse_error(lineno, "expected exactly two reals per line");
        cvals.emplace_back(parse_number(t1, lineno), parse_number(t2, lineno));
        break;
      }
    }
  }

  ParsedSpectrum out;
  if (format == SpectrumFormat::complex_pairs) {
    out.complex_values = ComplexSpectrum(std::move(cvals));
  } else {
    if (!any_label) labels.clear();
    out.real = Spectrum(std::move(vals), std::move(labels));
  }
  return out;
}

ParsedSpectrum parse_spectrum(const std::string &text, SpectrumFormat format) {
  std::istringstream ss(text);
  return parse_spectrum(ss, format);
}

// --- split / cdf ------------------------------------------------------------

static std::string canonical_label(const std::string &raw) {
  try {
    std::size_t pos = 0;
    double v = std::stod(raw, &pos);
    if (pos == raw.size() && std::isfinite(v)) return format_double(v);
  } catch (...) {
  }
  return raw;
}

std::vector<Spectrum> split_by_labels(const Spectrum &s, const std::string &key) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<LabelMap>>> buckets;
  std::vector<double> residual;
  std::vector<LabelMap> residual_labels;

  for (std::size_t i = 0; i < s.size(); ++i) {
    const LabelMap *m = s.labels.empty() ? nullptr : &s.labels[i];
    auto it = m ? m->find(key) : LabelMap::const_iterator{};
    if (!m || it == m->end()) {
      residual.push_back(s.values[i]);
      residual_labels.push_back(m ? *m : LabelMap{});
    } else {
      auto &b = buckets[canonical_label(it->second)];
      b.first.push_back(s.values[i]);
      b.second.push_back(*m);
    }
  }

  std::vector<Spectrum> out;
  for (auto &[label, b] : buckets) {
    Spectrum sub(std::move(b.first), std::move(b.second), s.source);
    out.push_back(std::move(sub));
  }
  if (!residual.empty() || out.empty()) {
    out.emplace_back(std::move(residual), std::move(residual_labels), s.source);
  }
  return out;
}

double empirical_cdf(const Spectrum &s, double mu) {
  if (s.size() == 0) throw invalid_parameter_error("empirical_cdf of empty spectrum");
  auto it = std::upper_bound(s.values.begin(), s.values.end(), mu);
  return static_cast<double>(it - s.values.begin()) / static_cast<double>(s.size());
}

// --- series I/O ---------------------------------------------------------------

static json meta_to_json(const std::map<std::string, std::string> &meta) {
  json j = json::object();
  for (auto &[k, v] : meta) j[k] = v;
  return j;
}

static std::map<std::string, std::string> meta_from_json(const json &j) {
  std::map<std::string, std::string> m;
  if (j.is_object())
    for (auto &[k, v] : j.items()) m[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return m;
}

void write_series(const Curve &c, std::ostream &out, SeriesFormat format) {
  if (format == SeriesFormat::csv) {
    for (auto &[k, v] : c.meta) out << "# " << k << ": " << v << "\n";
    out << (c.y_imag.empty() ? "x,y" : "x,y_re,y_im") << "\n";
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      out << format_double(c.x[i]) << "," << format_double(c.y[i]);
      if (!c.y_imag.empty()) out << "," << format_double(c.y_imag[i]);
      out << "\n";
    }
  } else {
    json j;
    j["meta"] = meta_to_json(c.meta);
    j["x"] = c.x;
    j["y"] = c.y;
    if (!c.y_imag.empty()) j["y_imag"] = c.y_imag;
    out << j.dump(2) << "\n";
  }
  if (!out) throw std::runtime_error("I/O failure while writing series");
}

void write_series(const Histogram &h, std::ostream &out, SeriesFormat format) {
  if (format == SeriesFormat::csv) {
    for (auto &[k, v] : h.meta) out << "# " << k << ": " << v << "\n";
    out << "# count: " << h.count << "\n# normalized: " << (h.normalized ? 1 : 0) << "\n";
    out << "bin_left,bin_right,density\n";
    for (std::size_t i = 0; i + 1 < h.bin_edges.size(); ++i)
      out << format_double(h.bin_edges[i]) << "," << format_double(h.bin_edges[i + 1]) << ","
          << format_double(h.density[i]) << "\n";
  } else {
    json j;
    j["meta"] = meta_to_json(h.meta);
    j["bin_edges"] = h.bin_edges;
    j["density"] = h.density;
    j["count"] = h.count;
    j["normalized"] = h.normalized;
    out << j.dump(2) << "\n";
  }
  if (!out) throw std::runtime_error("I/O failure while writing series");
}

Curve parse_curve(std::istream &in, SeriesFormat format) {
  Curve c;
  if (format == SeriesFormat::json) {
    json j = json::parse(in);
    c.meta = meta_from_json(j.value("meta", json::object()));
    c.x = j.at("x").get<std::vector<double>>();
    c.y = j.at("y").get<std::vector<double>>();
    if (j.contains("y_imag")) c.y_imag = j["y_imag"].get<std::vector<double>>();
    return c;
  }
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  bool has_imag = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t colon = line.find(':');
      if (colon != std::string::npos) c.meta[strip(line.substr(1, colon - 1))] = strip(line.substr(colon + 1));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      has_imag = line.find("y_im") != std::string::npos;
      continue;
    }
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) row.push_back(parse_number(strip(tok), lineno));
    if (row.size() != (has_imag ? 3u : 2u)) throw parse_error(lineno, "wrong column count in curve row");
    c.x.push_back(row[0]);
    c.y.push_back(row[1]);
    if (has_imag) c.y_imag.push_back(row[2]);
  }
  return c;
}

Histogram parse_histogram(std::istream &in, SeriesFormat format) {
  Histogram h;
  if (format == SeriesFormat::json) {
    json j = json::parse(in);
    h.meta = meta_from_json(j.value("meta", json::object()));
    h.bin_edges = j.at("bin_edges").get<std::vector<double>>();
    h.density = j.at("density").get<std::vector<double>>();
    h.count = j.value("count", 0u);
    h.normalized = j.value("normalized", false);
    return h;
  }
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t colon = line.find(':');
      if (colon != std::string::npos) {
        std::string k = strip(line.substr(1, colon - 1));
        std::string v = strip(line.substr(colon + 1));
        if (k == "count")
          h.count = std::stoull(v);
        else if (k == "normalized")
          h.normalized = (v == "1" || v == "true");
        else
          h.meta[k] = v;
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) row.push_back(parse_number(strip(tok), lineno));
    if (row.size() != 3u) throw parse_error(lineno, "wrong column count in histogram row");
    if (h.bin_edges.empty()) h.bin_edges.push_back(row[0]);
    h.bin_edges.push_back(row[1]);
    h.density.push_back(row[2]);
  }
  return h;
}

}  // namespace specstat
