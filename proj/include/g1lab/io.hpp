#pragma once

// Serialization: matrices (JSON, Matrix Market), resolvent fields (CSV,
// JSON), G1 reports, polygons, spectral decompositions, and SVG contour
// plots of fields by marching squares.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "g1lab/calculus.hpp"
#include "g1lab/g1.hpp"
#include "g1lab/pseudospec.hpp"

namespace g1lab::io {

using nlohmann::json;

/// Shortest text that reads back to the same double.
inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return {buf.data(), end};
}

inline double parse_double(std::string_view s) {
  if (s == "inf" || s == "+inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
  if (s == "-inf" || s == "-Infinity") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("cannot parse number '" + std::string(s) + "'");
  return x;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// Complex numbers and matrices

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidArgument("expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

/// Accepts `x`, `yi`, `x+yi`, `x-yi`, `i`, `-i` (also `j` for the unit).
inline Complex parse_complex(std::string_view s) {
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_double(s), 0.0};
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag = [](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t);
  };
  if (split == std::string_view::npos) return {0.0, imag(s)};
  return {parse_double(s.substr(0, split)), imag(s.substr(split))};
}

/// Nested rows of [re, im] pairs.
inline json matrix_entries_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_entries_from_json(const json& rows) {
  if (!rows.is_array()) throw InvalidArgument("matrix entries must be an array of rows");
  const std::size_t n = rows.size();
  const std::size_t c = n ? rows[0].size() : 0;
  ComplexMatrix m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) throw InvalidArgument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = complex_from_json(rows[i][j]);
  }
  return m;
}

inline std::string matrix_to_json(const ComplexMatrix& m) {
  json j;
  j["n"] = m.rows();
  j["entries"] = matrix_entries_to_json(m);
  return j.dump() + "\n";
}

inline ComplexMatrix check_input_matrix(ComplexMatrix m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw InvalidArgument("input matrix must be square and non-empty");
  if (m.rows() > kMaxOrder) throw InvalidArgument("input matrix order exceeds 500");
  if (!m.all_finite()) throw InvalidArgument("input matrix has non-finite entries");
  return m;
}

inline ComplexMatrix matrix_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("matrix JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw InvalidArgument("matrix JSON needs fields 'n' and 'entries'");
  ComplexMatrix m = matrix_entries_from_json(j["entries"]);
  if (!j["n"].is_number_integer() || j["n"].get<std::size_t>() != m.rows())
    throw InvalidArgument("matrix JSON: 'n' disagrees with entries");
  return check_input_matrix(std::move(m));
}

/// Matrix Market: coordinate or array layout; complex, real or integer
/// fields; general, symmetric, skew-symmetric or hermitian symmetry.
inline ComplexMatrix matrix_from_matrix_market(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("Matrix Market: empty input");
  std::istringstream hdr(line);
  std::string banner, object, layout, field, symmetry;
  hdr >> banner >> object >> layout >> field >> symmetry;
  auto lower = [](std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
  };
  object = lower(object), layout = lower(layout), field = lower(field), symmetry = lower(symmetry);
  if (banner != "%%MatrixMarket" || object != "matrix") throw InvalidArgument("Matrix Market: bad banner");
  if (layout != "coordinate" && layout != "array") throw InvalidArgument("Matrix Market: unknown layout " + layout);
  if (field != "complex" && field != "real" && field != "integer" && field != "double")
    throw InvalidArgument("Matrix Market: unsupported field " + field);
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" && symmetry != "hermitian")
    throw InvalidArgument("Matrix Market: unsupported symmetry " + symmetry);
  const bool cplx = field == "complex";

  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    std::istringstream ls(line);
    for (std::string t; ls >> t;) tokens.push_back(t);
  }
  std::size_t pos = 0;
  auto next = [&]() -> std::string_view {
    if (pos >= tokens.size()) throw InvalidArgument("Matrix Market: truncated input");
    return tokens[pos++];
  };
  auto next_index = [&](std::size_t limit) {
    const double v = parse_double(next());
    if (v < 1 || v > static_cast<double>(limit) || v != std::floor(v)) throw InvalidArgument("Matrix Market: bad index");
    return static_cast<std::size_t>(v) - 1;
  };
  auto next_value = [&]() {
    const double re = parse_double(next());
    const double im = cplx ? parse_double(next()) : 0.0;
    return Complex(re, im);
  };

  const double rows_d = parse_double(next()), cols_d = parse_double(next());
  if (rows_d < 1 || cols_d < 1 || rows_d > 1e6 || cols_d > 1e6) throw InvalidArgument("Matrix Market: bad size");
  const auto rows = static_cast<std::size_t>(rows_d), cols = static_cast<std::size_t>(cols_d);
  if (rows != cols) throw InvalidArgument("Matrix Market: matrix must be square");
  if (rows > kMaxOrder) throw InvalidArgument("input matrix order exceeds 500");
  ComplexMatrix m(rows, cols);
  auto place = [&](std::size_t i, std::size_t j, Complex v) {
    m(i, j) = v;
    if (i == j) return;
    if (symmetry == "symmetric") m(j, i) = v;
    if (symmetry == "skew-symmetric") m(j, i) = -v;
    if (symmetry == "hermitian") m(j, i) = std::conj(v);
  };
  if (layout == "coordinate") {
    const double nnz = parse_double(next());
    if (nnz < 0 || nnz > static_cast<double>(rows * cols)) throw InvalidArgument("Matrix Market: bad entry count");
    for (std::size_t k = 0; k < static_cast<std::size_t>(nnz); ++k) {
      const std::size_t i = next_index(rows);
      const std::size_t j = next_index(cols);
      place(i, j, next_value());
    }
  } else {
    // column-major; symmetric variants list the lower triangle only
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = (symmetry == "general" ? 0 : j + (symmetry == "skew-symmetric")); i < rows; ++i)
        place(i, j, next_value());
  }
  if (pos != tokens.size()) throw InvalidArgument("Matrix Market: trailing data");
  return check_input_matrix(std::move(m));
}

inline std::string matrix_to_matrix_market(const ComplexMatrix& m) {
  std::string out = "%%MatrixMarket matrix array complex general\n";
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      out += format_double(m(i, j).real()) + " " + format_double(m(i, j).imag()) + "\n";
  return out;
}

/// Matrix Market if the text starts with the banner, JSON otherwise.
inline ComplexMatrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 14, "%%MatrixMarket") == 0)
    return matrix_from_matrix_market(text.substr(first));
  return matrix_from_json(text);
}

inline ComplexMatrix load_matrix(const std::string& path) { return parse_matrix(read_text(path)); }

// ---------------------------------------------------------------------------
// Resolvent fields

/// Header `re,im,resnorm`, one node per line in storage order.
inline std::string field_to_csv(const PseudospectrumField& f) {
  std::string out = "re,im,resnorm\n";
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const Complex z = f.grid.node(k % f.grid.nx, k / f.grid.nx);
    out += format_double(z.real()) + "," + format_double(z.imag()) + "," + format_double(f.values[k]) + "\n";
  }
  return out;
}

/// Rebuilds the grid from the node coordinates; the norm is not recorded in
/// CSV and comes back as `norm`.
inline PseudospectrumField field_from_csv(const std::string& text, NormKind norm = NormKind::Induced2) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.substr(0, 13) != "re,im,resnorm") throw InvalidArgument("field CSV: bad header");
  std::vector<std::array<double, 3>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 3> r{};
    std::size_t start = 0;
    for (int c = 0; c < 3; ++c) {
      const auto comma = c < 2 ? line.find(',', start) : line.size();
      if (comma == std::string::npos) throw InvalidArgument("field CSV: expected three columns");
      r[static_cast<std::size_t>(c)] = parse_double(std::string_view(line).substr(start, comma - start));
      start = comma + 1;
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw InvalidArgument("field CSV: no data");
  std::size_t nx = 1;
  while (nx < rows.size() && rows[nx][1] == rows[0][1]) ++nx;
  if (rows.size() % nx != 0) throw InvalidArgument("field CSV: ragged grid");
  PseudospectrumField f;
  f.norm_kind = norm;
  f.grid.nx = nx;
  f.grid.ny = rows.size() / nx;
  f.grid.re_min = rows.front()[0];
  f.grid.re_max = rows[nx - 1][0];
  f.grid.im_min = rows.front()[1];
  f.grid.im_max = rows.back()[1];
  for (const auto& r : rows) f.values.push_back(r[2]);
  return f;
}

inline json grid_to_json(const GridSpec& g) {
  return {{"re_min", g.re_min}, {"re_max", g.re_max}, {"im_min", g.im_min},
          {"im_max", g.im_max}, {"nx", g.nx},         {"ny", g.ny}};
}

inline GridSpec grid_from_json(const json& j) {
  GridSpec g;
  g.re_min = j.at("re_min").get<double>();
  g.re_max = j.at("re_max").get<double>();
  g.im_min = j.at("im_min").get<double>();
  g.im_max = j.at("im_max").get<double>();
  g.nx = j.at("nx").get<std::size_t>();
  g.ny = j.at("ny").get<std::size_t>();
  return g;
}

/// Values that hit the spectrum are written as the string "inf".
inline std::string field_to_json(const PseudospectrumField& f) {
  json vals = json::array();
  for (double v : f.values) {
    if (std::isinf(v))
      vals.push_back("inf");
    else
      vals.push_back(v);
  }
  json j{{"grid", grid_to_json(f.grid)}, {"norm", std::string(to_string(f.norm_kind))}, {"values", std::move(vals)}};
  return j.dump() + "\n";
}

inline PseudospectrumField field_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    PseudospectrumField f;
    f.grid = grid_from_json(j.at("grid"));
    f.norm_kind = parse_norm_kind(j.at("norm").get<std::string>());
    for (const auto& v : j.at("values"))
      f.values.push_back(v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>());
    if (f.values.size() != f.grid.size()) throw InvalidArgument("field JSON: value count disagrees with grid");
    return f;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("field JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports, polygons, decompositions

inline json report_to_json_value(const G1Report& r) {
  return {{"verdict", std::string(to_string(r.verdict))},
          {"max_deviation", r.max_deviation},
          {"argmax", complex_to_json(r.argmax_point)},
          {"samples", r.samples_used},
          {"witness_margin", r.witness_margin}};
}

inline std::string report_to_json(const G1Report& r) { return report_to_json_value(r).dump() + "\n"; }

inline G1Report report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    G1Report r;
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.max_deviation = j.at("max_deviation").get<double>();
    r.argmax_point = complex_from_json(j.at("argmax"));
    r.samples_used = j.at("samples").get<std::size_t>();
    r.witness_margin = j.at("witness_margin").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("report JSON: ") + e.what());
  }
}

inline std::string polygon_to_json(const std::vector<Complex>& poly) {
  json j = json::array();
  for (auto v : poly) j.push_back(complex_to_json(v));
  return j.dump() + "\n";
}

inline std::vector<Complex> polygon_from_json(const std::string& text) {
  try {
    std::vector<Complex> out;
    for (const auto& v : json::parse(text)) out.push_back(complex_from_json(v));
    return out;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("polygon JSON: ") + e.what());
  }
}

inline json defects_to_json(const DecompositionDefects& d) {
  return {{"idempotency", d.idempotency},
          {"norm_one", d.norm_one},
          {"eigen", d.eigen},
          {"mutual_annihilation", d.mutual_annihilation},
          {"commutation", d.commutation},
          {"resolution", d.resolution},
          {"reconstruction", d.reconstruction},
          {"annihilation", d.annihilation}};
}

inline std::string decomposition_to_json(const SpectralDecomposition& d) {
  json lambdas = json::array(), projections = json::array();
  for (const auto& [lam, e] : d.pairs) {
    lambdas.push_back(complex_to_json(lam));
    projections.push_back(matrix_entries_to_json(e.as_matrix()));
  }
  json j{{"lambdas", std::move(lambdas)}, {"defects", defects_to_json(d.defects)}, {"projections", std::move(projections)}};
  return j.dump() + "\n";
}

/// What decomposition_to_json records, read back.
struct DecompositionRecord {
  std::vector<Complex> lambdas;
  DecompositionDefects defects;
  std::vector<ComplexMatrix> projections;
};

inline DecompositionRecord decomposition_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    DecompositionRecord r;
    for (const auto& l : j.at("lambdas")) r.lambdas.push_back(complex_from_json(l));
    const auto& d = j.at("defects");
    r.defects.idempotency = d.at("idempotency").get<double>();
    r.defects.norm_one = d.at("norm_one").get<double>();
    r.defects.eigen = d.at("eigen").get<double>();
    r.defects.mutual_annihilation = d.at("mutual_annihilation").get<double>();
    r.defects.commutation = d.at("commutation").get<double>();
    r.defects.resolution = d.at("resolution").get<double>();
    r.defects.reconstruction = d.at("reconstruction").get<double>();
    r.defects.annihilation = d.at("annihilation").get<double>();
    for (const auto& p : j.at("projections")) r.projections.push_back(matrix_entries_from_json(p));
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("decomposition JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// SVG contours

struct Segment {
  Complex a, b;
};

/// Marching squares on the node grid for the level set values = level.
/// Infinite values are treated as very large. Saddle cells are resolved by
/// the average of the four corners.
inline std::vector<Segment> contour_segments(const PseudospectrumField& f, double level) {
  std::vector<Segment> out;
  const auto& g = f.grid;
  if (g.nx < 2 || g.ny < 2) return out;
  auto val = [&](std::size_t i, std::size_t j) { return std::min(f.at(i, j), 1e300); };
  auto lerp = [&](Complex p, Complex q, double vp, double vq) {
    const double t = (level - vp) / (vq - vp);
    return p + std::clamp(t, 0.0, 1.0) * (q - p);
  };
  for (std::size_t j = 0; j + 1 < g.ny; ++j)
    for (std::size_t i = 0; i + 1 < g.nx; ++i) {
      // corners counter-clockwise from lower left
      const Complex p[4] = {g.node(i, j), g.node(i + 1, j), g.node(i + 1, j + 1), g.node(i, j + 1)};
      const double v[4] = {val(i, j), val(i + 1, j), val(i + 1, j + 1), val(i, j + 1)};
      int code = 0;
      for (int c = 0; c < 4; ++c)
        if (v[c] >= level) code |= 1 << c;
      if (code == 0 || code == 15) continue;
      auto edge = [&](int e) { return lerp(p[e], p[(e + 1) % 4], v[e], v[(e + 1) % 4]); };
      std::vector<int> crossings;
      for (int e = 0; e < 4; ++e)
        if (((code >> e) & 1) != ((code >> ((e + 1) % 4)) & 1)) crossings.push_back(e);
      if (crossings.size() == 2) {
        out.push_back({edge(crossings[0]), edge(crossings[1])});
      } else {
        const bool centre_in = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= level;
        // centre on the side of corners 0 and 2: cut off corners 1 and 3
        if (centre_in == static_cast<bool>(code & 1)) {
          out.push_back({edge(0), edge(1)});
          out.push_back({edge(2), edge(3)});
        } else {
          out.push_back({edge(3), edge(0)});
          out.push_back({edge(1), edge(2)});
        }
      }
    }
  return out;
}

inline std::string contour_svg(const PseudospectrumField& f, const std::vector<double>& eps) {
  const auto& g = f.grid;
  const double width = 640.0;
  const double height = std::clamp(width * (g.im_max - g.im_min) / (g.re_max - g.re_min), 64.0, 4096.0);
  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return std::string(buf);
  };
  auto px = [&](Complex z) {
    return std::pair{(z.real() - g.re_min) / (g.re_max - g.re_min) * width,
                     (g.im_max - z.imag()) / (g.im_max - g.im_min) * height};
  };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
                    "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0)) throw InvalidArgument("contour_svg: eps must be positive");
    out += "<g stroke=\"" + std::string(palette[k % 6]) + "\" stroke-width=\"1\" fill=\"none\" data-eps=\"" +
           format_double(eps[k]) + "\">\n<path d=\"";
    for (const auto& s : contour_segments(f, 1.0 / eps[k])) {
      const auto [x0, y0] = px(s.a);
      const auto [x1, y1] = px(s.b);
      out += "M" + fmt(x0) + " " + fmt(y0) + "L" + fmt(x1) + " " + fmt(y1);
    }
    out += "\"/>\n</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace g1lab::io
