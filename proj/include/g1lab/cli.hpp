#pragma once

// Command-line front end. run() is the whole program; the executable in
// tools/ only forwards argv and the standard streams.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "g1lab/calculus.hpp"
#include "g1lab/g1.hpp"
#include "g1lab/io.hpp"
#include "g1lab/numrange.hpp"
#include "g1lab/pseudospec.hpp"
#include "g1lab/scenarios.hpp"

namespace g1lab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kDemoFailure = 3 };

namespace detail {

using io::json;

struct Options {
  std::string input;
  std::string norm = "2";
  std::optional<double> tol;
  std::string gen;
  std::size_t n = 4;
  std::uint64_t seed = 0;
  std::string param;
  std::string alpha = "0";
  std::string beta = "1";
  std::vector<std::string> eigs;
  std::string out;
  std::string format;
  std::vector<std::size_t> grid;
  std::vector<double> bounds;
  std::vector<double> eps;
  std::optional<int> nodes;
  std::string fn = "exp";
  std::vector<std::string> coeffs;
  std::string scenario;
};

struct Input {
  AlgebraElement element;
  json recipe;  // null for file input
};

inline std::vector<Complex> parse_complex_list(const std::vector<std::string>& items) {
  std::vector<Complex> v;
  for (const auto& s : items) v.push_back(io::parse_complex(s));
  return v;
}

inline Input load_input(const Options& o) {
  const NormKind kind = parse_norm_kind(o.norm);
  if (o.gen.empty()) {
    if (o.input.empty()) throw InvalidArgument("need an input matrix file or --gen");
    return {AlgebraElement(io::load_matrix(o.input), kind), nullptr};
  }
  if (!o.input.empty()) throw InvalidArgument("give either an input file or --gen, not both");
  json recipe{{"generator", o.gen}, {"n", o.n}, {"seed", o.seed}};
  if (o.gen == "nilpotent-algebra") {
    const NilpotentAlgebraElement x{io::parse_complex(o.alpha), io::parse_complex(o.beta)};
    recipe = {{"generator", o.gen}, {"alpha", io::complex_to_json(x.alpha)}, {"beta", io::complex_to_json(x.beta)}};
    return {AlgebraElement(x), recipe};
  }
  if (o.n < 1 || o.n > kMaxOrder) throw InvalidArgument("--n must lie in [1, 500]");
  ComplexMatrix m;
  if (o.gen == "normal") {
    std::vector<Complex> e = parse_complex_list(o.eigs);
    if (e.empty()) e = scenarios::separated_points(o.n, 0.25, 2.0, o.seed + 1);
    recipe["n"] = e.size();
    json ej = json::array();
    for (auto z : e) ej.push_back(io::complex_to_json(z));
    recipe["eigenvalues"] = ej;
    m = make_normal(e.size(), e, o.seed);
  } else if (o.gen == "diagonal") {
    m = make_diagonal(o.n, o.seed);
  } else if (o.gen == "jordan") {
    const Complex lam = o.param.empty() ? Complex{} : io::parse_complex(o.param);
    recipe["lambda"] = io::complex_to_json(lam);
    m = make_jordan(o.n, lam);
  } else if (o.gen == "shift") {
    m = make_shift_truncation(o.n);
  } else if (o.gen == "oblique") {
    const double t = o.param.empty() ? 1.0 : io::parse_double(o.param);
    recipe["angle_param"] = t;
    m = make_oblique_projection(o.n, t, o.seed);
  } else {
    throw InvalidArgument("unknown generator '" + o.gen +
                          "' (normal, diagonal, jordan, shift, oblique, nilpotent-algebra)");
  }
  recipe["norm"] = o.norm;
  return {AlgebraElement(std::move(m), kind), recipe};
}

inline void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty())
    out << text;
  else
    io::write_text(o.out, text);
}

inline std::string with_recipe(json j, const Input& in) {
  if (!in.recipe.is_null()) j["recipe"] = in.recipe;
  return j.dump() + "\n";
}

inline std::string element_to_json(const AlgebraElement& a, const Input& in) {
  if (a.is_nilpotent())
    return with_recipe({{"alpha", io::complex_to_json(a.nilpotent().alpha)},
                        {"beta", io::complex_to_json(a.nilpotent().beta)}},
                       in);
  return with_recipe({{"n", a.order()}, {"entries", io::matrix_entries_to_json(a.matrix())}}, in);
}

inline void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.format.empty()) return;
  for (const char* f : allowed)
    if (o.format == f) return;
  throw InvalidArgument("--format " + o.format + " is not supported by this subcommand");
}

inline int cmd_spectrum(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const Input in = load_input(o);
  const Spectrum s = o.tol ? spectrum(in.element, *o.tol) : spectrum(in.element);
  const int powers = o.nodes.value_or(64);
  const double limit = spectral_radius_limit(in.element, powers);
  if (o.format == "json") {
    json cl = json::array();
    for (const auto& c : s.clusters)
      cl.push_back({{"center", io::complex_to_json(c.center)}, {"multiplicity", c.multiplicity}, {"spread", c.spread}});
    emit(o, out,
         with_recipe({{"clusters", cl},
                      {"cluster_tol", s.cluster_tol},
                      {"spectral_radius", s.spectral_radius},
                      {"spectral_radius_limit", limit},
                      {"limit_powers", powers},
                      {"backward_error", s.backward_error}},
                     in));
    return kOk;
  }
  std::string text = "clusters " + std::to_string(s.clusters.size()) + "\n";
  for (const auto& c : s.clusters)
    text += "  " + io::format_double(c.center.real()) + " " + io::format_double(c.center.imag()) + "i  multiplicity " +
            std::to_string(c.multiplicity) + "  spread " + scenarios::sci(c.spread) + "\n";
  text += "spectral_radius " + io::format_double(s.spectral_radius) + "\n";
  text += "spectral_radius_limit " + io::format_double(limit) + " (min over k <= " + std::to_string(powers) +
          " of ||a^k||^(1/k))\n";
  emit(o, out, text);
  return kOk;
}

inline GridSpec grid_from_options(const Options& o, const Spectrum& s) {
  GridSpec g = default_grid(s);
  if (!o.grid.empty()) {
    g.nx = o.grid[0];
    g.ny = o.grid[1];
  }
  if (!o.bounds.empty()) {
    g.re_min = o.bounds[0];
    g.re_max = o.bounds[1];
    g.im_min = o.bounds[2];
    g.im_max = o.bounds[3];
  }
  g.validate();
  return g;
}

inline int cmd_pseudo(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"csv", "json", "svg"});
  for (double e : o.eps)
    if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("--eps values must be positive");
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format == "svg" && o.eps.empty()) throw InvalidArgument("--format svg needs --eps");
  const Input in = load_input(o);
  const Spectrum s = spectrum(in.element);
  const PseudospectrumField f = resolvent_field(in.element, grid_from_options(o, s));

  std::string body;
  if (format == "csv") {
    body = io::field_to_csv(f);
  } else if (format == "json") {
    json j = json::parse(io::field_to_json(f));
    body = with_recipe(std::move(j), in);
  } else {
    body = io::contour_svg(f, o.eps);
  }
  emit(o, out, body);

  // mask areas go beside the field: stdout when the field went to a file
  std::ostream& summary = o.out.empty() ? err : out;
  json areas = json::array();
  for (double e : o.eps) {
    const auto mask = level_set_membership(f, e);
    const auto members = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    const double area = static_cast<double>(members) * f.grid.cell_area();
    if (format == "json")
      areas.push_back({{"eps", e}, {"nodes", members}, {"area", area}});
    else
      summary << "eps " << io::format_double(e) << " nodes " << members << " area " << scenarios::sci(area) << "\n";
  }
  if (format == "json" && !o.eps.empty()) summary << json{{"mask_areas", areas}}.dump() << "\n";
  return kOk;
}

inline int cmd_g1check(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const Input in = load_input(o);
  const G1Report r = certify_g1(in.element, o.tol.value_or(kDefaultG1Tol));
  emit(o, out, with_recipe(io::report_to_json_value(r), in));
  return kOk;
}

inline int cmd_numrange(const Options& o, std::ostream& out) {
  require_format(o, {"json", "csv"});
  const Input in = load_input(o);
  const NumericalRangeHull h = numerical_range(in.element, o.nodes.value_or(kDefaultDirections));
  if (o.format == "csv") {
    std::string text = "re,im\n";
    for (auto v : h.boundary) text += io::format_double(v.real()) + "," + io::format_double(v.imag()) + "\n";
    emit(o, out, text);
  } else {
    emit(o, out, io::polygon_to_json(h.boundary));
  }
  if (!o.out.empty())
    out << "mode " << to_string(h.mode) << " vertices " << h.boundary.size() << " numerical_radius "
        << io::format_double(h.numerical_radius) << "\n";
  return kOk;
}

inline int cmd_decompose(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const Input in = load_input(o);
  const SpectralDecomposition d = spectral_decomposition(in.element, o.tol.value_or(1e-8));
  json j = json::parse(io::decomposition_to_json(d));
  emit(o, out, with_recipe(std::move(j), in));
  return kOk;
}

inline int cmd_funcalc(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  ScalarFunction f;
  if (o.fn == "exp") {
    if (!o.coeffs.empty()) throw InvalidArgument("--coeffs applies to --fn poly only");
    f = ScalarFunction::exp();
  } else if (o.fn == "poly") {
    if (o.coeffs.empty()) throw InvalidArgument("--fn poly needs --coeffs c0,c1,...");
    f = ScalarFunction::polynomial(parse_complex_list(o.coeffs));
  } else {
    throw InvalidArgument("unknown function '" + o.fn + "' (exp, poly)");
  }
  const Input in = load_input(o);
  const Spectrum s = spectrum(in.element);
  const AlgebraElement r = funcalc(in.element, s, f, enclosing_contour(s, o.nodes.value_or(256)));
  emit(o, out, element_to_json(r, in));
  return kOk;
}

inline int cmd_demo(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  std::vector<const scenarios::Scenario*> chosen;
  if (o.scenario == "all") {
    for (const auto& s : scenarios::all()) chosen.push_back(&s);
  } else if (const auto* s = scenarios::find(o.scenario)) {
    chosen.push_back(s);
  } else {
    std::string names;
    for (const auto& s : scenarios::all()) names += " " + s.name;
    throw InvalidArgument("unknown demo '" + o.scenario + "'; available: all" + names);
  }
  bool ok = true;
  json rows = json::array();
  std::string text;
  for (const auto* s : chosen) {
    for (const auto& c : s->run()) {
      ok = ok && c.pass;
      if (o.format == "json")
        rows.push_back({{"scenario", s->name}, {"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      else
        text += std::string(c.pass ? "PASS " : "FAIL ") + s->name + "/" + c.name + ": " + c.detail + "\n";
    }
  }
  if (o.format == "json") text = rows.dump() + "\n";
  emit(o, out, text);
  return ok ? kOk : kDemoFailure;
}

}  // namespace detail

/// Parses argv, runs one subcommand and returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  detail::Options o;
  CLI::App app{"Spectra, pseudospectra, numerical ranges and G1 certification for dense complex matrices", "g1lab"};
  app.require_subcommand(1);

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "matrix file (JSON or Matrix Market)");
    sub->add_option("--norm", o.norm, "operator norm: 1, 2 or inf")->capture_default_str();
    sub->add_option("--gen", o.gen, "generator: normal, diagonal, jordan, shift, oblique, nilpotent-algebra");
    sub->add_option("--n", o.n, "generated order")->capture_default_str();
    sub->add_option("--seed", o.seed, "generator seed")->capture_default_str();
    sub->add_option("--param", o.param, "jordan eigenvalue or oblique angle parameter");
    sub->add_option("--alpha", o.alpha, "nilpotent-algebra alpha")->capture_default_str();
    sub->add_option("--beta", o.beta, "nilpotent-algebra beta")->capture_default_str();
    sub->add_option("--eigs", o.eigs, "normal eigenvalues, comma separated")->delimiter(',')->allow_extra_args(false);
    sub->add_option("--out", o.out, "write the result here instead of stdout");
    sub->add_option("--format", o.format, "json, csv or svg");
  };

  auto* spec = app.add_subcommand("spectrum", "eigenvalue clusters and spectral radius");
  add_input(spec);
  spec->add_option("--tol", o.tol, "cluster tolerance");
  spec->add_option("--nodes", o.nodes, "largest power k in the radius formula (default 64)");

  auto* pseudo = app.add_subcommand("pseudo", "resolvent-norm field and pseudospectral masks");
  add_input(pseudo);
  pseudo->add_option("--grid", o.grid, "NX NY")->expected(2)->allow_extra_args(false);
  pseudo->add_option("--bounds", o.bounds, "RE0 RE1 IM0 IM1")->expected(4)->allow_extra_args(false);
  pseudo->add_option("--eps", o.eps, "E1[,E2...]")->delimiter(',')->allow_extra_args(false);

  auto* g1 = app.add_subcommand("g1check", "certify or refute the G1 condition");
  add_input(g1);
  g1->add_option("--tol", o.tol, "deviation tolerance (default 1e-6)");

  auto* nr = app.add_subcommand("numrange", "numerical range hull polygon");
  add_input(nr);
  nr->add_option("--nodes", o.nodes, "support directions (default 360)");

  auto* dec = app.add_subcommand("decompose", "spectral decomposition with defect table");
  add_input(dec);
  dec->add_option("--tol", o.tol, "defect tolerance (default 1e-8)");

  auto* fc = app.add_subcommand("funcalc", "holomorphic function of the input by contour quadrature");
  add_input(fc);
  fc->add_option("--fn", o.fn, "exp or poly")->capture_default_str();
  fc->add_option("--coeffs", o.coeffs, "polynomial coefficients c0,c1,... (complex allowed: 1-2i)")->delimiter(',')->allow_extra_args(false);
  fc->add_option("--nodes", o.nodes, "quadrature nodes (default 256)");

  auto* demo = app.add_subcommand("demo", "run a named reproduction scenario, or all");
  demo->add_option("name", o.scenario, "scenario name or 'all'")->required();
  demo->add_option("--out", o.out, "write the report here instead of stdout");
  demo->add_option("--format", o.format, "json for a machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (spec->parsed()) return detail::cmd_spectrum(o, out);
    if (pseudo->parsed()) return detail::cmd_pseudo(o, out, err);
    if (g1->parsed()) return detail::cmd_g1check(o, out);
    if (nr->parsed()) return detail::cmd_numrange(o, out);
    if (dec->parsed()) return detail::cmd_decompose(o, out);
    if (fc->parsed()) return detail::cmd_funcalc(o, out);
    return detail::cmd_demo(o, out);
  } catch (const NumericalError& e) {
    err << "g1lab: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const InvalidArgument& e) {
    err << "g1lab: " << e.what() << "\n";
    return kUsage;
  } catch (const io::json::exception& e) {
    err << "g1lab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "g1lab: " << e.what() << "\n";
    return kNumerical;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"g1lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace g1lab::cli
