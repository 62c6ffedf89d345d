#pragma once

// Named reproduction scenarios. Each runs a seeded experiment and returns
// pass/fail checks with short deterministic detail strings; the CLI `demo`
// subcommand and the acceptance suite both drive them.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "g1lab/algebras.hpp"
#include "g1lab/calculus.hpp"
#include "g1lab/g1.hpp"
#include "g1lab/numrange.hpp"
#include "g1lab/pseudospec.hpp"

namespace g1lab::scenarios {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Scenario {
  std::string name;
  std::string summary;
  std::function<std::vector<Check>()> run;
};

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline NormKind norm_cycle(std::size_t k) {
  static constexpr NormKind kinds[] = {NormKind::Induced1, NormKind::Induced2, NormKind::InducedInf};
  return kinds[k % 3];
}

/// n points in [−box, box]² with pairwise distance ≥ min_sep.
inline std::vector<Complex> separated_points(std::size_t n, double min_sep, double box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<Complex> pts;
  for (int attempt = 0; pts.size() < n; ++attempt) {
    if (attempt > 100000) throw InvalidArgument("separated_points: box too small for requested separation");
    const Complex z(u(rng), u(rng));
    bool ok = true;
    for (auto w : pts) ok = ok && std::abs(z - w) >= min_sep;
    if (ok) pts.push_back(z);
  }
  return pts;
}

// ---------------------------------------------------------------------------

inline std::vector<Check> lower_bound() {
  double worst = std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
  for (std::size_t k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 19;
    const AlgebraElement a(make_random(n, 1000 + k), norm_cycle(k));
    const Spectrum s = spectrum(a);
    std::mt19937_64 rng(7000 + k);
    std::uniform_real_distribution<double> u(-(1.0 + s.spectral_radius), 1.0 + s.spectral_radius);
    for (int t = 0; t < 50; ++t) {
      try {
        worst = std::min(worst, g1_deviation(a, s, {u(rng), u(rng)}));
        ++samples;
      } catch (const SpectrumHit&) {
      }
    }
  }
  return {{"min deviation over random matrices", worst >= -1e-8 && samples >= 9900,
           "min g = " + sci(worst) + " over " + std::to_string(samples) + " samples"}};
}

inline std::vector<Check> normal_g1() {
  std::size_t consistent = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 5;
    const auto e = separated_points(n, 0.25, 2.0, 100 + k);
    const auto rep = certify_g1(AlgebraElement(make_normal(n, e, 200 + k), NormKind::Induced2));
    if (rep.verdict == Verdict::G1Consistent) ++consistent;
    worst = std::max(worst, rep.max_deviation);
  }
  return {{"normal matrices certify G1-consistent", consistent == 50 && worst <= 1e-7,
           std::to_string(consistent) + "/50 consistent, max deviation " + sci(worst)}};
}

inline std::vector<Check> uniform_algebra() {
  std::size_t consistent = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < 50; ++k) {
    const auto rep = certify_g1(AlgebraElement(make_diagonal(2 + k % 7, 300 + k), NormKind::InducedInf));
    if (rep.verdict == Verdict::G1Consistent) ++consistent;
    worst = std::max(worst, rep.max_deviation);
  }
  return {{"diagonal matrices in the max norm certify G1-consistent", consistent == 50 && worst <= 1e-9,
           std::to_string(consistent) + "/50 consistent, max deviation " + sci(worst)}};
}

inline std::vector<Check> nilpotent_algebra() {
  const Complex alphas[] = {{0.0, 0.0}, {1.0, 1.0}, {-0.5, 0.0}, {0.25, -2.0}};
  const Complex betas[] = {{0.0, 0.0}, {1.0, 0.0}, {-0.5, 2.0}, {0.0, -0.75}, {3.0, 1.0}};
  double worst = 0.0, worst_scalar = 0.0;
  std::size_t points = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      const std::size_t k = 5 * i + j;
      const Complex z = alphas[i] + std::polar(0.5 * static_cast<double>(1 + k % 3), std::numbers::pi * k / 10.0);
      const AlgebraElement x = NilpotentAlgebraElement{alphas[i], betas[j]};
      const double g = g1_deviation(x, z);
      const double expect = std::abs(betas[j]) / std::abs(z - alphas[i]);
      worst = std::max(worst, std::abs(g - expect));
      if (betas[j] == Complex(0.0)) worst_scalar = std::max(worst_scalar, g);
      ++points;
    }
  return {{"deviation equals |beta|/|z - alpha|", worst <= 1e-12,
           std::to_string(points) + " lattice points, max error " + sci(worst)},
          {"scalars have zero deviation", worst_scalar <= 1e-12, "max scalar deviation " + sci(worst_scalar)}};
}

inline std::vector<Check> jordan() {
  std::vector<Check> out;
  for (std::size_t n : {2u, 3u})
    for (std::size_t k = 0; k < 3; ++k) {
      const AlgebraElement a(make_jordan(n), norm_cycle(k));
      const auto rep = certify_g1(a);
      out.push_back({"J" + std::to_string(n) + "(0) norm " + std::string(to_string(norm_cycle(k))) + " refuted",
                     rep.verdict == Verdict::NotG1 && rep.witness_margin > 0.0,
                     std::string(to_string(rep.verdict)) + ", margin " + sci(rep.witness_margin)});
    }
  const double g = g1_deviation(AlgebraElement(make_jordan(2), NormKind::Induced2), 1.0);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  out.push_back({"J2(0) 2-norm deviation at z = 1 is phi - 1", std::abs(g - (phi - 1.0)) <= 1e-8,
                 "g(1) - (phi - 1) = " + sci(g - (phi - 1.0))});
  return out;
}

inline std::vector<Check> pseudospectrum_disks() {
  std::vector<Check> out;
  const AlgebraElement a(ComplexMatrix::diagonal(std::vector<Complex>{0.0, 1.0}), NormKind::Induced2);
  const Spectrum s = spectrum(a);
  const GridSpec g = default_grid(s);
  const auto field = resolvent_field(a, g);
  const double band = g.cell_diagonal();
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto mask = level_set_membership(field, eps);
    std::size_t mismatched = 0, outside_band = 0, members = 0;
    for (std::size_t q = 0; q < mask.size(); ++q) {
      const double d = distance_to_spectrum(g.node(q % g.nx, q / g.nx), s);
      members += mask[q];
      if (mask[q] != (d <= eps)) {
        ++mismatched;
        if (std::abs(d - eps) > band) ++outside_band;
      }
    }
    const double area = static_cast<double>(members) * g.cell_area();
    out.push_back({"eps " + sci(eps) + " mask equals union of disks", outside_band == 0,
                   std::to_string(mismatched) + " boundary mismatches, " + std::to_string(outside_band) +
                       " outside band; area " + sci(area) + " vs " + sci(2.0 * std::numbers::pi * eps * eps)});
  }
  return out;
}

inline std::vector<Check> projections() {
  std::vector<Check> out;
  for (std::size_t k = 0; k < 5; ++k) {
    const std::size_t n = 2 + 2 * k;
    const std::size_t rank = 1 + k % (n - 1);
    const auto rep =
        hermitian_idempotent_test(AlgebraElement(make_orthogonal_projection(n, rank, 400 + k), NormKind::Induced2), 1e-8);
    out.push_back({"orthogonal projection n=" + std::to_string(n) + " rank " + std::to_string(rank),
                   rep.hermitian_idempotent && rep.g1_consistent,
                   rep.conclusion + ", max deviation " + sci(rep.certification.max_deviation)});
  }
  const auto ob = hermitian_idempotent_test(AlgebraElement(make_oblique_projection(2, 1.0, 0), NormKind::Induced2), 1e-8);
  const double err = ob.norm_minus_one - (std::sqrt(2.0) - 1.0);
  out.push_back({"oblique projection refuted", ob.refuted && std::abs(err) <= 1e-10,
                 ob.conclusion + "; ||P|| - 1 - (sqrt2 - 1) = " + sci(err)});
  return out;
}

inline std::vector<Check> riesz() {
  double worst_def = 0.0, worst_vec = 0.0;
  std::size_t points = 0;
  for (std::size_t k = 0; k < 20; ++k) {
    const std::size_t n = 2 + k % 6;
    const auto e = separated_points(n, 0.5, 3.0, 500 + k);
    const AlgebraElement a(make_normal(n, e, 600 + k), NormKind::Induced2);
    for (std::size_t i = 0; i < n; ++i) {
      const auto rep = verify_isolated_point(a, i, 1e-8);
      worst_def = std::max({worst_def, rep.idempotency_defect, rep.eigen_defect, rep.norm_defect});
      worst_vec = std::max(worst_vec, rep.eigenvector_residual);
      ++points;
    }
  }
  return {{"Riesz projection defects", worst_def <= 1e-8, std::to_string(points) + " points, max defect " + sci(worst_def)},
          {"eigenvector residuals", worst_vec <= 1e-8, "max residual " + sci(worst_vec)}};
}

/// Shared by the decomposition and diagonalizability scenarios: normal
/// matrices with m ∈ {2, 3, 4} clusters and repeated eigenvalues.
inline std::vector<AlgebraElement> decomposition_suite() {
  std::vector<AlgebraElement> out;
  for (std::size_t k = 0; k < 20; ++k) {
    const std::size_t m = 2 + k % 3;
    const auto centers = separated_points(m, 0.5, 2.0, 700 + k);
    std::vector<Complex> e(centers);
    for (std::size_t r = 0; r < k % 3; ++r) e.push_back(centers[r % m]);
    out.emplace_back(make_normal(e.size(), e, 800 + k), NormKind::Induced2);
  }
  return out;
}

inline std::vector<Check> decomposition() {
  double worst = 0.0, worst_res = 0.0, worst_f = 0.0;
  std::size_t consistent = 0;
  const auto suite = decomposition_suite();
  for (std::size_t k = 0; k < suite.size(); ++k) {
    const auto& a = suite[k];
    const auto d = spectral_decomposition(a, 1e-8);
    const auto& df = d.defects;
    worst = std::max({worst, df.idempotency, df.norm_one, df.mutual_annihilation, df.resolution, df.reconstruction,
                      df.annihilation});
    if (d.consistent) ++consistent;
    const Spectrum s = spectrum(a);
    std::mt19937_64 rng(900 + k);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int t = 0; t < 20;) {
      const Complex z(u(rng), u(rng));
      if (distance_to_spectrum(z, s) < 0.1) continue;
      ++t;
      const AlgebraElement r = resolvent(a, z);
      const double kappa = a.shifted(-z).norm() * r.norm();
      worst_res = std::max(worst_res, (decomposed_resolvent(d, z) - r).norm() / (r.norm() * kappa));
    }
    const auto fe = funcalc(a, s, ScalarFunction::exp(), enclosing_contour(s, 256));
    worst_f = std::max(worst_f, (decomposed_funcalc(d, ScalarFunction::exp()) - fe).norm() / (1.0 + fe.norm()));
  }
  return {{"six decomposition defects", worst <= 1e-7,
           "max defect " + sci(worst) + ", " + std::to_string(consistent) + "/20 within defect tolerance"},
          {"decomposed resolvent matches direct", worst_res <= 1e-7, "max relative error / kappa " + sci(worst_res)},
          {"decomposed exp matches contour exp", worst_f <= 1e-7, "max relative difference " + sci(worst_f)}};
}

inline std::vector<Check> diagonalizability() {
  bool ranks_ok = true;
  double worst = 0.0;
  for (const auto& a : decomposition_suite()) {
    const auto rep = diagonalizability_report(a, 1e-8);
    ranks_ok = ranks_ok && rep.rank_sum == rep.order;
    worst = std::max(worst, rep.max_residual);
  }
  const auto j = diagonalizability_report(AlgebraElement(make_jordan(2), NormKind::Induced2), 1e-8);
  return {{"rank sums equal order", ranks_ok, ranks_ok ? "all 20 direct sums" : "rank deficit found"},
          {"eigenspace residuals", worst <= 1e-7, "max residual " + sci(worst)},
          {"J2(0) fails eigenspace check", !j.diagonalizable && std::abs(j.max_residual - 1.0) <= 1e-10,
           "residual - 1 = " + sci(j.max_residual - 1.0)}};
}

inline std::vector<Check> quadrature() {
  const std::vector<Complex> e{{0.745, 0.0}, {-0.5, 0.4}, {0.1, -0.6}, {-1.26, 0.0}, {0.0, 1.3}};
  const AlgebraElement a(make_normal(5, e, 1000), NormKind::Induced2);
  const Spectrum s = spectrum(a);
  std::vector<AlgebraElement> f;
  for (int n = 32; n <= 512; n *= 2) f.push_back(funcalc(a, s, ScalarFunction::exp(), {{Circle{0.0, 1.0, n}}}));
  std::vector<double> diff;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) diff.push_back((f[i] - f[i + 1]).norm());
  bool ok = true;
  std::string detail = "differences";
  for (std::size_t i = 0; i < diff.size(); ++i) {
    detail += " " + sci(diff[i]);
    if (i > 0 && diff[i] > 0.5 * diff[i - 1]) ok = false;
  }
  return {{"trapezoidal error halves per doubling, N = 32..256", ok, detail}};
}

inline std::vector<Check> norm_chain() {
  std::size_t holds = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 200; ++k) {
    const AlgebraElement a(make_random(2 + k % 11, 5000 + k), norm_cycle(k));
    const auto rep = check_g1_necessary(a);
    if (rep.chain_holds) ++holds;
    worst = std::min({worst, rep.slack_radius_numrad, rep.slack_numrad_norm, rep.slack_norm_e_numrad});
  }
  std::vector<AlgebraElement> family;
  for (std::size_t k = 0; k < 10; ++k) {
    const std::size_t n = 2 + k % 5;
    family.emplace_back(make_normal(n, separated_points(n, 0.25, 2.0, 5500 + k), 5600 + k), NormKind::Induced2);
    family.emplace_back(make_diagonal(n, 5700 + k), NormKind::InducedInf);
  }
  for (std::size_t k = 0; k < 5; ++k)
    family.emplace_back(Complex(0.5 + k, 1.0 - k) * ComplexMatrix::identity(2 + k), norm_cycle(k));
  std::size_t consistent = 0, prop_ok = 0;
  double worst_h = 0.0, worst_e = -std::numeric_limits<double>::infinity();
  for (const auto& a : family) {
    if (certify_g1(a).verdict != Verdict::G1Consistent) continue;
    ++consistent;
    const auto rep = check_g1_necessary(a);
    worst_h = std::max(worst_h, rep.hausdorff);
    worst_e = std::max(worst_e, rep.norm - std::numbers::e * rep.spectral_radius);
    if (rep.hausdorff <= 1e-2 && rep.norm <= std::numbers::e * rep.spectral_radius + 1e-6) ++prop_ok;
  }
  return {{"r <= nu <= ||a|| <= e nu", holds == 200, std::to_string(holds) + "/200 hold, min slack " + sci(worst)},
          {"G1-consistent instances: V = conv(spectrum), ||a|| <= e r", consistent > 0 && prop_ok == consistent,
           std::to_string(prop_ok) + "/" + std::to_string(consistent) + " of " + std::to_string(family.size()) +
               " certified; max Hausdorff " + sci(worst_h) + ", max ||a|| - e r " + sci(worst_e)}};
}

inline std::vector<Check> scalar_replay() {
  bool all_ok = true;
  double worst_ratio = 0.0;
  std::string failures;
  for (std::size_t k = 0; k < 10; ++k) {
    const Complex mu(std::cos(0.7 * k) * (1.0 + 0.3 * k), std::sin(0.7 * k));
    const AlgebraElement a(mu * ComplexMatrix::identity(2 + k % 4), norm_cycle(k));
    const auto st = scalar_test(a, 1e-8);
    if (!st.single_cluster || st.not_g1 || st.certification.verdict != Verdict::G1Consistent) {
      all_ok = false;
      failures += " #" + std::to_string(k);
      continue;
    }
    const AlgebraElement b = a.shifted(-st.mu);
    const Spectrum sb = spectrum(b);
    for (double eps : {0.5, 0.1, 0.01}) {
      const Circle c{0.0, eps, 64};
      const auto integral = funcalc(b, sb, ScalarFunction::identity(), {{c}});
      // the proof's bound: ε · max |z|·‖(z − b)⁻¹‖ over the circle
      double bound = 0.0;
      for (int q = 0; q < c.nodes; ++q) bound = std::max(bound, std::abs(c.node(q)) * resolvent_norm(b, c.node(q)));
      bound *= eps;
      worst_ratio = std::max({worst_ratio, integral.norm() / eps, bound / eps});
    }
  }
  return {{"scalars certify G1-consistent", all_ok, all_ok ? "10/10" : "failed:" + failures},
          {"||f(a - mu)|| <= 1.1 eps", worst_ratio <= 1.1, "max ratio to eps " + sci(worst_ratio)}};
}

inline const std::vector<Scenario>& all() {
  static const std::vector<Scenario> list{
      {"lower-bound", "resolvent norm never below 1/d(z, spectrum)", lower_bound},
      {"normal", "normal matrices satisfy G1 in the 2-norm", normal_g1},
      {"uniform-algebra", "diagonal matrices satisfy G1 in the max norm", uniform_algebra},
      {"nilpotent-algebra", "two-dimensional nilpotent algebra deviation formula", nilpotent_algebra},
      {"jordan", "Jordan blocks are refuted in every induced norm", jordan},
      {"pseudospectrum", "pseudospectra of diag(0,1) are unions of disks", pseudospectrum_disks},
      {"projections", "Hermitian idempotents pass, the oblique projection is refuted", projections},
      {"riesz", "Riesz projections of isolated eigenvalues", riesz},
      {"decomposition", "spectral decomposition defects", decomposition},
      {"diagonalizability", "eigenspace direct sums", diagonalizability},
      {"quadrature", "trapezoidal rule convergence on a circle", quadrature},
      {"norm-chain", "radius / numerical radius / norm chain", norm_chain},
      {"scalar-replay", "single-point spectrum with G1 forces a scalar", scalar_replay},
  };
  return list;
}

inline const Scenario* find(std::string_view name) {
  for (const auto& s : all())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace g1lab::scenarios
