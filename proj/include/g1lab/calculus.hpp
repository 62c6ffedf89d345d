#pragma once

// Holomorphic functional calculus by trapezoidal quadrature on circles,
// Riesz projections, spectral decompositions and diagonalizability reports.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "g1lab/parallel.hpp"
#include "g1lab/spectral.hpp"

namespace g1lab {

struct Circle {
  Complex center;
  double radius = 1.0;
  int nodes = 128;

  Complex node(int k) const { return center + std::polar(radius, 2.0 * std::numbers::pi * k / nodes); }
};

/// Positively oriented union of disjoint circles.
struct Contour {
  std::vector<Circle> circles;
};

/// A scalar function holomorphic near the contour. Polynomials keep their
/// coefficients (ascending powers) so they can also be evaluated exactly.
struct ScalarFunction {
  std::function<Complex(Complex)> eval;
  std::string name;
  std::optional<std::vector<Complex>> coefficients;

  Complex operator()(Complex z) const { return eval(z); }

  static ScalarFunction polynomial(std::vector<Complex> c) {
    if (c.empty()) c.push_back(0.0);
    ScalarFunction f;
    f.name = "poly";
    f.coefficients = c;
    f.eval = [c](Complex z) {
      Complex acc{};
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
      return acc;
    };
    return f;
  }
  static ScalarFunction exp() { return {[](Complex z) { return std::exp(z); }, "exp", std::nullopt}; }
  static ScalarFunction constant(Complex c) { return polynomial({c}); }
  static ScalarFunction identity() { return polynomial({0.0, 1.0}); }
};

inline double cluster_gap(const Spectrum& s, std::size_t idx) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < s.clusters.size(); ++j)
    if (j != idx) gap = std::min(gap, std::abs(s.clusters[idx].center - s.clusters[j].center));
  return gap;
}

/// min(inter-cluster distance, 1 + r(a)).
inline double spectral_gap(const Spectrum& s) {
  double gap = 1.0 + s.spectral_radius;
  for (std::size_t i = 0; i < s.clusters.size(); ++i) gap = std::min(gap, cluster_gap(s, i));
  return gap;
}

/// Circles must be disjoint with at least `nodes` ≥ 8, and every cluster must
/// lie either inside exactly one circle or outside all of them, at distance
/// ≥ radius/4 from each circle.
inline void validate_contour(const Contour& gamma, const Spectrum& s) {
  if (gamma.circles.empty()) throw InvalidContour("contour has no circles");
  for (const auto& c : gamma.circles) {
    if (!(c.radius > 0.0) || !std::isfinite(c.radius) || !is_finite(c.center))
      throw InvalidContour("circle radius must be positive and finite");
    if (c.nodes < 8) throw InvalidContour("circle needs at least 8 nodes");
  }
  for (std::size_t i = 0; i < gamma.circles.size(); ++i)
    for (std::size_t j = i + 1; j < gamma.circles.size(); ++j) {
      const auto& p = gamma.circles[i];
      const auto& q = gamma.circles[j];
      const double d = std::abs(p.center - q.center);
      if (d <= p.radius + q.radius && d >= std::abs(p.radius - q.radius))
        throw InvalidContour("contour circles intersect");
      if (d < std::abs(p.radius - q.radius)) throw InvalidContour("contour circles are nested");
    }
  for (const auto& cl : s.clusters) {
    int inside = 0;
    for (const auto& c : gamma.circles) {
      const double d = std::abs(cl.center - c.center);
      if (std::abs(d - c.radius) < 0.25 * c.radius)
        throw InvalidContour("spectrum cluster lies within radius/4 of the contour");
      if (d < c.radius) ++inside;
    }
    if (inside > 1) throw InvalidContour("spectrum cluster enclosed by more than one circle");
  }
}

/// (1/2πi)∮ f(z)(z − a)⁻¹ dz with the N-point trapezoidal rule on each
/// circle, (1/N)·Σ_k f(z_k)(z_k − c)(z_k − a)⁻¹, accumulated in node order.
inline AlgebraElement funcalc(const AlgebraElement& a, const Spectrum& s, const ScalarFunction& f,
                              const Contour& gamma) {
  validate_contour(gamma, s);
  AlgebraElement acc = a.zero();
  for (const auto& c : gamma.circles) {
    const auto n = static_cast<std::size_t>(c.nodes);
    std::vector<std::optional<AlgebraElement>> terms(n);
    parallel_for(n, [&](std::size_t k) {
      const Complex z = c.node(static_cast<int>(k));
      const Complex w = f(z) * (z - c.center) / static_cast<double>(n);
      terms[k] = w * resolvent(a, z);
    });
    for (auto& t : terms) acc = acc + *t;
  }
  return acc;
}

inline AlgebraElement funcalc(const AlgebraElement& a, const ScalarFunction& f, const Contour& gamma) {
  return funcalc(a, spectrum(a), f, gamma);
}

/// One circle enclosing the whole spectrum with margin, centred on the
/// spectrum's bounding box.
inline Contour enclosing_contour(const Spectrum& s, int nodes = 128) {
  double re0 = std::numeric_limits<double>::infinity(), re1 = -re0, im0 = re0, im1 = -re0;
  for (const auto& c : s.clusters) {
    re0 = std::min(re0, c.center.real());
    re1 = std::max(re1, c.center.real());
    im0 = std::min(im0, c.center.imag());
    im1 = std::max(im1, c.center.imag());
  }
  const Complex mid(0.5 * (re0 + re1), 0.5 * (im0 + im1));
  double far = 0.0;
  for (const auto& c : s.clusters) far = std::max(far, std::abs(c.center - mid));
  return {{Circle{mid, 1.5 * far + 0.5, nodes}}};
}

/// Circle radius used for the Riesz projection of cluster idx:
/// min(gap/2, 1 + r)/2 with gap the distance to the nearest other cluster.
inline double riesz_radius(const Spectrum& s, std::size_t idx) {
  return 0.5 * std::min(0.5 * cluster_gap(s, idx), 1.0 + s.spectral_radius);
}

inline AlgebraElement riesz_projection(const AlgebraElement& a, const Spectrum& s, std::size_t idx, int nodes = 128) {
  if (idx >= s.clusters.size()) throw InvalidArgument("riesz_projection: cluster index out of range");
  const double rho = riesz_radius(s, idx);
  if (rho <= s.cluster_tol) throw ClusterNotIsolated("riesz_projection: cluster is not isolated at this tolerance");
  return funcalc(a, s, ScalarFunction::constant(1.0), {{Circle{s.clusters[idx].center, rho, nodes}}});
}

inline AlgebraElement riesz_projection(const AlgebraElement& a, std::size_t idx) {
  return riesz_projection(a, spectrum(a), idx);
}

// ---------------------------------------------------------------------------

struct IsolatedPointReport {
  Complex lambda;
  ComplexMatrix projection;  // matrix picture of e
  double eigen_defect = 0.0;       // ‖ae − λe‖
  double norm_defect = 0.0;        // |‖e‖ − 1|
  double idempotency_defect = 0.0; // ‖e² − e‖
  std::vector<Complex> eigenvector;
  double eigenvector_residual = 0.0;  // ‖Av − λv‖₂, ‖v‖₂ = 1
  bool passes = false;
};

inline IsolatedPointReport verify_isolated_point(const AlgebraElement& a, std::size_t idx, double tol) {
  const Spectrum s = spectrum(a);
  const AlgebraElement e = riesz_projection(a, s, idx);
  IsolatedPointReport rep;
  rep.lambda = s.clusters[idx].center;
  rep.projection = e.as_matrix();
  rep.eigen_defect = (a * e - rep.lambda * e).norm();
  rep.norm_defect = std::abs(e.norm() - 1.0);
  rep.idempotency_defect = (e * e - e).norm();

  const ComplexMatrix& pm = rep.projection;
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < pm.cols(); ++j) {
    const auto col = pm.column(j);
    const double nrm = vector_norm(col);
    if (nrm > best_norm) {
      best_norm = nrm;
      best = j;
    }
  }
  rep.eigenvector = pm.column(best);
  if (best_norm > 0.0)
    for (auto& v : rep.eigenvector) v /= best_norm;
  const ComplexMatrix am = a.as_matrix();
  std::vector<Complex> r(am.rows());
  for (std::size_t i = 0; i < am.rows(); ++i) {
    Complex acc = -rep.lambda * rep.eigenvector[i];
    for (std::size_t j = 0; j < am.cols(); ++j) acc += am(i, j) * rep.eigenvector[j];
    r[i] = acc;
  }
  rep.eigenvector_residual = vector_norm(r);
  rep.passes = rep.eigen_defect <= tol && rep.norm_defect <= tol && rep.idempotency_defect <= tol;
  return rep;
}

// ---------------------------------------------------------------------------

struct SpectralPair {
  Complex lambda;
  AlgebraElement projection;
};

struct DecompositionDefects {
  double idempotency = 0.0;          // max_j ‖e_j² − e_j‖
  double norm_one = 0.0;             // max_j |‖e_j‖ − 1|
  double eigen = 0.0;                // max_j ‖a e_j − λ_j e_j‖
  double mutual_annihilation = 0.0;  // max_{j≠k} ‖e_j e_k‖
  double commutation = 0.0;          // max_j ‖a e_j − e_j a‖
  double resolution = 0.0;           // ‖Σ e_j − 1‖
  double reconstruction = 0.0;       // ‖a − Σ λ_j e_j‖
  double annihilation = 0.0;         // ‖Π_j (a − λ_j)‖

  double max() const {
    return std::max({idempotency, norm_one, eigen, mutual_annihilation, commutation, resolution, reconstruction,
                     annihilation});
  }
};

struct SpectralDecomposition {
  std::vector<SpectralPair> pairs;
  DecompositionDefects defects;
  double tol = 0.0;
  double gap = 0.0;
  /// tol·(1 + κ), κ = (1 + r(a))/gap.
  double defect_tolerance = 0.0;
  bool consistent = false;
};

inline SpectralDecomposition spectral_decomposition(const AlgebraElement& a, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("spectral_decomposition: tol must be positive");
  const Spectrum s = spectrum(a);
  SpectralDecomposition d;
  d.tol = tol;
  d.gap = spectral_gap(s);
  d.defect_tolerance = tol * (1.0 + (1.0 + s.spectral_radius) / d.gap);
  for (std::size_t i = 0; i < s.clusters.size(); ++i)
    d.pairs.push_back({s.clusters[i].center, riesz_projection(a, s, i)});

  auto& df = d.defects;
  AlgebraElement sum = a.zero();
  AlgebraElement recon = a.zero();
  AlgebraElement poly = a.unit();
  for (std::size_t j = 0; j < d.pairs.size(); ++j) {
    const auto& [lam, e] = d.pairs[j];
    df.idempotency = std::max(df.idempotency, (e * e - e).norm());
    df.norm_one = std::max(df.norm_one, std::abs(e.norm() - 1.0));
    df.eigen = std::max(df.eigen, (a * e - lam * e).norm());
    df.commutation = std::max(df.commutation, (a * e - e * a).norm());
    for (std::size_t k = 0; k < d.pairs.size(); ++k)
      if (k != j) df.mutual_annihilation = std::max(df.mutual_annihilation, (e * d.pairs[k].projection).norm());
    sum = sum + e;
    recon = recon + lam * e;
    poly = poly * a.shifted(-lam);
  }
  df.resolution = (sum - a.unit()).norm();
  df.reconstruction = (a - recon).norm();
  df.annihilation = poly.norm();
  d.consistent = df.max() <= d.defect_tolerance;
  return d;
}

/// Σ_j (z − λ_j)⁻¹ e_j.
inline AlgebraElement decomposed_resolvent(const SpectralDecomposition& d, Complex z) {
  if (d.pairs.empty()) throw InvalidArgument("decomposed_resolvent: empty decomposition");
  AlgebraElement acc = d.pairs.front().projection.zero();
  for (const auto& [lam, e] : d.pairs) {
    if (std::abs(z - lam) <= kRankTolerance * (1.0 + std::abs(lam)))
      throw SpectrumHit("decomposed_resolvent: z coincides with a spectral point");
    acc = acc + (1.0 / (z - lam)) * e;
  }
  return acc;
}

/// Σ_j f(λ_j) e_j.
inline AlgebraElement decomposed_funcalc(const SpectralDecomposition& d, const ScalarFunction& f) {
  if (d.pairs.empty()) throw InvalidArgument("decomposed_funcalc: empty decomposition");
  AlgebraElement acc = d.pairs.front().projection.zero();
  for (const auto& [lam, e] : d.pairs) acc = acc + f(lam) * e;
  return acc;
}

// ---------------------------------------------------------------------------

struct EigenspaceInfo {
  Complex lambda;
  std::size_t rank = 0;
  ComplexMatrix basis;   // orthonormal columns spanning range(e_j)
  double residual = 0.0; // ‖A·E_j − λ_j·E_j‖₂
};

struct DiagonalizabilityReport {
  std::vector<EigenspaceInfo> spaces;
  std::size_t rank_sum = 0;
  std::size_t order = 0;
  double max_residual = 0.0;
  bool direct_sum = false;  // rank_sum == order
  bool diagonalizable = false;
  SpectralDecomposition decomposition;
};

inline DiagonalizabilityReport diagonalizability_report(const AlgebraElement& a, double tol) {
  if (!a.is_matrix()) throw InvalidArgument("diagonalizability_report: needs a matrix element");
  DiagonalizabilityReport rep;
  rep.decomposition = spectral_decomposition(a, tol);
  rep.order = a.order();
  const ComplexMatrix& am = a.matrix();
  for (const auto& [lam, e] : rep.decomposition.pairs) {
    EigenspaceInfo info;
    info.lambda = lam;
    info.rank = numerical_rank(e.matrix(), tol);
    info.basis = orthonormal_range(e.matrix(), info.rank);
    if (info.rank > 0) info.residual = sigma_max(am * info.basis - lam * info.basis);
    rep.rank_sum += info.rank;
    rep.max_residual = std::max(rep.max_residual, info.residual);
    rep.spaces.push_back(std::move(info));
  }
  rep.direct_sum = rep.rank_sum == rep.order;
  rep.diagonalizable = rep.direct_sum && rep.max_residual <= rep.decomposition.defect_tolerance * (1.0 + am.max_abs());
  return rep;
}

}  // namespace g1lab
