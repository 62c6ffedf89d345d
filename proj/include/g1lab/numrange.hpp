#pragma once

// Numerical range V(a) under the selected norm, the Hilbert-space field of
// values, Hermitian tests and the necessary conditions every G1 element
// satisfies (V(a) equal to the convex hull of σ(a), ‖a‖ ≤ e·r(a)).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "g1lab/geometry.hpp"
#include "g1lab/parallel.hpp"
#include "g1lab/spectral.hpp"

namespace g1lab {

enum class HullMode { DiskIntersection, FieldOfValues };

inline std::string_view to_string(HullMode m) {
  return m == HullMode::DiskIntersection ? "disk-intersection" : "field-of-values";
}

struct NumericalRangeHull {
  std::vector<Complex> boundary;  // convex polygon, counter-clockwise
  double numerical_radius = 0.0;
  HullMode mode = HullMode::DiskIntersection;
};

inline constexpr int kDefaultDirections = 360;

namespace detail {

inline Complex unit_direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Maximises a support function h over θ: dense samples are given, the best
// three are polished by golden-section search within one sample spacing.
template <typename Support>
double refine_support_max(const std::vector<double>& samples, Support&& h) {
  const std::size_t n = samples.size();
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  const std::size_t top = std::min<std::size_t>(3, n);
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(top), idx.end(),
                    [&](std::size_t a, std::size_t b) { return samples[a] > samples[b]; });
  double best = samples[idx[0]];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t t = 0; t < top; ++t) {
    const double c = step * static_cast<double>(idx[t]);
    double lo = c - step, hi = c + step;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = h(x1), f2 = h(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = h(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = h(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

}  // namespace detail

/// Support function of the disk intersection ∩_ζ D(ζ, ‖a − ζ‖) in direction
/// e^{iθ}, restricted to ζ on the ray t·e^{iθ}: inf_t (t + ‖e^{−iθ}a − t‖).
/// That map is nondecreasing in t (its slope lies in [0, 2]), so the infimum
/// over the sampled grid t ∈ −[1, 10⁶]·(1 + ‖a‖) sits at the most negative
/// sample, which is the only one evaluated. The remaining bias is
/// O(‖a‖²/t) and always outward.
inline double disk_support(const AlgebraElement& a, double theta, double anorm) {
  const double s = 1e6 * (1.0 + anorm);
  const Complex rot = std::polar(1.0, -theta);
  if (a.is_nilpotent()) {
    // |w + s| − s written without cancellation, plus |β|
    const Complex w = rot * a.nilpotent().alpha;
    const double ws = std::abs(w + s);
    return (2.0 * s * w.real() + std::norm(w)) / (ws + s) + std::abs(a.nilpotent().beta);
  }
  ComplexMatrix b = a.matrix();
  b *= rot;
  return operator_norm(b.shifted(s), a.norm_kind()) - s;
}

inline NumericalRangeHull numerical_range_disks(const AlgebraElement& a, int directions = kDefaultDirections) {
  if (directions < 16) throw InvalidArgument("numerical_range_disks: need at least 16 directions");
  const double anorm = a.norm();
  const auto nd = static_cast<std::size_t>(directions);
  const double step = 2.0 * std::numbers::pi / directions;
  std::vector<double> h(nd);
  parallel_for(nd, [&](std::size_t k) { h[k] = disk_support(a, step * static_cast<double>(k), anorm); });

  // Adjacent support lines meet outside V(a) by up to O(edge·step) near
  // corners. Bisect every direction interval whose meeting point overshoots
  // the support value at the mid angle.
  std::vector<std::pair<double, double>> dirs(nd);  // (θ, h(θ)) ascending
  for (std::size_t k = 0; k < nd; ++k) dirs[k] = {step * static_cast<double>(k), h[k]};
  const double overshoot_tol = 1e-5 * (1.0 + anorm);
  std::vector<std::size_t> open(nd);
  for (std::size_t k = 0; k < nd; ++k) open[k] = k;
  for (int round = 0; round < 12 && !open.empty() && dirs.size() < 64 * nd; ++round) {
    // interval k runs from dirs[k] to dirs[k + 1], cyclically; mid angles stay below 2π
    std::vector<double> mid(open.size()), hm(open.size());
    for (std::size_t q = 0; q < open.size(); ++q) {
      const std::size_t k = open[q];
      const double t0 = dirs[k].first;
      double t1 = dirs[(k + 1) % dirs.size()].first;
      if (t1 <= t0) t1 += 2.0 * std::numbers::pi;
      mid[q] = 0.5 * (t0 + t1);
    }
    parallel_for(open.size(), [&](std::size_t q) { hm[q] = disk_support(a, mid[q], anorm); });
    std::vector<std::pair<double, double>> next;
    std::vector<std::size_t> next_open;
    std::size_t q = 0;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      next.push_back(dirs[k]);
      if (q < open.size() && open[q] == k) {
        const auto [ta, ha] = dirs[k];
        const auto [tb, hb] = dirs[(k + 1) % dirs.size()];
        const double det = std::sin(tb - ta);
        const Complex v((ha * std::sin(tb) - hb * std::sin(ta)) / det, (std::cos(ta) * hb - std::cos(tb) * ha) / det);
        const double over = (std::conj(detail::unit_direction(mid[q])) * v).real() - hm[q];
        if (over > overshoot_tol) {
          next_open.push_back(next.size() - 1);
          next.emplace_back(mid[q], hm[q]);
          next_open.push_back(next.size() - 1);
        }
        ++q;
      }
    }
    dirs = std::move(next);
    open = std::move(next_open);
  }

  // V(a) ⊆ D(0, ‖a‖), so a box of half-width 2(1 + ‖a‖) is a safe start.
  // Each h carries rounding of order n·eps·s from the subtraction; widening
  // by that keeps point-like ranges (scalars) from clipping to nothing.
  const double box = 2.0 * (1.0 + anorm);
  const double slack = 8.0 * static_cast<double>(a.order()) * kEps * 1e6 * (1.0 + anorm);
  std::vector<Complex> poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};
  for (const auto& [t, ht] : dirs) poly = geometry::clip_half_plane(poly, detail::unit_direction(t), ht + slack);

  NumericalRangeHull out;
  out.mode = HullMode::DiskIntersection;
  out.boundary = geometry::convex_hull(poly);
  if (out.boundary.empty() && !poly.empty()) out.boundary = {poly.front()};
  // ν(a) = max_θ h(θ); capped by ‖a‖ since V(a) ⊆ D(0, ‖a‖).
  const double nu = detail::refine_support_max(h, [&](double t) { return disk_support(a, t, anorm); });
  out.numerical_radius = std::min(std::max(nu, 0.0), anorm);
  return out;
}

/// Largest eigenpair of the Hermitian part of e^{−iθ}A.
inline std::pair<double, std::vector<Complex>> fov_support(const ComplexMatrix& a, double theta) {
  ComplexMatrix b = a;
  b *= std::polar(1.0, -theta);
  const ComplexMatrix h = 0.5 * (b + b.adjoint());
  auto eig = hermitian_eigen(h);
  return {eig.values.back(), eig.vectors.column(a.rows() - 1)};
}

/// W(A) = {xᴴAx : ‖x‖₂ = 1}: the extreme eigenvector of the Hermitian part of
/// e^{−iθ}A at each of `angles` directions gives a boundary point.
inline NumericalRangeHull field_of_values(const ComplexMatrix& a, int angles = kDefaultDirections) {
  require_square(a, "field_of_values");
  if (angles < 16) throw InvalidArgument("field_of_values: need at least 16 angles");
  const auto na = static_cast<std::size_t>(angles);
  const double step = 2.0 * std::numbers::pi / angles;
  std::vector<Complex> pts(na);
  std::vector<double> h(na);
  parallel_for(na, [&](std::size_t k) {
    auto [lam, x] = fov_support(a, step * static_cast<double>(k));
    h[k] = lam;
    Complex q{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Complex ax{};
      for (std::size_t j = 0; j < a.cols(); ++j) ax += a(i, j) * x[j];
      q += std::conj(x[i]) * ax;
    }
    pts[k] = q;
  });
  NumericalRangeHull out;
  out.mode = HullMode::FieldOfValues;
  out.boundary = geometry::convex_hull(pts);
  out.numerical_radius =
      detail::refine_support_max(h, [&](double t) { return fov_support(a, t).first; });
  out.numerical_radius = std::max(out.numerical_radius, 0.0);
  return out;
}

/// Field of values for 2-norm matrices (where its closure is V(a)), disk
/// intersection otherwise.
inline NumericalRangeHull numerical_range(const AlgebraElement& a, int directions = kDefaultDirections) {
  if (a.is_matrix() && a.norm_kind() == NormKind::Induced2) return field_of_values(a.matrix(), directions);
  return numerical_range_disks(a, directions);
}

inline bool is_hermitian(const NumericalRangeHull& hull, double tol) {
  double m = 0.0;
  for (auto v : hull.boundary) m = std::max(m, std::abs(v.imag()));
  return m <= tol;
}

inline bool is_hermitian(const AlgebraElement& a, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("is_hermitian: tol must be positive");
  return is_hermitian(numerical_range(a), tol);
}

struct NecessaryReport {
  double hausdorff = 0.0;  // between the numerical-range polygon and conv σ(a)
  double discretization_bound = 1e-2;
  double tolerance = 1e-6;
  double spectral_radius = 0.0;
  double numerical_radius = 0.0;
  double norm = 0.0;
  double norm_over_radius = 0.0;  // +inf when r(a) = 0
  // Slacks of r ≤ ν ≤ ‖a‖ ≤ e·ν; each is nonnegative when the link holds.
  double slack_radius_numrad = 0.0;
  double slack_numrad_norm = 0.0;
  double slack_norm_e_numrad = 0.0;
  bool chain_holds = true;
  bool quasinilpotent = false;
  bool not_g1 = false;
  std::string reason;
};

/// Hull of the spectrum cluster centers.
inline std::vector<Complex> spectrum_hull(const Spectrum& s) { return geometry::convex_hull(s.centers()); }

inline NecessaryReport check_g1_necessary(const AlgebraElement& a, const Spectrum& s, const NumericalRangeHull& hull) {
  NecessaryReport rep;
  const double e = std::numbers::e;
  rep.norm = a.norm();
  rep.spectral_radius = s.spectral_radius;
  rep.numerical_radius = hull.numerical_radius;
  const auto conv = spectrum_hull(s);
  rep.hausdorff = geometry::hausdorff_convex(hull.boundary, conv);
  rep.slack_radius_numrad = rep.numerical_radius - rep.spectral_radius;
  rep.slack_numrad_norm = rep.norm - rep.numerical_radius;
  rep.slack_norm_e_numrad = e * rep.numerical_radius - rep.norm;
  rep.chain_holds = rep.slack_radius_numrad >= -rep.tolerance && rep.slack_numrad_norm >= -rep.tolerance &&
                    rep.slack_norm_e_numrad >= -rep.tolerance;

  const bool zero_radius = rep.spectral_radius <= s.cluster_tol;
  rep.norm_over_radius = zero_radius ? std::numeric_limits<double>::infinity() : rep.norm / rep.spectral_radius;
  if (zero_radius && rep.norm > s.cluster_tol) {
    rep.quasinilpotent = true;
    rep.not_g1 = true;
    rep.reason = "quasinilpotent: r(a) = 0 but a != 0";
  } else if (rep.hausdorff > rep.tolerance + rep.discretization_bound) {
    rep.not_g1 = true;
    rep.reason = "numerical range strictly larger than the convex hull of the spectrum";
  } else if (rep.norm > e * rep.spectral_radius + rep.tolerance) {
    rep.not_g1 = true;
    rep.reason = "norm exceeds e times the spectral radius";
  }
  return rep;
}

inline NecessaryReport check_g1_necessary(const AlgebraElement& a) {
  return check_g1_necessary(a, spectrum(a), numerical_range(a));
}

}  // namespace g1lab
