#pragma once

// Planar convex-set helpers on complex numbers: hulls, half-plane clipping,
// point/polygon distances and Hausdorff distance between convex polygons.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "g1lab/linalg.hpp"

namespace g1lab::geometry {

inline double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

/// Counter-clockwise convex hull (Andrew's monotone chain). Collinear and
/// duplicate points are dropped; one or two points come back as-is.
inline std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Clips a convex polygon to the half-plane Re(conj(dir)·w) ≤ h.
inline std::vector<Complex> clip_half_plane(const std::vector<Complex>& poly, Complex dir, double h) {
  std::vector<Complex> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  auto f = [&](Complex w) { return dir.real() * w.real() + dir.imag() * w.imag() - h; };
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = poly[i];
    const Complex q = poly[(i + 1) % n];
    const double fp = f(p);
    const double fq = f(q);
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) out.push_back(p + (q - p) * (fp / (fp - fq)));
  }
  return out;
}

inline double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

/// Distance from p to a convex polygon given CCW (0 if inside). Handles the
/// degenerate point and segment cases.
inline double distance_to_convex(Complex p, std::span<const Complex> poly) {
  const std::size_t n = poly.size();
  if (n == 0) return std::numeric_limits<double>::infinity();
  if (n == 1) return std::abs(p - poly[0]);
  if (n >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i)
      if (cross(poly[i], poly[(i + 1) % n], p) < 0.0) inside = false;
    if (inside) return 0.0;
  }
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (n == 2 && i == 1) break;
    d = std::min(d, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  }
  return d;
}

/// Hausdorff distance between two convex polygons. d(·, Q) is convex, so the
/// one-sided maxima are attained at vertices.
inline double hausdorff_convex(std::span<const Complex> p, std::span<const Complex> q) {
  double h = 0.0;
  for (auto v : p) h = std::max(h, distance_to_convex(v, q));
  for (auto v : q) h = std::max(h, distance_to_convex(v, p));
  return h;
}

inline double polygon_area(std::span<const Complex> poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Complex p = poly[i];
    const Complex q = poly[(i + 1) % poly.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * std::abs(a);
}

}  // namespace g1lab::geometry
