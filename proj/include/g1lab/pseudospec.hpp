#pragma once

// Resolvent-norm fields on rectangular grids, ε-pseudospectrum masks and
// grid-resolution checks of σ(a) + D(0, ε) ⊆ Λ_ε(a) ⊆ V(a) + D(0, ε).

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "g1lab/geometry.hpp"
#include "g1lab/numrange.hpp"
#include "g1lab/parallel.hpp"
#include "g1lab/spectral.hpp"

namespace g1lab {

inline constexpr std::size_t kMaxGridNodes = 4'000'000;

struct Disk {
  Complex center;
  double radius = 0.0;
  bool contains(Complex z) const { return std::abs(z - center) <= radius; }
};

/// Node (i, j) sits at re_min + i·Δre, im_min + j·Δim. A single node along
/// an axis sits at the lower bound.
struct GridSpec {
  double re_min = -1.0, re_max = 1.0, im_min = -1.0, im_max = 1.0;
  std::size_t nx = 201, ny = 201;

  void validate() const {
    if (!(re_min < re_max) || !(im_min < im_max)) throw InvalidArgument("GridSpec: bounds must satisfy min < max");
    if (nx == 0 || ny == 0) throw InvalidArgument("GridSpec: nx and ny must be positive");
    if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) || !std::isfinite(im_max))
      throw InvalidArgument("GridSpec: bounds must be finite");
    if (nx > kMaxGridNodes / ny) throw GridTooLarge("GridSpec: nx·ny exceeds 4e6 nodes");
  }
  double dx() const { return nx > 1 ? (re_max - re_min) / static_cast<double>(nx - 1) : 0.0; }
  double dy() const { return ny > 1 ? (im_max - im_min) / static_cast<double>(ny - 1) : 0.0; }
  Complex node(std::size_t i, std::size_t j) const {
    return {re_min + dx() * static_cast<double>(i), im_min + dy() * static_cast<double>(j)};
  }
  std::size_t size() const { return nx * ny; }
  double cell_diagonal() const { return std::hypot(dx(), dy()); }
  double cell_area() const { return dx() * dy(); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// values[j·nx + i] holds ‖(z_ij − a)⁻¹‖, +inf where z_ij hits the spectrum.
/// Storage is row-major with rows running along the real axis.
struct PseudospectrumField {
  GridSpec grid;
  std::vector<double> values;
  NormKind norm_kind = NormKind::Induced2;

  double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
};

/// Bounding box of σ(a) padded by max(1, r(a)), 201×201 nodes.
inline GridSpec default_grid(const Spectrum& s) {
  double re0 = std::numeric_limits<double>::infinity(), re1 = -re0, im0 = re0, im1 = -re0;
  for (const auto& c : s.clusters) {
    re0 = std::min(re0, c.center.real());
    re1 = std::max(re1, c.center.real());
    im0 = std::min(im0, c.center.imag());
    im1 = std::max(im1, c.center.imag());
  }
  const double pad = std::max(1.0, s.spectral_radius);
  return {re0 - pad, re1 + pad, im0 - pad, im1 + pad, 201, 201};
}

inline PseudospectrumField resolvent_field(const AlgebraElement& a, const GridSpec& g) {
  g.validate();
  PseudospectrumField f{g, std::vector<double>(g.size()), a.is_matrix() ? a.norm_kind() : NormKind::Induced1};
  parallel_for(g.size(), [&](std::size_t k) {
    const Complex z = g.node(k % g.nx, k / g.nx);
    try {
      f.values[k] = resolvent_norm(a, z);
    } catch (const SpectrumHit&) {
      f.values[k] = std::numeric_limits<double>::infinity();
    }
  });
  return f;
}

/// mask[k] = values[k] ≥ 1/ε.
inline std::vector<bool> level_set_membership(const PseudospectrumField& f, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("level_set_membership: eps must be positive");
  const double level = 1.0 / eps;
  std::vector<bool> mask(f.values.size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = f.values[k] >= level;
  return mask;
}

struct InclusionReport {
  /// Deepest non-member node inside σ(a) + D(0, ε): max of ε − d(z, σ).
  double lower_violation = 0.0;
  /// Farthest member node outside V(a) + D(0, ε): max of d(z, V) − ε.
  double upper_violation = 0.0;
  double tolerance = 0.0;  // one cell diagonal + 1e-6
  std::size_t lower_nodes = 0;
  std::size_t member_nodes = 0;
  bool holds() const { return lower_violation <= tolerance && upper_violation <= tolerance; }
};

inline InclusionReport verify_inclusions(const PseudospectrumField& f, const Spectrum& s, double eps,
                                         const NumericalRangeHull& hull) {
  const auto mask = level_set_membership(f, eps);
  InclusionReport rep;
  rep.tolerance = f.grid.cell_diagonal() + 1e-6;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const Complex z = f.grid.node(k % f.grid.nx, k / f.grid.nx);
    const double d = distance_to_spectrum(z, s);
    if (d <= eps) {
      ++rep.lower_nodes;
      if (!mask[k]) rep.lower_violation = std::max(rep.lower_violation, eps - d);
    }
    if (mask[k]) {
      ++rep.member_nodes;
      rep.upper_violation = std::max(rep.upper_violation, geometry::distance_to_convex(z, hull.boundary) - eps);
    }
  }
  return rep;
}

inline InclusionReport verify_inclusions(const AlgebraElement& a, double eps, const GridSpec& g,
                                         const NumericalRangeHull& hull) {
  return verify_inclusions(resolvent_field(a, g), spectrum(a), eps, hull);
}

}  // namespace g1lab
