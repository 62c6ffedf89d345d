#pragma once

// Algebra elements (matrices under a chosen induced norm, or members of the
// nilpotent 2-dimensional algebra), their clustered spectra, spectral radius
// by both definitions, distance to the spectrum and resolvent evaluation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <variant>
#include <vector>

#include "g1lab/algebras.hpp"
#include "g1lab/errors.hpp"
#include "g1lab/linalg.hpp"

namespace g1lab {

struct MatrixElement {
  ComplexMatrix matrix;
  NormKind norm = NormKind::Induced2;
};

/// An element a of a unital Banach algebra: either a square matrix with a
/// selected operator norm, or an element of the nilpotent algebra.
class AlgebraElement {
 public:
  AlgebraElement(ComplexMatrix m, NormKind k) : v_(MatrixElement{std::move(m), k}) {
    require_square(std::get<MatrixElement>(v_).matrix, "AlgebraElement");
  }
  AlgebraElement(NilpotentAlgebraElement x) : v_(x) {  // NOLINT(google-explicit-constructor)
    if (!is_finite(x.alpha) || !is_finite(x.beta)) throw InvalidArgument("AlgebraElement: non-finite alpha/beta");
  }

  bool is_matrix() const { return std::holds_alternative<MatrixElement>(v_); }
  bool is_nilpotent() const { return std::holds_alternative<NilpotentAlgebraElement>(v_); }

  const ComplexMatrix& matrix() const { return std::get<MatrixElement>(v_).matrix; }
  NormKind norm_kind() const { return is_matrix() ? std::get<MatrixElement>(v_).norm : NormKind::Induced1; }
  const NilpotentAlgebraElement& nilpotent() const { return std::get<NilpotentAlgebraElement>(v_); }

  /// Order of the matrix picture (2 for the nilpotent algebra).
  std::size_t order() const { return is_matrix() ? matrix().rows() : 2; }

  /// Matrix picture: the matrix itself, or [[α, β], [0, α]].
  ComplexMatrix as_matrix() const { return is_matrix() ? matrix() : nilpotent().as_matrix(); }

  double norm() const {
    if (is_nilpotent()) return nilpotent().norm();
    return operator_norm(matrix(), norm_kind());
  }

  AlgebraElement unit() const {
    if (is_nilpotent()) return NilpotentAlgebraElement{1.0, 0.0};
    return {ComplexMatrix::identity(order()), norm_kind()};
  }

  AlgebraElement zero() const {
    if (is_nilpotent()) return NilpotentAlgebraElement{};
    return {ComplexMatrix(order()), norm_kind()};
  }

  /// a + c·1
  AlgebraElement shifted(Complex c) const {
    if (is_nilpotent()) return NilpotentAlgebraElement{nilpotent().alpha + c, nilpotent().beta};
    return {matrix().shifted(c), norm_kind()};
  }

  friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    x.check_compatible(y);
    if (x.is_nilpotent()) return x.nilpotent() + y.nilpotent();
    return {x.matrix() + y.matrix(), x.norm_kind()};
  }
  friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
    x.check_compatible(y);
    if (x.is_nilpotent()) return x.nilpotent() - y.nilpotent();
    return {x.matrix() - y.matrix(), x.norm_kind()};
  }
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    x.check_compatible(y);
    if (x.is_nilpotent()) return nilpotent_mul(x.nilpotent(), y.nilpotent());
    return {x.matrix() * y.matrix(), x.norm_kind()};
  }
  friend AlgebraElement operator*(Complex s, const AlgebraElement& x) {
    if (x.is_nilpotent()) return s * x.nilpotent();
    return {s * x.matrix(), x.norm_kind()};
  }

 private:
  void check_compatible(const AlgebraElement& o) const {
    if (is_matrix() != o.is_matrix() || (is_matrix() && (order() != o.order() || norm_kind() != o.norm_kind())))
      throw InvalidArgument("AlgebraElement: operands live in different algebras");
  }

  std::variant<MatrixElement, NilpotentAlgebraElement> v_;
};

// ---------------------------------------------------------------------------
// Spectrum

struct SpectralCluster {
  Complex center;
  std::size_t multiplicity = 1;
  double spread = 0.0;  // max distance of a member eigenvalue from center
};

struct Spectrum {
  std::vector<SpectralCluster> clusters;  // ordered by (re, im) of center
  double cluster_tol = 0.0;
  double spectral_radius = 0.0;
  /// Absolute backward error of the eigenvalue computation (0 when exact).
  double backward_error = 0.0;

  std::vector<Complex> centers() const {
    std::vector<Complex> c;
    c.reserve(clusters.size());
    for (const auto& cl : clusters) c.push_back(cl.center);
    return c;
  }
  double max_spread() const {
    double s = 0.0;
    for (const auto& cl : clusters) s = std::max(s, cl.spread);
    return s;
  }
  std::size_t total_multiplicity() const {
    std::size_t m = 0;
    for (const auto& cl : clusters) m += cl.multiplicity;
    return m;
  }
};

inline bool complex_lex_less(Complex a, Complex b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

inline double default_cluster_tol(const AlgebraElement& a) { return 1e-6 * (1.0 + a.norm()); }

/// Groups eigenvalues by single linkage within tol, then merges any clusters
/// whose centers still sit within tol of each other.
inline std::vector<SpectralCluster> cluster_eigenvalues(std::span<const Complex> eigs, double tol) {
  const std::size_t n = eigs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(eigs[i] - eigs[j]) <= tol) parent[find(i)] = find(j);

  struct Group {
    std::vector<Complex> members;
    Complex center() const {
      Complex s{};
      for (auto m : members) s += m;
      return s / static_cast<double>(members.size());
    }
  };
  std::vector<Group> groups;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].members.push_back(eigs[i]);
  }
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < groups.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < groups.size() && !merged; ++j)
        if (std::abs(groups[i].center() - groups[j].center()) <= tol) {
          groups[i].members.insert(groups[i].members.end(), groups[j].members.begin(), groups[j].members.end());
          groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
  }
  std::vector<SpectralCluster> out;
  for (const auto& g : groups) {
    SpectralCluster c{g.center(), g.members.size(), 0.0};
    for (auto m : g.members) c.spread = std::max(c.spread, std::abs(m - c.center));
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const SpectralCluster& x, const SpectralCluster& y) { return complex_lex_less(x.center, y.center); });
  return out;
}

inline Spectrum spectrum(const AlgebraElement& a, double cluster_tol) {
  if (!(cluster_tol > 0.0)) throw InvalidArgument("spectrum: cluster_tol must be positive");
  Spectrum s;
  s.cluster_tol = cluster_tol;
  if (a.is_nilpotent()) {
    s.clusters = {{a.nilpotent().alpha, 2, 0.0}};
  } else {
    const EigenResult r = eigenvalues(a.matrix());
    s.clusters = cluster_eigenvalues(r.eigenvalues, cluster_tol);
    s.backward_error = r.residual_bound * spectral_norm_lower_bound(a.matrix());
  }
  for (const auto& c : s.clusters) s.spectral_radius = std::max(s.spectral_radius, std::abs(c.center));
  return s;
}

inline Spectrum spectrum(const AlgebraElement& a) { return spectrum(a, default_cluster_tol(a)); }

/// min over k ≤ n_max of ‖aᵏ‖^{1/k}: the infimum form of the spectral radius
/// formula, an upper bound on r(a) at every truncation. Powers of two are
/// formed by squaring, the rest by one more product with a.
inline double spectral_radius_limit(const AlgebraElement& a, int n_max) {
  if (n_max < 1) throw InvalidArgument("spectral_radius_limit: n_max must be >= 1");
  AlgebraElement prev = a;
  AlgebraElement last_pow2 = a;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= n_max; ++k) {
    if (k > 1) {
      if ((k & (k - 1)) == 0) {
        last_pow2 = last_pow2 * last_pow2;
        prev = last_pow2;
      } else {
        prev = prev * a;
      }
    }
    const double nk = prev.norm();
    if (!std::isfinite(nk)) throw Overflow("spectral_radius_limit: ‖a^k‖ overflowed; rescale the input");
    if (nk == 0.0) return 0.0;
    best = std::min(best, std::pow(nk, 1.0 / k));
  }
  return best;
}

inline double distance_to_spectrum(Complex z, const Spectrum& s) {
  if (s.clusters.empty()) throw InvalidArgument("distance_to_spectrum: empty spectrum");
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : s.clusters) d = std::min(d, std::abs(z - c.center));
  return d;
}

/// (z − a)⁻¹ in the same algebra. Throws SpectrumHit inside rank tolerance.
inline AlgebraElement resolvent(const AlgebraElement& a, Complex z) {
  if (a.is_nilpotent()) return nilpotent_resolvent(a.nilpotent(), z);
  const ComplexMatrix m = (-a.matrix()).shifted(z);
  try {
    return {inverse(m), a.norm_kind()};
  } catch (const SingularMatrix&) {
    throw SpectrumHit("resolvent: z is within rank tolerance of the spectrum");
  }
}

struct ResolventNorm {
  double value = 0.0;
  /// Estimated relative error of value (condition-number based).
  double rel_error = 0.0;
};

/// ‖(z − a)⁻¹‖ with an error estimate. The 2-norm goes through σ_min of
/// zI − A and never forms the inverse.
inline ResolventNorm resolvent_norm_estimate(const AlgebraElement& a, Complex z) {
  if (a.is_nilpotent()) return {nilpotent_resolvent_norm(a.nilpotent(), z), 4.0 * kEps};
  const ComplexMatrix m = (-a.matrix()).shifted(z);
  const double n = static_cast<double>(m.rows());
  if (a.norm_kind() == NormKind::Induced2) {
    const auto sv = singular_values(m);
    if (sv.back() == 0.0 || sv.back() <= kRankTolerance * sv.front())
      throw SpectrumHit("resolvent_norm: z is within rank tolerance of the spectrum");
    return {1.0 / sv.back(), 10.0 * n * kEps * sv.front() / sv.back()};
  }
  ComplexMatrix r;
  try {
    r = inverse(m);
  } catch (const SingularMatrix&) {
    throw SpectrumHit("resolvent_norm: z is within rank tolerance of the spectrum");
  }
  const double rn = operator_norm(r, a.norm_kind());
  return {rn, 10.0 * n * kEps * operator_norm(m, a.norm_kind()) * rn};
}

inline double resolvent_norm(const AlgebraElement& a, Complex z) { return resolvent_norm_estimate(a, z).value; }

}  // namespace g1lab
