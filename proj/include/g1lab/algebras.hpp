#pragma once

// The two-dimensional algebra {α·1 + β·n : n² = 0} with norm |α| + |β|, and
// seeded matrix generators used as test corpora and CLI inputs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "g1lab/errors.hpp"
#include "g1lab/linalg.hpp"

namespace g1lab {

/// α·1 + β·n with n² = 0. Represented abstractly because |α| + |β| is not
/// one of the induced matrix norms.
struct NilpotentAlgebraElement {
  Complex alpha{};
  Complex beta{};

  double norm() const { return std::abs(alpha) + std::abs(beta); }

  /// Matrix picture [[α, β], [0, α]].
  ComplexMatrix as_matrix() const { return ComplexMatrix{{alpha, beta}, {0.0, alpha}}; }

  friend NilpotentAlgebraElement operator+(NilpotentAlgebraElement x, NilpotentAlgebraElement y) {
    return {x.alpha + y.alpha, x.beta + y.beta};
  }
  friend NilpotentAlgebraElement operator-(NilpotentAlgebraElement x, NilpotentAlgebraElement y) {
    return {x.alpha - y.alpha, x.beta - y.beta};
  }
  friend NilpotentAlgebraElement operator*(Complex s, NilpotentAlgebraElement x) {
    return {s * x.alpha, s * x.beta};
  }
  friend bool operator==(const NilpotentAlgebraElement&, const NilpotentAlgebraElement&) = default;
};

inline NilpotentAlgebraElement nilpotent_mul(const NilpotentAlgebraElement& x,
                                             const NilpotentAlgebraElement& y) {
  return {x.alpha * y.alpha, x.alpha * y.beta + y.alpha * x.beta};
}

namespace detail {
inline void check_nilpotent_hit(const NilpotentAlgebraElement& x, Complex z) {
  const double d = std::abs(z - x.alpha);
  if (d == 0.0 || d <= kRankTolerance * x.norm())
    throw SpectrumHit("nilpotent element: z coincides with the spectrum point alpha");
}
}  // namespace detail

/// (z − α − βn)⁻¹ = (z − α)⁻¹ + β(z − α)⁻²·n, from the terminating geometric series.
inline NilpotentAlgebraElement nilpotent_resolvent(const NilpotentAlgebraElement& x, Complex z) {
  detail::check_nilpotent_hit(x, z);
  const Complex w = 1.0 / (z - x.alpha);
  return {w, x.beta * w * w};
}

/// 1/|z − α| + |β|/|z − α|², exactly.
inline double nilpotent_resolvent_norm(const NilpotentAlgebraElement& x, Complex z) {
  detail::check_nilpotent_hit(x, z);
  const double d = std::abs(z - x.alpha);
  return 1.0 / d + std::abs(x.beta) / (d * d);
}

// ---------------------------------------------------------------------------
// Seeded generators

namespace detail {
inline ComplexMatrix gaussian_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n);
  for (auto& v : g.data()) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = Complex(re, im);
  }
  return g;
}
}  // namespace detail

/// Unitary factor of a seeded complex Gaussian matrix (Gram-Schmidt, run
/// twice per column).
inline ComplexMatrix make_random_unitary(std::size_t n, std::uint64_t seed) {
  ComplexMatrix g = detail::gaussian_matrix(n, seed);
  ComplexMatrix q(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> u = g.column(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex d{};
        for (std::size_t i = 0; i < n; ++i) d += std::conj(q(i, k)) * u[i];
        for (std::size_t i = 0; i < n; ++i) u[i] -= d * q(i, k);
      }
    }
    const double un = vector_norm(u);
    for (std::size_t i = 0; i < n; ++i) q(i, j) = u[i] / un;
  }
  return q;
}

/// U·diag(eigenvalues)·Uᴴ with a seeded random unitary U.
inline ComplexMatrix make_normal(std::size_t n, std::span<const Complex> eigenvalues, std::uint64_t seed) {
  if (eigenvalues.size() != n) throw InvalidArgument("make_normal: need exactly n eigenvalues");
  if (n == 0 || n > kMaxOrder) throw InvalidArgument("make_normal: order out of range");
  if (n == 1) return ComplexMatrix{{eigenvalues[0]}};
  const ComplexMatrix u = make_random_unitary(n, seed);
  ComplexMatrix ud = u;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ud(i, j) *= eigenvalues[j];
  return ud * u.adjoint();
}

/// Complex Gaussian entries scaled by 1/√n.
inline ComplexMatrix make_random(std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > kMaxOrder) throw InvalidArgument("make_random: order out of range");
  ComplexMatrix g = detail::gaussian_matrix(n, seed);
  g *= 1.0 / std::sqrt(static_cast<double>(n));
  return g;
}

/// Diagonal matrix with seeded entries uniform in the square [-2, 2]².
inline ComplexMatrix make_diagonal(std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > kMaxOrder) throw InvalidArgument("make_diagonal: order out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> d(n);
  for (auto& x : d) {
    const double re = u(rng);
    const double im = u(rng);
    x = Complex(re, im);
  }
  return ComplexMatrix::diagonal(d);
}

/// Upper Jordan block J_n(λ): λ on the diagonal, ones on the superdiagonal.
inline ComplexMatrix make_jordan(std::size_t n, Complex lambda = 0.0) {
  if (n == 0 || n > kMaxOrder) throw InvalidArgument("make_jordan: order out of range");
  ComplexMatrix j(n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = lambda;
    if (i + 1 < n) j(i, i + 1) = 1.0;
  }
  return j;
}

/// n×n section of the right shift: ones on the first subdiagonal. Its
/// spectrum is {0}, unlike the closed unit disk of the shift on ℓ².
inline ComplexMatrix make_shift_truncation(std::size_t n) {
  if (n < 2 || n > kMaxOrder) throw InvalidArgument("make_shift_truncation: need 2 <= n <= 500");
  ComplexMatrix s(n);
  for (std::size_t i = 1; i < n; ++i) s(i, i - 1) = 1.0;
  return s;
}

/// Idempotent with ‖P‖₂ = √(1 + angle_param²): e₁(e₁ + t·e₂)ᵀ plus coordinate
/// projections onto e₃…e_{⌈n/2⌉+1}, conjugated by a seeded unitary. Seed 0 is
/// the canonical (unrotated) form, so n = 2, t = 1, seed 0 gives [[1, 1], [0, 0]].
inline ComplexMatrix make_oblique_projection(std::size_t n, double angle_param, std::uint64_t seed) {
  if (n < 2 || n > kMaxOrder) throw InvalidArgument("make_oblique_projection: need 2 <= n <= 500");
  if (!(angle_param > 0.0)) throw InvalidArgument("make_oblique_projection: angle_param must be > 0");
  ComplexMatrix p(n);
  p(0, 0) = 1.0;
  p(0, 1) = angle_param;
  const std::size_t extra = (n + 1) / 2 - 1;
  for (std::size_t j = 2; j < std::min(n, 2 + extra); ++j) p(j, j) = 1.0;
  if (seed == 0) return p;
  const ComplexMatrix u = make_random_unitary(n, seed);
  return u * p * u.adjoint();
}

/// U·diag(1,…,1,0,…,0)·Uᴴ with `rank` ones.
inline ComplexMatrix make_orthogonal_projection(std::size_t n, std::size_t rank, std::uint64_t seed) {
  if (rank > n) throw InvalidArgument("make_orthogonal_projection: rank exceeds order");
  std::vector<Complex> d(n, 0.0);
  for (std::size_t i = 0; i < rank; ++i) d[i] = 1.0;
  return make_normal(n, d, seed);
}

}  // namespace g1lab
