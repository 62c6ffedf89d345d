#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "g1lab/algebras.hpp"
#include "g1lab/spectral.hpp"
#include "test_support.hpp"

using namespace g1lab;
using g1lab::testing::kPhi;

namespace {

AlgebraElement mat(ComplexMatrix m, NormKind k = NormKind::Induced2) { return {std::move(m), k}; }

}  // namespace

TEST(AlgebraElement, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(mat(ComplexMatrix(2, 3)), InvalidArgument);
  ComplexMatrix bad{{1.0, std::nan("")}, {0.0, 1.0}};
  EXPECT_THROW(mat(bad), InvalidArgument);
}

TEST(AlgebraElement, MixedAlgebrasRejected) {
  AlgebraElement a = mat(ComplexMatrix::identity(2));
  AlgebraElement b = mat(ComplexMatrix::identity(2), NormKind::Induced1);
  AlgebraElement c = NilpotentAlgebraElement{1.0, 0.0};
  EXPECT_THROW(a + b, InvalidArgument);
  EXPECT_THROW(a * c, InvalidArgument);
}

TEST(Spectrum, JordanBlockIsOneCluster) {
  const Spectrum s = spectrum(mat(make_jordan(3)));
  ASSERT_EQ(s.clusters.size(), 1u);
  EXPECT_EQ(s.clusters[0].multiplicity, 3u);
  EXPECT_LT(std::abs(s.clusters[0].center), 1e-6);
}

TEST(Spectrum, DiagonalClustersSortedLexicographically) {
  const Complex d[] = {{2.0, 0.0}, {-1.0, 1.0}, {-1.0, -1.0}, {2.0, 0.0}};
  const Spectrum s = spectrum(mat(ComplexMatrix::diagonal(d)));
  ASSERT_EQ(s.clusters.size(), 3u);
  EXPECT_EQ(s.clusters[0].center, Complex(-1.0, -1.0));
  EXPECT_EQ(s.clusters[1].center, Complex(-1.0, 1.0));
  EXPECT_EQ(s.clusters[2].center, Complex(2.0, 0.0));
  EXPECT_EQ(s.clusters[2].multiplicity, 2u);
  EXPECT_DOUBLE_EQ(s.spectral_radius, 2.0);
  EXPECT_EQ(s.total_multiplicity(), 4u);
}

TEST(Spectrum, NilpotentAlgebraSpectrumIsAlpha) {
  const Spectrum s = spectrum(AlgebraElement(NilpotentAlgebraElement{{1.0, 2.0}, 5.0}));
  ASSERT_EQ(s.clusters.size(), 1u);
  EXPECT_EQ(s.clusters[0].center, Complex(1.0, 2.0));
  EXPECT_DOUBLE_EQ(s.spectral_radius, std::sqrt(5.0));
}

TEST(Spectrum, ClusteringMergesWithinTolerance) {
  const Complex e[] = {{0.0, 0.0}, {1e-9, 0.0}, {2e-9, 0.0}, {1.0, 0.0}};
  const auto c = cluster_eigenvalues(e, 1e-8);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].multiplicity, 3u);
  EXPECT_NEAR(c[0].center.real(), 1e-9, 1e-15);
  EXPECT_GT(c[0].spread, 0.0);
}

TEST(SpectralRadius, LimitIsUpperBoundAndConverges) {
  const ComplexMatrix a{{0.5, 10.0}, {0.0, 0.25}};
  const auto el = mat(a);
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {1, 4, 16, 64, 256}) {
    const double r = spectral_radius_limit(el, n);
    EXPECT_GE(r, 0.5 - 1e-12);
    EXPECT_LE(r, prev);
    prev = r;
  }
  EXPECT_NEAR(prev, 0.5, 0.05);
}

TEST(SpectralRadius, NilpotentHitsZero) {
  EXPECT_EQ(spectral_radius_limit(mat(make_jordan(3)), 8), 0.0);
  EXPECT_EQ(spectral_radius_limit(AlgebraElement(NilpotentAlgebraElement{0.0, 1.0}), 4), 0.0);
}

TEST(SpectralRadius, OverflowReported) {
  const ComplexMatrix a{{1e200, 0.0}, {0.0, 1.0}};
  EXPECT_THROW(spectral_radius_limit(mat(a), 4), Overflow);
}

TEST(Resolvent, HitThrows) {
  EXPECT_THROW(resolvent(mat(make_jordan(2)), 0.0), SpectrumHit);
  EXPECT_THROW(resolvent_norm(mat(make_jordan(2)), 0.0), SpectrumHit);
  EXPECT_THROW(resolvent_norm(AlgebraElement(NilpotentAlgebraElement{1.0, 1.0}), 1.0), SpectrumHit);
}

TEST(Resolvent, JordanTwoAtOneIsPhi) {
  for (auto k : {NormKind::Induced1, NormKind::InducedInf}) EXPECT_NEAR(resolvent_norm(mat(make_jordan(2), k), 1.0), 2.0, 1e-14);
  EXPECT_NEAR(resolvent_norm(mat(make_jordan(2)), 1.0), kPhi, 1e-14);
}

TEST(Resolvent, NilpotentClosedForm) {
  // ‖(z − a)⁻¹‖ = 1/|z − α| + |β|/|z − α|² in the ℓ¹ algebra norm
  const NilpotentAlgebraElement x{{0.5, -0.25}, {2.0, 1.0}};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Complex z(u(rng), u(rng));
    const double d = std::abs(z - x.alpha);
    EXPECT_NEAR(resolvent_norm(AlgebraElement(x), z), 1.0 / d + std::abs(x.beta) / (d * d), 1e-12 * (1.0 + 1.0 / (d * d)));
  }
}

TEST(Resolvent, ResolventIdentityProperty) {
  // R(z) − R(w) = (w − z) R(z) R(w)
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = mat(make_random(5, seed), NormKind::Induced1);
    const Complex z(u(rng), 3.0), w(3.0, u(rng));
    const auto lhs = resolvent(a, z) - resolvent(a, w);
    const auto rhs = (w - z) * (resolvent(a, z) * resolvent(a, w));
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
  }
}

TEST(Resolvent, LowerBoundByDistanceProperty) {
  // ‖(z − a)⁻¹‖ ≥ 1/d(z, σ(a)) in every Banach algebra norm
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    for (auto k : {NormKind::Induced1, NormKind::Induced2, NormKind::InducedInf}) {
      const auto a = mat(make_random(2 + seed % 7, seed), k);
      const Spectrum s = spectrum(a);
      for (int t = 0; t < 5; ++t) {
        const Complex z(u(rng), u(rng));
        EXPECT_GE(resolvent_norm(a, z) * distance_to_spectrum(z, s), 1.0 - 1e-8);
      }
    }
  }
}

TEST(Generators, NormalMatrixHasPrescribedSpectrumAndIsNormal) {
  const Complex e[] = {{1.0, 0.0}, {0.0, 2.0}, {-1.5, -0.5}, {3.0, 1.0}};
  const ComplexMatrix a = make_normal(4, e, 42);
  EXPECT_LT(g1lab::testing::max_abs_diff(a * a.adjoint(), a.adjoint() * a), 1e-12);
  const Spectrum s = spectrum(mat(a));
  ASSERT_EQ(s.clusters.size(), 4u);
  EXPECT_NEAR(s.clusters[0].center.real(), -1.5, 1e-10);
  EXPECT_NEAR(s.spectral_radius, std::abs(Complex(3.0, 1.0)), 1e-10);
}

TEST(Generators, Deterministic) {
  EXPECT_EQ(make_random(6, 9), make_random(6, 9));
  EXPECT_EQ(make_diagonal(6, 9), make_diagonal(6, 9));
  EXPECT_FALSE(make_random(6, 9) == make_random(6, 10));
}

TEST(Generators, ProjectionsAreIdempotent) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = make_orthogonal_projection(6, 3, seed);
    EXPECT_LT(g1lab::testing::max_abs_diff(p * p, p), 1e-12);
    EXPECT_LT(g1lab::testing::max_abs_diff(p, p.adjoint()), 1e-12);
    const auto q = make_oblique_projection(4, 0.7, seed);
    EXPECT_LT(g1lab::testing::max_abs_diff(q * q, q), 1e-12);
  }
}

TEST(NilpotentAlgebra, MultiplicationMatchesMatrixPicture) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    const NilpotentAlgebraElement x{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const NilpotentAlgebraElement y{{g(rng), g(rng)}, {g(rng), g(rng)}};
    EXPECT_LT(g1lab::testing::max_abs_diff(nilpotent_mul(x, y).as_matrix(), x.as_matrix() * y.as_matrix()), 1e-13);
    EXPECT_LE(nilpotent_mul(x, y).norm(), x.norm() * y.norm() + 1e-12);
  }
}
