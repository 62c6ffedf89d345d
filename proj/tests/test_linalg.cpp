#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "g1lab/algebras.hpp"
#include "g1lab/linalg.hpp"
#include "test_support.hpp"

using namespace g1lab;
using g1lab::testing::kPhi;
using g1lab::testing::max_abs_diff;
using g1lab::testing::to_eigen;

TEST(Solve, IdentityAndDiagonal) {
  auto i2 = ComplexMatrix::identity(2);
  EXPECT_EQ(solve(i2, i2), i2);
  ComplexMatrix d{{2.0, 0.0}, {0.0, 4.0}};
  ComplexMatrix expect{{0.5, 0.0}, {0.0, 0.25}};
  EXPECT_LT(max_abs_diff(solve(d, i2), expect), 1e-15);
}

TEST(Solve, UnitUpperTriangularMultipliesBack) {
  ComplexMatrix a{{1.0, 1.0}, {0.0, 1.0}};
  auto x = solve(a, ComplexMatrix::identity(2));
  ComplexMatrix expect{{1.0, -1.0}, {0.0, 1.0}};
  EXPECT_LT(max_abs_diff(x, expect), 1e-15);
  EXPECT_LT(max_abs_diff(a * x, ComplexMatrix::identity(2)), 1e-15);
}

TEST(Solve, SingularThrows) {
  ComplexMatrix a{{1.0, 2.0}, {2.0, 4.0}};
  EXPECT_THROW(solve(a, ComplexMatrix::identity(2)), SingularMatrix);
  EXPECT_THROW(solve(ComplexMatrix(3), ComplexMatrix::identity(3)), SingularMatrix);
}

TEST(Solve, RejectsBadShapes) {
  EXPECT_THROW(solve(ComplexMatrix(2, 3), ComplexMatrix(2, 2)), InvalidArgument);
  EXPECT_THROW(require_square(ComplexMatrix(501), "t"), InvalidArgument);
  ComplexMatrix bad{{std::nan(""), 0.0}, {0.0, 1.0}};
  EXPECT_THROW(require_square(bad, "t"), InvalidArgument);
}

TEST(Solve, RandomBackwardError) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 2 + seed % 19;
    auto a = make_random(n, seed);
    auto x = solve(a, ComplexMatrix::identity(n));
    const double kappa = operator_norm(a, NormKind::Induced1) * operator_norm(x, NormKind::Induced1);
    const double err = operator_norm(a * x - ComplexMatrix::identity(n), NormKind::Induced1);
    EXPECT_LE(err, 1e-8 * kappa) << "seed " << seed;
  }
}

TEST(Eigenvalues, SpecExamples) {
  auto sorted = [](std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
      return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    return v;
  };
  auto e1 = sorted(eigenvalues(ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}).eigenvalues);
  EXPECT_NEAR(std::abs(e1[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e1[1] - 1.0), 0.0, 1e-15);

  auto e2 = eigenvalues(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}).eigenvalues;
  EXPECT_EQ(e2[0], Complex{});
  EXPECT_EQ(e2[1], Complex{});

  // z² + 1 = 0
  auto e3 = sorted(eigenvalues(ComplexMatrix{{0.0, -1.0}, {1.0, 0.0}}).eigenvalues);
  EXPECT_LT(std::abs(e3[0] - Complex(0, -1)), 1e-14);
  EXPECT_LT(std::abs(e3[1] - Complex(0, 1)), 1e-14);
}

TEST(Eigenvalues, MatchesEigenOracleOnRandomMatrices) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const std::size_t n = 1 + seed % 30;
    auto a = make_random(n, seed);
    auto mine = eigenvalues(a).eigenvalues;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ref(to_eigen(a), false);
    std::vector<Complex> theirs(ref.eigenvalues().data(), ref.eigenvalues().data() + n);
    // greedy matching
    for (auto lam : mine) {
      auto it = std::min_element(theirs.begin(), theirs.end(),
                                 [&](Complex x, Complex y) { return std::abs(x - lam) < std::abs(y - lam); });
      EXPECT_LT(std::abs(*it - lam), 1e-9) << "seed " << seed;
      theirs.erase(it);
    }
  }
}

// For every reported λ, σ_min(A − λI) is the optimal residual ‖Av − λv‖₂ over
// unit v, so it must sit below residual_bound·‖A‖₂.
TEST(Eigenvalues, ResidualBoundProperty) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 2 + seed % 49;
    auto a = make_random(n, seed * 7);
    auto r = eigenvalues(a);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.residual_bound, 1e-8);
    const double anorm = operator_norm(a, NormKind::Induced2);
    for (auto lam : r.eigenvalues) {
      const double res = singular_values(a.shifted(-lam)).back();
      EXPECT_LE(res, std::max(r.residual_bound * anorm, 1e-300)) << "seed " << seed;
    }
  }
}

TEST(Eigenvalues, ShiftTruncationConverges) {
  for (std::size_t n : {2u, 3u, 10u, 50u}) {
    auto r = eigenvalues(make_shift_truncation(n));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.residual_bound, 1e-12);
  }
}

TEST(SigmaMin, SpecExamples) {
  EXPECT_NEAR(sigma_min(ComplexMatrix::identity(2)), 1.0, 1e-15);
  EXPECT_NEAR(sigma_min(ComplexMatrix{{3.0, 0.0}, {0.0, 0.5}}), 0.5, 1e-15);
  // eigenvalues of MᴴM are (3 ± √5)/2
  EXPECT_NEAR(sigma_min(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), 1.0 / kPhi, 1e-15);
}

TEST(SingularValues, MatchEigenOracle) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::size_t n = 1 + seed % 20;
    auto a = make_random(n, seed + 1000);
    auto mine = singular_values(a);
    Eigen::JacobiSVD<Eigen::MatrixXcd> ref(to_eigen(a));
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(mine[i], ref.singularValues()[static_cast<Eigen::Index>(i)], 1e-12 * mine[0]);
  }
}

TEST(SigmaMin, TimesInverseNormIsOne) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::size_t n = 2 + seed % 15;
    auto a = make_random(n, seed + 77).shifted(3.0);  // well conditioned
    const double p = sigma_min(a) * operator_norm(inverse(a), NormKind::Induced2);
    EXPECT_NEAR(p, 1.0, 1e-8);
  }
}

TEST(OperatorNorm, SpecExamples) {
  for (auto k : {NormKind::Induced1, NormKind::Induced2, NormKind::InducedInf})
    EXPECT_NEAR(operator_norm(ComplexMatrix::identity(3), k), 1.0, 1e-12);
  EXPECT_EQ(operator_norm(ComplexMatrix::identity(3), NormKind::Induced1), 1.0);
  EXPECT_EQ(operator_norm(ComplexMatrix::identity(3), NormKind::InducedInf), 1.0);
  EXPECT_NEAR(operator_norm(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, NormKind::Induced2), 1.0, 1e-15);
  ComplexMatrix u{{1.0, 1.0}, {0.0, 1.0}};
  EXPECT_EQ(operator_norm(u, NormKind::Induced1), 2.0);
  EXPECT_EQ(operator_norm(u, NormKind::InducedInf), 2.0);
  EXPECT_NEAR(operator_norm(u, NormKind::Induced2), kPhi, 1e-14);
}

TEST(OperatorNorm, Submultiplicative) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 2 + seed % 12;
    auto a = make_random(n, seed);
    auto b = make_random(n, seed + 500);
    for (auto k : {NormKind::Induced1, NormKind::Induced2, NormKind::InducedInf})
      EXPECT_LE(operator_norm(a * b, k), operator_norm(a, k) * operator_norm(b, k) * (1 + 1e-12));
  }
}

TEST(HermitianEigen, MatchesEigenOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 1 + seed % 25;
    auto g = make_random(n, seed);
    auto h = g + g.adjoint();
    auto mine = hermitian_eigen(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(h));
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(mine.values[i], ref.eigenvalues()[static_cast<Eigen::Index>(i)], 1e-12 * (1 + std::abs(mine.values[i])));
    // eigenvector residual
    auto hv = h * mine.vectors;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(hv(i, k) - mine.values[k] * mine.vectors(i, k)), 1e-12);
  }
}

TEST(OrthonormalRange, RecoversRankTwoSubspace) {
  auto p = make_orthogonal_projection(6, 2, 11);
  EXPECT_EQ(numerical_rank(p, 1e-8), 2u);
  auto e = orthonormal_range(p, 2);
  EXPECT_LT(max_abs_diff(e.adjoint() * e, ComplexMatrix::identity(2)), 1e-13);
  EXPECT_LT(max_abs_diff(p * e, e), 1e-13);
}
