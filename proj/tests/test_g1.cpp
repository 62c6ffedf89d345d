#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "g1lab/algebras.hpp"
#include "g1lab/g1.hpp"
#include "test_support.hpp"

using namespace g1lab;
using g1lab::testing::kPhi;

namespace {

AlgebraElement mat(ComplexMatrix m, NormKind k = NormKind::Induced2) { return {std::move(m), k}; }

std::vector<Complex> separated_eigenvalues(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> e;
  while (e.size() < n) {
    const Complex z(u(rng), u(rng));
    bool ok = true;
    for (auto w : e) ok = ok && std::abs(z - w) > 0.3;
    if (ok) e.push_back(z);
  }
  return e;
}

}  // namespace

TEST(Deviation, JordanTwoAtOne) {
  EXPECT_NEAR(g1_deviation(mat(make_jordan(2)), 1.0), kPhi - 1.0, 1e-12);
  EXPECT_NEAR(g1_deviation(mat(make_jordan(2), NormKind::Induced1), 1.0), 1.0, 1e-12);
}

TEST(Deviation, NilpotentClosedForm) {
  const NilpotentAlgebraElement x{{0.3, 0.1}, {-1.0, 2.0}};
  for (Complex z : {Complex(1.0, 1.0), Complex(-2.0, 0.5), Complex(0.3, 3.0)})
    EXPECT_NEAR(g1_deviation(AlgebraElement(x), z), std::abs(x.beta) / std::abs(z - x.alpha), 1e-12);
}

TEST(Deviation, NonnegativeProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto k = static_cast<NormKind>(seed % 3);
    const auto a = mat(make_random(2 + seed % 9, seed), k);
    const Spectrum s = spectrum(a);
    for (int t = 0; t < 10; ++t) EXPECT_GE(g1_deviation(a, s, Complex(u(rng), u(rng))), -1e-8);
  }
}

TEST(Deviation, AffineInvarianceProperty) {
  // g_{αa+β}(αz+β) = g_a(z): both factors scale by 1/|α| and |α|
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = make_random(4, seed);
    const Complex al(u(rng), u(rng)), be(u(rng), u(rng));
    const auto a = mat(m);
    const auto b = mat((al * m).shifted(be));
    const Complex z(u(rng), 2.5);
    EXPECT_NEAR(g1_deviation(b, al * z + be), g1_deviation(a, z), 1e-7);
  }
}

TEST(Certify, NormalMatricesConsistent) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto e = separated_eigenvalues(2 + seed, seed);
    const auto rep = certify_g1(mat(make_normal(e.size(), e, seed)));
    EXPECT_EQ(rep.verdict, Verdict::G1Consistent);
    EXPECT_LE(rep.max_deviation, 1e-7);
    EXPECT_GT(rep.samples_used, 0u);
  }
}

TEST(Certify, DiagonalInfNormConsistent) {
  const auto rep = certify_g1(mat(make_diagonal(5, 3), NormKind::InducedInf));
  EXPECT_EQ(rep.verdict, Verdict::G1Consistent);
}

TEST(Certify, JordanBlocksRefutedInAllNorms) {
  for (std::size_t n : {2u, 3u})
    for (auto k : {NormKind::Induced1, NormKind::Induced2, NormKind::InducedInf}) {
      const auto rep = certify_g1(mat(make_jordan(n), k));
      EXPECT_EQ(rep.verdict, Verdict::NotG1);
      EXPECT_GT(rep.witness_margin, 0.0);
      EXPECT_GE(g1_deviation(mat(make_jordan(n), k), rep.witness_point), 1e-6 + rep.witness_margin - 1e-9);
    }
}

TEST(Certify, NilpotentAlgebraElement) {
  const auto rep = certify_g1(AlgebraElement(NilpotentAlgebraElement{0.0, 1.0}));
  EXPECT_EQ(rep.verdict, Verdict::NotG1);
  // innermost circle radius is 2⁻⁶
  EXPECT_NEAR(rep.max_deviation, 64.0, 1e-9);
  EXPECT_TRUE(certify_g1(AlgebraElement(NilpotentAlgebraElement{2.0, 0.0})).verdict == Verdict::G1Consistent);
}

TEST(Certify, DeterministicAndValidated) {
  const auto a = mat(make_random(6, 12));
  const auto r1 = certify_g1(a);
  const auto r2 = certify_g1(a);
  EXPECT_EQ(r1.max_deviation, r2.max_deviation);
  EXPECT_EQ(r1.argmax_point, r2.argmax_point);
  EXPECT_THROW(certify_g1(a, 0.0), InvalidArgument);
}

TEST(Certify, VerdictStrings) {
  for (auto v : {Verdict::G1Consistent, Verdict::NotG1, Verdict::Inconclusive}) EXPECT_EQ(parse_verdict(to_string(v)), v);
}

TEST(ScalarTest, ScalarsAndJordan) {
  const auto s = scalar_test(mat(Complex(2.0, 0.0) * ComplexMatrix::identity(3)), 1e-8);
  EXPECT_TRUE(s.single_cluster);
  EXPECT_FALSE(s.not_g1);
  EXPECT_EQ(s.certification.verdict, Verdict::G1Consistent);
  EXPECT_EQ(s.affine.size(), 3u);
  EXPECT_TRUE(s.affine_consistent);

  const auto j = scalar_test(mat(make_jordan(2, {1.0, 1.0})), 1e-8);
  EXPECT_TRUE(j.single_cluster);
  EXPECT_TRUE(j.not_g1);
  EXPECT_NEAR(j.distance_from_scalar, 1.0, 1e-6);
}

TEST(HermitianIdempotent, OrthogonalProjectionPasses) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto rep = hermitian_idempotent_test(mat(make_orthogonal_projection(5, 2, seed)), 1e-8);
    EXPECT_TRUE(rep.hermitian_idempotent);
    EXPECT_TRUE(rep.g1_consistent);
    EXPECT_NEAR(rep.norm_minus_one, 0.0, 1e-10);
  }
}

TEST(HermitianIdempotent, ObliqueProjectionRefuted) {
  const auto rep = hermitian_idempotent_test(mat(ComplexMatrix{{1, 1}, {0, 0}}), 1e-8);
  EXPECT_TRUE(rep.idempotent);
  EXPECT_FALSE(rep.hermitian);
  EXPECT_TRUE(rep.spectrum_in_01);
  EXPECT_TRUE(rep.refuted);
  EXPECT_NEAR(rep.norm_minus_one, std::sqrt(2.0) - 1.0, 1e-10);
}
