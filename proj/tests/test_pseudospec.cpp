#include <gtest/gtest.h>

#include <cmath>

#include "g1lab/algebras.hpp"
#include "g1lab/pseudospec.hpp"
#include "test_support.hpp"

using namespace g1lab;

namespace {

AlgebraElement mat(ComplexMatrix m, NormKind k) { return {std::move(m), k}; }

}  // namespace

TEST(Grid, ValidationAndGeometry) {
  GridSpec g{0.0, 2.0, -1.0, 1.0, 3, 5};
  EXPECT_NO_THROW(g.validate());
  EXPECT_DOUBLE_EQ(g.dx(), 1.0);
  EXPECT_DOUBLE_EQ(g.dy(), 0.5);
  EXPECT_EQ(g.node(2, 4), Complex(2.0, 1.0));
  EXPECT_THROW((GridSpec{1.0, 0.0, 0.0, 1.0, 3, 3}.validate()), InvalidArgument);
  EXPECT_THROW((GridSpec{0.0, 1.0, 0.0, 1.0, 0, 3}.validate()), InvalidArgument);
  EXPECT_THROW((GridSpec{0.0, 1.0, 0.0, 1.0, 3000, 3000}.validate()), GridTooLarge);
}

TEST(Field, NormalMatrixTwoNormIsInverseDistance) {
  const Complex e[] = {{0.5, 0.0}, {-0.5, 0.5}, {0.0, -1.0}};
  const auto a = mat(make_normal(3, e, 8), NormKind::Induced2);
  const GridSpec g{-2.0, 2.0, -2.0, 2.0, 23, 19};
  const auto f = resolvent_field(a, g);
  const Spectrum s = spectrum(a);
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double d = distance_to_spectrum(g.node(i, j), s);
      EXPECT_NEAR(f.at(i, j) * d, 1.0, 1e-9);
    }
}

TEST(Field, SpectrumHitStoredAsInfinity) {
  const auto a = mat(ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}, NormKind::Induced2);
  const auto f = resolvent_field(a, GridSpec{-1.0, 1.0, -1.0, 1.0, 3, 3});
  EXPECT_TRUE(std::isinf(f.at(1, 1)));
}

TEST(Field, ShiftAndScaleEquivarianceProperty) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    for (auto k : {NormKind::Induced1, NormKind::Induced2, NormKind::InducedInf}) {
      const auto m = make_random(4, seed);
      const GridSpec g{-1.7, 1.9, -1.3, 1.6, 11, 9};
      const auto f = resolvent_field(mat(m, k), g);
      // ‖(z + c − (a + c))⁻¹‖ = ‖(z − a)⁻¹‖
      const Complex c(0.75, -1.25);
      const GridSpec gs{g.re_min + c.real(), g.re_max + c.real(), g.im_min + c.imag(), g.im_max + c.imag(), g.nx, g.ny};
      const auto fs = resolvent_field(mat(m.shifted(c), k), gs);
      // ‖(s·z − s·a)⁻¹‖ = ‖(z − a)⁻¹‖/s for real s > 0
      const double sc = 2.5;
      const GridSpec gm{g.re_min * sc, g.re_max * sc, g.im_min * sc, g.im_max * sc, g.nx, g.ny};
      const auto fm = resolvent_field(mat(sc * m, k), gm);
      for (std::size_t q = 0; q < f.values.size(); ++q) {
        EXPECT_NEAR(fs.values[q], f.values[q], 1e-7 * f.values[q]);
        EXPECT_NEAR(fm.values[q] * sc, f.values[q], 1e-7 * f.values[q]);
      }
    }
  }
}

TEST(Masks, MonotoneInEpsilonProperty) {
  const auto a = mat(make_random(6, 4), NormKind::Induced1);
  const auto f = resolvent_field(a, GridSpec{-3.0, 3.0, -3.0, 3.0, 41, 41});
  const double eps[] = {0.01, 0.05, 0.1, 0.3, 1.0};
  for (int t = 0; t + 1 < 5; ++t) {
    const auto m0 = level_set_membership(f, eps[t]);
    const auto m1 = level_set_membership(f, eps[t + 1]);
    for (std::size_t q = 0; q < m0.size(); ++q)
      if (m0[q]) {
        EXPECT_TRUE(m1[q]);
      }
  }
  EXPECT_THROW(level_set_membership(f, 0.0), InvalidArgument);
}

TEST(Inclusions, HoldOnRandomMatricesAllNorms) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    for (auto k : {NormKind::Induced1, NormKind::Induced2, NormKind::InducedInf}) {
      const auto a = mat(make_random(3 + seed % 4, seed), k);
      const Spectrum s = spectrum(a);
      GridSpec g = default_grid(s);
      g.nx = g.ny = 61;
      const auto f = resolvent_field(a, g);
      const auto hull = numerical_range(a);
      for (double eps : {0.05, 0.2, 0.5}) {
        const auto rep = verify_inclusions(f, s, eps, hull);
        EXPECT_TRUE(rep.holds()) << seed << " " << to_string(k) << " eps=" << eps << " lower=" << rep.lower_violation
                                 << " upper=" << rep.upper_violation;
      }
    }
  }
}

TEST(Inclusions, NilpotentAlgebraField) {
  const AlgebraElement x = NilpotentAlgebraElement{0.0, 1.0};
  const auto f = resolvent_field(x, GridSpec{-2.0, 2.0, -2.0, 2.0, 41, 41});
  const auto rep = verify_inclusions(f, spectrum(x), 0.25, numerical_range(x));
  EXPECT_TRUE(rep.holds());
  EXPECT_GT(rep.member_nodes, rep.lower_nodes);
}
