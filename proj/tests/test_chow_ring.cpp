#include <gtest/gtest.h>

#include <random>

#include "chow/error.hpp"
#include "chow/invariants.hpp"
#include "chow/spaces.hpp"

using namespace chow;

namespace {

ChowClass sigma(const SpacePtr& g, Partition p) { return ChowClass::basis(g, Label{std::move(p), {}}); }

ChowClass random_class(std::mt19937_64& rng, const SpacePtr& s, int codim) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  ChowClass out(s);
  for (std::uint32_t i : s->basis(codim)) out += ChowClass::basis(s, s->label(i)) * Integer(coeff(rng));
  return out;
}

}  // namespace

TEST(Grassmannian, FourLines) {
  const SpacePtr g = grassmannian(2, 4).space;
  EXPECT_EQ(integrate(power(sigma(g, {1}), 4)), 2);
}

TEST(Grassmannian, GramIsIdentityInCodimTwo) {
  const SpacePtr g = grassmannian(2, 4).space;
  const IntegerMatrix& m = g->gram_matrix(2);
  ASSERT_EQ(m.size(), 2u);
  // Self-dual basis: sigma_2 and sigma_11 are each their own dual.
  EXPECT_EQ(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
  EXPECT_EQ(m[0][1], 0);
  EXPECT_EQ(m[1][0], 0);
  EXPECT_THROW(g->gram_matrix(5), RangeError);
}

TEST(Grassmannian, GramDeterminantsAreUnits) {
  for (int n = 3; n <= 8; ++n) {
    const SpacePtr g = grassmannian(2, n).space;
    for (int d = 0; d <= g->dimension(); ++d) EXPECT_EQ(abs(determinant(g->gram_matrix(d))), 1) << n << " " << d;
  }
  for (int n = 4; n <= 12; ++n) {
    const SpacePtr g = grassmannian(3, n).space;
    for (int d = 0; d <= g->dimension(); ++d) EXPECT_EQ(abs(determinant(g->gram_matrix(d))), 1) << n << " " << d;
  }
}

TEST(Grassmannian, ProductMatchesSchurProduct) {
  const Grassmannian g = grassmannian(3, 7);
  const BoxShape box = *g.space->box();
  for (const auto& a : partitions_in_box(box)) {
    for (const auto& b : partitions_in_box(box)) {
      ChowClass expected(g.space);
      for (const auto& [p, c] : schur_product(a, b, box)) expected += sigma(g.space, p) * c;
      ASSERT_EQ(sigma(g.space, a) * sigma(g.space, b), expected);
    }
  }
}

TEST(ChowClass, IntegrateNeedsTopDegree) {
  const SpacePtr g = grassmannian(2, 4).space;
  EXPECT_EQ(integrate(ChowClass(g)), 0);
  EXPECT_THROW(integrate(sigma(g, {1})), DegreeError);
  EXPECT_THROW(integrate(ChowClass::unit(g) + sigma(g, {2, 2})), DegreeError);
}

TEST(ChowClass, ComponentsAndTruncation) {
  const SpacePtr g = grassmannian(2, 5).space;
  const ChowClass x = ChowClass::unit(g) + sigma(g, {1}) * Integer(3) + sigma(g, {2, 1});
  EXPECT_FALSE(x.is_homogeneous());
  EXPECT_EQ(x.max_codim(), 3);
  EXPECT_EQ(x.component(1), sigma(g, {1}) * Integer(3));
  EXPECT_EQ(x.truncated(1), ChowClass::unit(g) + sigma(g, {1}) * Integer(3));
  EXPECT_EQ(sigma(g, {2, 1}).degree(), 3);
}

TEST(ProjectiveSpace, OverAPoint) {
  const SpacePtr p4 = Space::projective(point(), std::vector<ChowClass>(5, ChowClass(point())));
  const ChowClass h = p4->generator(0);
  EXPECT_EQ(p4->dimension(), 4);
  EXPECT_EQ(integrate(power(h, 4)), 1);
  EXPECT_TRUE(power(h, 5).is_zero());
}

TEST(ProjectiveBundle, GrothendieckRelation) {
  const Grassmannian g = grassmannian(2, 4);
  const ProjectiveBundle p = projective_bundle(g.space, g.quotient);
  const ChowClass c1 = lift(g.quotient.chern(1), p.space);
  const ChowClass c2 = lift(g.quotient.chern(2), p.space);
  EXPECT_TRUE((p.zeta * p.zeta - c1 * p.zeta + c2).is_zero());
  // Points on lines in P^3: zeta comes from P^3, and one line passes through
  // a point while meeting two general lines.
  EXPECT_TRUE(power(p.zeta, 4).is_zero());
  EXPECT_EQ(integrate(power(p.zeta, 3) * lift(sigma(g.space, {1}) * sigma(g.space, {1}), p.space)), 1);
}

TEST(Pushforward, ZetaPowers) {
  const Grassmannian g = grassmannian(3, 6);
  const ProjectiveBundle p = projective_bundle(g.space, dual(symmetric_power(2, g.quotient)));
  for (int j = 0; j < 6; ++j) {
    const ChowClass pushed = pushforward_dual_basis(p.projection, power(p.zeta, j));
    if (j == 5) {
      EXPECT_EQ(pushed, ChowClass::unit(g.space));
    } else {
      EXPECT_TRUE(pushed.is_zero()) << j;
    }
  }
  // The next power gives the first Segre-type class c_1(E) of the bundle.
  EXPECT_EQ(pushforward_dual_basis(p.projection, power(p.zeta, 6)), p.bundle.chern(1));
}

TEST(Pushforward, ProjectionFormula) {
  std::mt19937_64 rng(3);
  const Grassmannian g = grassmannian(2, 5);
  const ProjectiveBundle p = projective_bundle(g.space, symmetric_power(2, g.quotient));
  for (int trial = 0; trial < 10; ++trial) {
    const ChowClass x = random_class(rng, p.space, 4);
    const ChowClass y = random_class(rng, g.space, 2);
    EXPECT_EQ(pushforward_dual_basis(p.projection, x * pullback_apply(p.projection, y)),
              pushforward_dual_basis(p.projection, x) * y);
  }
}

TEST(Morphism, PullbackIsARingMap) {
  std::mt19937_64 rng(5);
  const auto geo = conic_geometry(3);
  const SpacePtr& m = geo->conics.space;
  for (int trial = 0; trial < 10; ++trial) {
    const ChowClass x = random_class(rng, m, 2);
    const ChowClass y = random_class(rng, m, 3);
    EXPECT_EQ(pullback_apply(geo->forget, x * y), pullback_apply(geo->forget, x) * pullback_apply(geo->forget, y));
  }
}

TEST(Morphism, RelationResidualsVanish) {
  for (int k = 3; k <= 5; ++k) {
    for (const ChowClass& r : conic_geometry(k)->forget.relation_residuals()) EXPECT_TRUE(r.is_zero()) << k;
  }
  const Grassmannian g = grassmannian(2, 5);
  for (const ChowClass& r : projective_bundle(g.space, g.quotient).projection.relation_residuals()) {
    EXPECT_TRUE(r.is_zero());
  }
}

TEST(Morphism, BadGeneratorImagesAreRejected) {
  const auto geo = conic_geometry(3);
  auto images = geo->forget.generator_images();
  images.pop_back();
  EXPECT_THROW(Morphism(geo->pointed_conics.space, geo->conics.space, images), InvalidInput);
  images = geo->forget.generator_images();
  images.back() = images.back() * images.back();
  EXPECT_THROW(Morphism(geo->pointed_conics.space, geo->conics.space, images), DegreeError);
}

TEST(Morphism, TowerFunctoriality) {
  // pi_M o f = pi_H o pi_M' as maps to G, checked on pullbacks and pushforwards.
  std::mt19937_64 rng(9);
  const auto geo = conic_geometry(3);
  const Morphism& f = geo->forget;
  const Morphism& pm = geo->conics.projection;
  const Morphism& ph = geo->pointed_planes.projection;
  const Morphism& pmp = geo->pointed_conics.projection;
  const SpacePtr& g = geo->grassmannian.space;
  for (int d = 0; d <= g->dimension(); ++d) {
    const ChowClass y = random_class(rng, g, d);
    EXPECT_EQ(pullback_apply(f, pullback_apply(pm, y)), pullback_apply(pmp, pullback_apply(ph, y)));
  }
  const SpacePtr& mp = geo->pointed_conics.space;
  for (int d = 0; d <= mp->dimension(); ++d) {
    const ChowClass x = random_class(rng, mp, d);
    EXPECT_EQ(pushforward_dual_basis(pm, pushforward_dual_basis(f, x)),
              pushforward_dual_basis(ph, pushforward_dual_basis(pmp, x)));
  }
}

TEST(Lift, PreservesProducts) {
  const Grassmannian g = grassmannian(2, 5);
  const ProjectiveBundle p = projective_bundle(g.space, g.quotient);
  const ChowClass a = sigma(g.space, {1}), b = sigma(g.space, {2, 1});
  EXPECT_EQ(lift(a * b, p.space), lift(a, p.space) * lift(b, p.space));
  EXPECT_THROW(lift(p.zeta, g.space), SpaceMismatch);
}

TEST(Linalg, DeterminantAndSolve) {
  EXPECT_EQ(determinant({{Integer(2), Integer(1)}, {Integer(7), Integer(4)}}), 1);
  EXPECT_EQ(determinant({{Integer(0), Integer(1)}, {Integer(1), Integer(0)}}), -1);
  const auto x = solve_rational({{Integer(2), Integer(1)}, {Integer(7), Integer(4)}}, {Integer(3), Integer(11)});
  EXPECT_EQ(x[0], 1);
  EXPECT_EQ(x[1], 1);
  EXPECT_THROW(solve_rational({{Integer(1), Integer(2)}, {Integer(2), Integer(4)}}, {Integer(1), Integer(1)}),
               ConsistencyError);
}
