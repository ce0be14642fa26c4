#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "chow/error.hpp"
#include "chow/symfunc.hpp"

using namespace chow;

namespace {

std::vector<HMonomial> sorted(std::vector<HMonomial> v) {
  std::sort(v.begin(), v.end(), [](const HMonomial& a, const HMonomial& b) { return a.factors < b.factors; });
  return v;
}

Partition random_partition(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> part(0, cols);
  std::vector<int> parts(static_cast<std::size_t>(rows));
  for (int& p : parts) p = part(rng);
  std::sort(parts.rbegin(), parts.rend());
  return Partition(parts);
}

SymPoly random_symmetric(std::mt19937_64& rng, int nvars) {
  // Random combination of products of elementary polynomials, hence symmetric.
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> exp(0, 2);
  SymPoly p(nvars);
  for (int t = 0; t < 3; ++t) {
    SymPoly term = SymPoly::constant(nvars, coeff(rng));
    for (int i = 1; i <= nvars; ++i) {
      for (int e = exp(rng); e > 0; --e) term = term * SymPoly::elementary(nvars, i);
    }
    p = p + term;
  }
  return p;
}

}  // namespace

TEST(Partition, TrimsTrailingZerosAndRejectsIncreasing) {
  EXPECT_EQ(Partition({2, 1, 0, 0}), Partition({2, 1}));
  EXPECT_THROW(Partition({1, 2}), InvalidInput);
  EXPECT_THROW(Partition({-1}), InvalidInput);
}

TEST(Partition, ComplementAndConjugate) {
  const BoxShape box = BoxShape::of(2, 3);
  EXPECT_EQ(Partition({2, 1}).complement(box), Partition({2, 1}));
  EXPECT_EQ(Partition({3}).complement(box), Partition({3}));
  EXPECT_EQ(Partition{}.complement(box), Partition({3, 3}));
  EXPECT_EQ(Partition({3, 1}).conjugate(), Partition({2, 1, 1}));
  EXPECT_EQ(Partition({2, 1}).to_string(), "(2,1)");
}

TEST(Partition, BoxCountIsBinomial) {
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 9; ++c) {
      EXPECT_EQ(Integer(static_cast<long>(partitions_in_box(r, c).size())),
                binomial(static_cast<unsigned long>(r + c), static_cast<unsigned long>(r)))
          << r << "x" << c;
    }
  }
}

TEST(Pieri, AddsHorizontalStrips) {
  const BoxShape box = BoxShape::of(2, 3);
  const SchurVector v = pieri_multiply(SchurVector{{Partition({1}), Integer(1)}}, 1, box);
  EXPECT_EQ(v, (SchurVector{{Partition({2}), Integer(1)}, {Partition({1, 1}), Integer(1)}}));
  // (2,1) * sigma_2 in a 2x3 box: (3,2) only; (4,1) does not fit.
  const SchurVector w = pieri_multiply(SchurVector{{Partition({2, 1}), Integer(1)}}, 2, box);
  EXPECT_EQ(w, (SchurVector{{Partition({3, 2}), Integer(1)}}));
}

TEST(Pieri, RejectsKeysOutsideTheBox) {
  EXPECT_THROW(pieri_multiply(SchurVector{{Partition({4}), Integer(1)}}, 1, BoxShape::of(2, 3)), InvalidInput);
}

TEST(JacobiTrudi, SmallShapes) {
  EXPECT_EQ(sorted(jacobi_trudi(Partition({1, 1}))), sorted({{1, {1, 1}}, {-1, {2}}}));
  EXPECT_EQ(sorted(jacobi_trudi(Partition({2, 1}))), sorted({{1, {2, 1}}, {-1, {3}}}));
  EXPECT_EQ(jacobi_trudi(Partition({3})), (std::vector<HMonomial>{{1, {3}}}));
  EXPECT_THROW(jacobi_trudi(Partition({1, 1, 1, 1})), UnsupportedRank);
}

TEST(SchurProduct, KnownCoefficient) {
  // s_(2,1)^2 contains s_(3,2,1) twice.
  const SchurVector v = schur_product(Partition({2, 1}), Partition({2, 1}), BoxShape::of(3, 3));
  EXPECT_EQ(v.coefficient(Partition({3, 2, 1})), 2);
  EXPECT_EQ(lr_oracle(Partition({2, 1}), Partition({2, 1}), Partition({3, 2, 1})), 2);
}

TEST(SchurProduct, EmptyPastTheBoxArea) {
  EXPECT_TRUE(schur_product(Partition({3, 3}), Partition({1}), BoxShape::of(2, 3)).empty());
}

TEST(SchurProduct, AgreesWithTableauOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> rows(1, 3), cols(1, 6);
  for (int i = 0; i < 200; ++i) {
    const BoxShape box = BoxShape::of(rows(rng), cols(rng));
    const Partition a = random_partition(rng, box.rows, box.cols);
    const Partition b = random_partition(rng, box.rows, box.cols);
    const SchurVector product = schur_product(a, b, box);
    for (const Partition& nu : partitions_in_box(box)) {
      if (nu.weight() != a.weight() + b.weight()) continue;
      ASSERT_EQ(product.coefficient(nu), lr_oracle(a, b, nu)) << a.to_string() << b.to_string() << nu.to_string();
    }
  }
}

TEST(SchurProduct, CommutativeAndAssociative) {
  const BoxShape box = BoxShape::of(2, 4);
  const auto all = partitions_in_box(box);
  for (const auto& a : all) {
    for (const auto& b : all) {
      ASSERT_EQ(schur_product(a, b, box), schur_product(b, a, box));
      for (const auto& c : all) {
        SchurVector left, right;
        for (const auto& [p, x] : schur_product(a, b, box)) {
          for (const auto& [q, y] : schur_product(p, c, box)) left.add(q, x * y);
        }
        for (const auto& [p, x] : schur_product(b, c, box)) {
          for (const auto& [q, y] : schur_product(a, p, box)) right.add(q, x * y);
        }
        ASSERT_EQ(left, right) << a.to_string() << b.to_string() << c.to_string();
      }
    }
  }
}

TEST(SymPoly, ReduceExpandRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const int nvars = 1 + i % 3;
    const SymPoly p = random_symmetric(rng, nvars);
    EXPECT_EQ(expand_elementary(reduce_to_elementary(p)), p);
  }
}

TEST(SymPoly, PowerSumInElementary) {
  // x^2 + y^2 = e1^2 - 2 e2
  const SymPoly x = SymPoly::variable(2, 0), y = SymPoly::variable(2, 1);
  const ElementaryPoly e = reduce_to_elementary(x * x + y * y);
  EXPECT_EQ(e.coefficient({2, 0, 0}), 1);
  EXPECT_EQ(e.coefficient({0, 1, 0}), -2);
}

TEST(SymPoly, AsymmetricInputNamesTransposition) {
  const SymPoly x = SymPoly::variable(3, 0);
  EXPECT_THROW(reduce_to_elementary(x), AsymmetryError);
  EXPECT_TRUE(x.asymmetry().has_value());
}
