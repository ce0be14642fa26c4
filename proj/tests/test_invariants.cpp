#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "chow/checks.hpp"
#include "chow/error.hpp"
#include "chow/invariants.hpp"

using namespace chow;

namespace {

// Computes the line number directly, multiplying in the given order.
Integer lines_in_order(int k, std::array<int, 3> abc) {
  const auto geo = line_geometry(k);
  const SpacePtr& g = geo->grassmannian.space;
  ChowClass x = ChowClass::unit(g);
  for (int a : abc) x = x * ChowClass::basis(g, Label{Partition::row(a - 1), {}});
  return integrate(x * geo->locus);
}

Integer conics_in_order(int k, std::array<int, 3> abc) {
  ChowClass x = ChowClass::unit(conic_geometry(k)->conics.space);
  for (int a : abc) x = x * conic_incidence_class(k, a);
  return integrate(x * conic_geometry(k)->locus);
}

}  // namespace

TEST(WeightedLines, TableValues) {
  EXPECT_EQ(lines_on_quintic(), 2875);
  EXPECT_EQ(weighted_lines_count(2), 7884);
  EXPECT_EQ(weighted_lines_count(4), 29504);
  EXPECT_THROW(weighted_lines_count(3), InvalidWeight);
  EXPECT_THROW(InvariantRequest::weighted_lines(3).validate(), InvalidWeight);
}

TEST(GwLines, Examples) {
  EXPECT_EQ(gw_lines(3, 1, 1), lines_on_quintic());
  EXPECT_EQ(gw_lines(4, 1, 1), 60480);
  EXPECT_EQ(gw_lines(6, 2, 2), 59021312);
  EXPECT_EQ(gw_lines(10, 3, 3), Integer("65733143224320"));
}

TEST(GwLines, IncidenceErrors) {
  EXPECT_THROW(gw_lines(5, 0, 2), InvalidIncidence);
  EXPECT_THROW(gw_lines(5, 3, 2), InvalidIncidence);
  EXPECT_THROW(gw_lines(2, 1, 1), InvalidInput);
  EXPECT_THROW(gw_lines(11, 1, 1), InvalidInput);
  EXPECT_THROW(gw_conics(5, 4, 1), InvalidIncidence);
  EXPECT_NO_THROW(InvariantRequest::lines(5, 1, 2).validate());
}

TEST(GwLines, SymmetricUnderPermutations) {
  for (int k = 3; k <= 7; ++k) {
    for (int a = 1; a < k; ++a) {
      for (int b = 1; a + b < k; ++b) {
        std::array<int, 3> abc{a, b, k - a - b};
        const Integer reference = gw_lines(k, a, b);
        std::sort(abc.begin(), abc.end());
        do {
          EXPECT_EQ(lines_in_order(k, abc), reference);
        } while (std::next_permutation(abc.begin(), abc.end()));
      }
    }
  }
}

TEST(GwConics, SymmetricUnderPermutations) {
  for (int k = 3; k <= 7; ++k) {
    for (int a = 1; a < k; ++a) {
      for (int b = 1; a + b < k; ++b) {
        std::array<int, 3> abc{a, b, k - a - b};
        const Integer reference = gw_conics(k, a, b);
        std::sort(abc.begin(), abc.end());
        do {
          EXPECT_EQ(conics_in_order(k, abc), reference);
        } while (std::next_permutation(abc.begin(), abc.end()));
      }
    }
  }
}

TEST(GwConics, Examples) {
  EXPECT_EQ(gw_conics(3, 1, 1), 4874000);
  EXPECT_EQ(gw_conics(5, 1, 2), Integer("1021575491286"));
  EXPECT_EQ(gw_conics(10, 3, 3), Integer("527556832251612742800359424"));
}

TEST(GwConics, Normalization) {
  for (int k = 3; k <= 6; ++k) {
    const SpacePtr& m = conic_geometry(k)->conics.space;
    EXPECT_TRUE(conic_incidence_class(k, 0).is_zero()) << k;
    EXPECT_EQ(conic_incidence_class(k, 1), ChowClass::unit(m) * Integer(2)) << k;
  }
}

TEST(GwConics, DivisibleByUnitIndices) {
  for (int k = 3; k <= 7; ++k) {
    for (int a = 1; 3 * a <= k; ++a) {
      for (int b = a; a + 2 * b <= k; ++b) {
        const Incidence inc{a, b, k - a - b};
        EXPECT_NO_THROW(gw_to_curve_count(gw_conics(k, a, b), 2, inc)) << k << " " << a << " " << b;
      }
    }
  }
}

TEST(FactIdentity, AllAdmissibleTriples) {
  for (int k = 3; k <= 10; ++k) {
    for (int i = 1; i < k; ++i) {
      for (int j = 1; i + j < k; ++j) EXPECT_EQ(gw_lines(k, i, j), fact_identity_rhs(k, i, j)) << k << i << j;
    }
  }
  EXPECT_EQ(fact_identity_rhs(7, 2, 2), Integer("1579510449"));
  EXPECT_EQ(fact_identity_rhs(9, 3, 3), Integer("1919344441597"));
  EXPECT_THROW(fact_identity_rhs(5, 2, 3), InvalidIncidence);
}

TEST(FactIdentity, SchubertClassIdentity) {
  const auto r = checks::schubert_identity(10);
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.checked, 0);
}

TEST(Dimensions, Audit) {
  for (int k = 3; k <= 10; ++k) {
    const auto lines = line_geometry(k);
    EXPECT_EQ(lines->grassmannian.space->dimension(), 2 * k);
    EXPECT_EQ(lines->locus.degree(), k + 3);
  }
  for (int k = 3; k <= 6; ++k) {
    const auto conics = conic_geometry(k);
    EXPECT_EQ(conics->conics.space->dimension(), 3 * k + 2);
    EXPECT_EQ(conics->equations.rank(), 2 * k + 5);
    EXPECT_EQ(conics->locus.degree(), 2 * k + 5);
    EXPECT_EQ(conics->pointed_quadrics.rank(), 5);
    EXPECT_EQ(conics->forget.relative_dimension(), 1);
    for (int a = 1; a <= k - 2; ++a) EXPECT_EQ(conic_incidence_class(k, a).degree(), a - 1);
  }
}

TEST(CurveCount, Conversion) {
  EXPECT_EQ(gw_to_curve_count(gw_conics(3, 1, 1), 2, Incidence{1, 1, 1}), 609250);
  EXPECT_EQ(gw_to_curve_count(2875, 1, Incidence{1, 1, 1}), 2875);
  EXPECT_EQ(gw_to_curve_count(821654025830400, 2, Incidence{2, 2, 2}), 821654025830400);
  EXPECT_THROW(gw_to_curve_count(3, 2, Incidence{1, 2, 2}), DivisibilityError);
}

TEST(Evaluate, FillsResult) {
  const InvariantResult r = evaluate(InvariantRequest::conics(3, 1, 1));
  EXPECT_EQ(r.value, 4874000);
  ASSERT_TRUE(r.curve_count);
  EXPECT_EQ(*r.curve_count, 609250);
  EXPECT_GE(r.elapsed_ms, 0);
  EXPECT_EQ(evaluate(InvariantRequest::weighted_lines(1)).value, 2875);
  EXPECT_EQ(family_name(Family::GwConics), "gw-conics");
  EXPECT_EQ(parse_family("gw-lines"), Family::GwLines);
  EXPECT_FALSE(parse_family("cubics"));
}
