#pragma once
// Chern-class calculus on bundles represented by rank and total Chern class.

#include "chow/chow_ring.hpp"
#include "chow/symfunc.hpp"

namespace chow {

class BundleClass {
 public:
  /// `total` must have constant term 1. Higher components are kept up to the
  /// space dimension even above the rank (formal differences need them).
  BundleClass(int rank, ChowClass total);

  static BundleClass trivial(const SpacePtr& space, int rank);
  /// Line bundle with first Chern class `c1` (codimension 1 or zero).
  static BundleClass line(const ChowClass& c1);

  int rank() const { return rank_; }
  const ChowClass& total() const { return total_; }
  const SpacePtr& space() const { return total_.space(); }
  ChowClass chern(int i) const { return total_.component(i); }
  ChowClass top_chern() const { return chern(rank_); }

  bool operator==(const BundleClass&) const = default;

 private:
  int rank_;
  ChowClass total_;
};

BundleClass direct_sum(const BundleClass& e, const BundleClass& f);
BundleClass dual(const BundleClass& e);
/// E tensor L where c_1(L) = t.
BundleClass tensor_by_line(const BundleClass& e, const ChowClass& t);
/// S^k E for rank(E) <= 3, through the universal polynomial in e_1..e_rank.
BundleClass symmetric_power(int k, const BundleClass& e);
/// total / sub: rank difference, Chern class c(total) c(sub)^{-1}. A kernel
/// is the same computation with the roles read the other way.
BundleClass quotient_chern(const BundleClass& total, const BundleClass& sub);

/// Total Chern class of S^k of a rank-`rank` bundle as a polynomial in its
/// Chern classes, truncated at weighted degree `max_degree`. Cached.
const ElementaryPoly& universal_symmetric_power(int k, int rank, int max_degree);

/// Evaluates an elementary-symmetric polynomial at e_i = chern[i-1].
ChowClass substitute_elementary(const ElementaryPoly& p, std::span<const ChowClass> chern,
                                const SpacePtr& space);

}  // namespace chow
