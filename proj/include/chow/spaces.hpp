#pragma once
// Constructors for the varieties in scope: Grassmannians of quotients with
// their universal quotient bundle, and projective bundles of rank-1 quotients.

#include "chow/bundle.hpp"
#include "chow/chow_ring.hpp"

namespace chow {

struct Grassmannian {
  SpacePtr space;
  BundleClass quotient;  // universal rank-q quotient Q, c_i(Q) = sigma_{1^i}
  int q = 0;
  int n = 0;
};

/// G(q, n): rank-q quotients of an n-dimensional space. Requires 1 <= q < n, q <= 3.
Grassmannian grassmannian(int q, int n);

/// The point, as a root space (useful for plain projective spaces).
SpacePtr point();

struct ProjectiveBundle {
  SpacePtr space;
  ChowClass zeta;         // c_1 of the universal rank-1 quotient O(1)
  Morphism projection;    // to the base
  BundleClass bundle;     // E, on the base
};

/// P(E): rank-1 quotients of E. zeta satisfies
/// zeta^r - c_1(E) zeta^{r-1} + ... + (-1)^r c_r(E) = 0.
ProjectiveBundle projective_bundle(const SpacePtr& base, const BundleClass& e);

/// Re-expresses a bundle from any level below `tower` on the tower itself.
BundleClass pull_to_total(const BundleClass& e, const SpacePtr& tower);

/// O(-1), the kernel-side line with c_1 = -zeta; it sits inside E^dual.
BundleClass tautological_sub_line(const ProjectiveBundle& p);

}  // namespace chow
