#include "chow/spaces.hpp"

#include "chow/error.hpp"

namespace chow {

Grassmannian grassmannian(int q, int n) {
  if (q < 1 || q >= n) {
    throw InvalidInput("grassmannian needs 1 <= q < n, got q=" + std::to_string(q) +
                       " n=" + std::to_string(n));
  }
  if (q > 3) throw UnsupportedRank("grassmannian supports quotient rank at most 3");
  auto space = Space::root(BoxShape::of(q, n - q));
  ChowClass total(space);
  for (int i = 0; i <= q; ++i) {
    total += ChowClass::basis(space, Label{Partition::column(i), {}});
  }
  return Grassmannian{space, BundleClass(q, total), q, n};
}

SpacePtr point() { return Space::root(std::nullopt); }

ProjectiveBundle projective_bundle(const SpacePtr& base, const BundleClass& e) {
  if (e.space().get() != base.get() && !e.space()->same_as(*base)) {
    throw SpaceMismatch("projective_bundle: bundle does not live on the base");
  }
  if (e.rank() < 1) throw RankError("projective bundle of a rank-0 bundle");
  std::vector<ChowClass> chern;
  for (int i = 1; i <= e.rank(); ++i) chern.push_back(e.chern(i));
  SpacePtr space = Space::projective(base, std::move(chern));
  ChowClass zeta = space->generator(space->generator_count() - 1);
  return ProjectiveBundle{space, zeta, Morphism::projection(space), e};
}

BundleClass pull_to_total(const BundleClass& e, const SpacePtr& tower) {
  if (!tower->has_ancestor(*e.space())) {
    throw SpaceMismatch("pull_to_total: bundle's space is not in the tower");
  }
  return BundleClass(e.rank(), lift(e.total(), tower));
}

BundleClass tautological_sub_line(const ProjectiveBundle& p) { return BundleClass::line(-p.zeta); }

}  // namespace chow
