#pragma once
// Finite graded Chow rings with an explicit basis.
//
// A Space is either a root ring (a Grassmannian, or a point) or a projective
// bundle P(E) of rank-1 quotients over another Space. Basis elements are
// labels (partition, fiber exponents): sigma_lambda * zeta_1^e_1 * ... with
// e_l below the rank of the l-th bundle. Every class is kept in this normal
// form, so integration reads off the coefficient of the top label.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chow/integer.hpp"
#include "chow/linalg.hpp"
#include "chow/symfunc.hpp"

namespace chow {

class Space;
using SpacePtr = std::shared_ptr<const Space>;

struct Label {
  Partition partition;
  std::vector<int> exponents;  // one per tower level, innermost first

  int codim() const;
  std::string to_string() const;
  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;
};

/// Sparse coefficient vector over a space's basis indices, sorted by index.
using SparseVector = std::vector<std::pair<std::uint32_t, Integer>>;

/// An element of a space's Chow ring. Values may be inhomogeneous.
class ChowClass {
 public:
  explicit ChowClass(SpacePtr space);
  ChowClass(SpacePtr space, SparseVector terms);

  static ChowClass unit(SpacePtr space);
  static ChowClass basis(SpacePtr space, const Label& label);

  const SpacePtr& space() const { return space_; }
  const SparseVector& sparse() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(const Label& label) const;
  std::vector<std::pair<Label, Integer>> terms() const;

  /// Homogeneous part of codimension d.
  ChowClass component(int d) const;
  /// Codimension when homogeneous and nonzero.
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  /// Largest codimension present, -1 for zero.
  int max_codim() const;
  ChowClass truncated(int max_codim) const;

  ChowClass& operator+=(const ChowClass& o);
  ChowClass& operator-=(const ChowClass& o);
  ChowClass& operator*=(const Integer& c);
  ChowClass& operator*=(const ChowClass& o);

  friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
  friend ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }
  friend ChowClass operator-(ChowClass a) { return a *= Integer(-1); }
  friend ChowClass operator*(ChowClass a, const Integer& c) { return a *= c; }
  friend ChowClass operator*(const Integer& c, ChowClass a) { return a *= c; }
  friend ChowClass operator*(const ChowClass& a, const ChowClass& b);

  bool operator==(const ChowClass& o) const;

  std::string to_string() const;

 private:
  SpacePtr space_;
  SparseVector terms_;
};

ChowClass multiply(const ChowClass& x, const ChowClass& y);
ChowClass power(const ChowClass& x, int n);
/// Degree of a top-codimension class. Throws DegreeError otherwise.
Integer integrate(const ChowClass& x);
/// Re-labels a class of an ancestor space into `tower` (fiber exponents 0).
ChowClass lift(const ChowClass& x, const SpacePtr& tower);

class Space : public std::enable_shared_from_this<Space> {
 public:
  struct RootRing;
  struct Private;  // construction token

  /// Chow ring of the Grassmannian whose Schubert basis fills `box`, or of a
  /// point when no box is given.
  static SpacePtr root(std::optional<BoxShape> box);
  /// P(E) for a bundle E on `base` of rank chern.size(); chern[i] is c_{i+1}(E)
  /// and must be homogeneous of codimension i+1 (or zero).
  static SpacePtr projective(const SpacePtr& base, std::vector<ChowClass> chern);

  Space(Private, std::shared_ptr<const RootRing> root, SpacePtr base, int rank);

  int dimension() const { return dimension_; }
  int depth() const { return static_cast<int>(ranks_.size()); }
  const SpacePtr& base() const { return base_; }
  const std::optional<BoxShape>& box() const;
  /// Ranks of the bundles of every level, innermost first.
  const std::vector<int>& ranks() const { return ranks_; }
  /// c_1..c_r of the top-level bundle as classes of base(); empty for a root.
  const std::vector<ChowClass>& bundle_chern() const { return chern_; }

  std::size_t basis_size() const { return labels_.size(); }
  std::span<const std::uint32_t> basis(int codim) const;
  const Label& label(std::uint32_t index) const { return labels_[index]; }
  int codim(std::uint32_t index) const { return codims_[index]; }
  std::optional<std::uint32_t> find(const Label& label) const;
  std::uint32_t top_index() const { return top_index_; }

  /// True when `other` is this space or sits below it in the tower.
  bool has_ancestor(const Space& other) const;
  /// Structural equality: same root box, ranks and bundle data at every level.
  bool same_as(const Space& other) const;

  /// Ring generators: h_1..h_cols of the root, then the tautological class of
  /// each level (innermost first).
  std::size_t generator_count() const;
  ChowClass generator(std::size_t i) const;

  SparseVector multiply(const SparseVector& x, const SparseVector& y) const;
  /// Coefficient of the top basis element in x * y.
  Integer pair(const SparseVector& x, const SparseVector& y) const;

  /// [integral of beta_i * gamma_j] for beta of codim d and gamma of codim dim-d.
  /// Cached; throws RangeError outside 0..dim.
  const IntegerMatrix& gram_matrix(int d) const;

 private:
  void build_indexing();
  void build_normal_forms();
  std::uint32_t index_of(std::uint32_t root_id, std::uint32_t fiber_code) const {
    return fiber_code * root_count_ + root_id;
  }

  std::shared_ptr<const RootRing> root_;
  SpacePtr base_;
  std::vector<int> ranks_;
  std::vector<ChowClass> chern_;
  int dimension_ = 0;

  std::uint32_t root_count_ = 0;
  std::uint32_t fiber_count_ = 1;
  std::vector<Label> labels_;
  std::vector<int> codims_;
  std::vector<std::uint32_t> fiber_of_;   // fiber code of each index
  std::vector<std::uint32_t> unreduced_;  // fiber code -> unreduced monomial code
  std::vector<std::vector<std::uint32_t>> by_codim_;
  std::map<Label, std::uint32_t> index_;
  std::uint32_t top_index_ = 0;

  // Unreduced monomials have exponent l in [0, radix_l); codes are mixed radix.
  std::vector<std::uint32_t> radix_;
  std::uint32_t unreduced_count_ = 1;
  std::vector<std::int64_t> reduced_code_;  // unreduced code -> fiber code or -1
  std::vector<SparseVector> normal_form_;   // unreduced code -> normal form (empty if reduced)

  mutable std::mutex gram_mutex_;
  mutable std::map<int, std::unique_ptr<IntegerMatrix>> gram_cache_;

  friend ChowClass lift(const ChowClass& x, const SpacePtr& tower);
};

/// A map of spaces given by the pullbacks of the target's ring generators.
class Morphism {
 public:
  Morphism(SpacePtr source, SpacePtr target, std::vector<ChowClass> generator_images);

  /// The structure map of a projective bundle to its base.
  static Morphism projection(const SpacePtr& tower);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  const std::vector<ChowClass>& generator_images() const { return images_; }
  int relative_dimension() const { return source_->dimension() - target_->dimension(); }

  /// Images of the target's defining relations; all must be zero for a
  /// well-defined ring map.
  std::vector<ChowClass> relation_residuals() const;

 private:
  friend ChowClass pullback_apply(const Morphism& f, const ChowClass& x);
  struct Cache;

  SpacePtr source_;
  SpacePtr target_;
  std::vector<ChowClass> images_;
  std::shared_ptr<Cache> cache_;
};

ChowClass pullback_apply(const Morphism& f, const ChowClass& x);

/// Gysin pushforward through the projection formula: the unique y on the
/// target with integral(y * b) = integral(x * f^*(b)) for all basis b.
/// Throws ConsistencyError if the solution is not integral.
ChowClass pushforward_dual_basis(const Morphism& f, const ChowClass& x);

inline const IntegerMatrix& gram_matrix(const SpacePtr& s, int d) { return s->gram_matrix(d); }

}  // namespace chow
