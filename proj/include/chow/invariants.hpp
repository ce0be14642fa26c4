#pragma once
// Curve counts on Calabi-Yau hypersurfaces as intersection numbers:
// weighted lines on the threefolds in P(2,1^4) and P(4,1^4), and the
// three-point Gromov-Witten invariants n^a_b(d) for lines (d = 1) and conics
// (d = 2) on degree k+2 hypersurfaces in P^{k+1}.

#include <memory>
#include <optional>
#include <string>

#include "chow/spaces.hpp"

namespace chow {

enum class Family { WeightedLines, GwLines, GwConics };

std::string family_name(Family f);
std::optional<Family> parse_family(const std::string& name);

struct Incidence {
  int a = 1;
  int b = 1;
  int c = 1;

  Incidence sorted() const;
  /// Number of entries equal to 1.
  int unit_count() const;
  auto operator<=>(const Incidence&) const = default;
};

/// k is the Calabi-Yau dimension for the Gromov-Witten families and the weight
/// of the special coordinate for weighted lines (1 means the plain quintic).
struct InvariantRequest {
  Family family = Family::GwLines;
  int k = 3;
  std::optional<Incidence> incidence;

  static InvariantRequest weighted_lines(int weight);
  static InvariantRequest lines(int k, int a, int b);
  static InvariantRequest conics(int k, int a, int b);

  /// Throws InvalidWeight / InvalidIncidence / InvalidInput.
  void validate() const;
  int degree() const { return family == Family::GwConics ? 2 : 1; }
};

struct InvariantResult {
  InvariantRequest request;
  Integer value;
  std::optional<Integer> curve_count;
  double elapsed_ms = 0;
};

inline constexpr int kMinDimension = 3;
inline constexpr int kMaxDimension = 10;

Integer lines_on_quintic();
/// Weighted lines on the weight-(k+4) hypersurface in P(k,1^4); k in {2, 4}.
Integer weighted_lines_count(int k);
/// n^a_b(1) with c = k - a - b.
Integer gw_lines(int k, int a, int b);
/// Right-hand side of n^i_j(1) = sum_{l<j} n^1_{i+l}(1) - sum_{1<=l<j} n^1_l(1).
Integer fact_identity_rhs(int k, int i, int j);
/// n^a_b(2) with c = k - a - b.
Integer gw_conics(int k, int a, int b);
/// Divides out one factor of d per incidence index equal to 1.
Integer gw_to_curve_count(const Integer& value, int d, const Incidence& incidence);

InvariantResult evaluate(const InvariantRequest& request);

/// Lines on X_{k+2} in P^{k+1}: G(2, k+2) and c_{k+3}(S^{k+2} Q).
struct LineGeometry {
  Grassmannian grassmannian;
  ChowClass locus;
};
std::shared_ptr<const LineGeometry> line_geometry(int k);

/// Conics on X_{k+2}: the space M = P(S^2 Q^dual) over G(3, k+2), the class
/// c_{2k+5}(F) of conics on X, pointed planes H = P(Q), pointed conics
/// M' = P(W^dual) and the forgetful map f: M' -> M.
struct ConicGeometry {
  Grassmannian grassmannian;
  ProjectiveBundle conics;
  BundleClass equations;  // F = S^{k+2}Q / (S^k Q (x) O(-1)), rank 2k+5
  ChowClass locus;        // c_{2k+5}(F)
  ProjectiveBundle pointed_planes;
  BundleClass pointed_quadrics;  // W = ker(S^2 Q_H -> O(2)_H), rank 5
  ProjectiveBundle pointed_conics;
  Morphism forget;
  ChowClass hyperplane;  // h on M'
};
std::shared_ptr<const ConicGeometry> conic_geometry(int k);

/// f_*(h^a) on M: conics meeting a general codimension-a linear space (times 2 when a = 1).
const ChowClass& conic_incidence_class(int k, int a);

}  // namespace chow
