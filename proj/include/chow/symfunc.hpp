#pragma once
// Partitions, Schur-basis arithmetic in a truncating box, and symmetric
// polynomials in at most three formal roots.

#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chow/integer.hpp"

namespace chow {

/// Rectangle bounding the partitions that survive in the Chow ring of a
/// Grassmannian with quotient rank `rows` and ambient dimension `rows + cols`.
struct BoxShape {
  int rows = 0;
  int cols = 0;

  /// Checked constructor; both sides must be positive.
  static BoxShape of(int rows, int cols);

  int area() const { return rows * cols; }
  auto operator<=>(const BoxShape&) const = default;
};

class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  /// Trailing zeros are dropped. Negative or increasing parts throw InvalidInput.
  explicit Partition(std::vector<int> parts);

  static Partition row(int a);
  static Partition column(int n);

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int weight() const;
  /// Part i, or 0 past the end.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  bool fits(const BoxShape& box) const;
  bool contains(const Partition& inner) const;
  /// The partition whose Schubert class is Poincare dual inside `box`.
  Partition complement(const BoxShape& box) const;
  Partition conjugate() const;

  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// All partitions fitting `box`, ordered by weight and then lexicographically
/// descending within a weight.
std::vector<Partition> partitions_in_box(int rows, int cols);
inline std::vector<Partition> partitions_in_box(const BoxShape& box) {
  return partitions_in_box(box.rows, box.cols);
}

/// Homogeneous integer combination of Schur classes. Zero coefficients are
/// never stored.
class SchurVector {
 public:
  using Map = std::map<Partition, Integer>;

  SchurVector() = default;
  SchurVector(std::initializer_list<std::pair<const Partition, Integer>> init);

  static SchurVector unit() { return SchurVector{{Partition{}, Integer(1)}}; }

  void add(const Partition& p, const Integer& c);
  Integer coefficient(const Partition& p) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Common weight of the keys; nullopt when empty.
  std::optional<int> weight() const;

  Map::const_iterator begin() const { return terms_.begin(); }
  Map::const_iterator end() const { return terms_.end(); }

  SchurVector& operator+=(const SchurVector& other);
  SchurVector operator*(const Integer& c) const;
  bool operator==(const SchurVector&) const = default;

  std::string to_string() const;

 private:
  Map terms_;
};

/// v * h_a, dropping every partition that leaves the box.
SchurVector pieri_multiply(const SchurVector& v, int a, const BoxShape& box);

/// One signed product h_{i1} h_{i2} ... of the Jacobi-Trudi expansion.
/// `factors` is sorted descending and never contains h_0.
struct HMonomial {
  long coefficient = 0;
  std::vector<int> factors;
  bool operator==(const HMonomial&) const = default;
};

/// det(h_{lambda_i - i + j}) expanded into merged h-monomials. At most three parts.
std::vector<HMonomial> jacobi_trudi(const Partition& lambda);

/// sigma_lambda * sigma_mu in the Chow ring of the Grassmannian with this box.
/// Memoized; safe to call from several threads.
SchurVector schur_product(const Partition& lambda, const Partition& mu, const BoxShape& box);

/// Littlewood-Richardson coefficient c^nu_{lambda mu} by enumerating LR
/// tableaux of shape nu/lambda and content mu. Independent of schur_product.
Integer lr_oracle(const Partition& lambda, const Partition& mu, const Partition& nu);

/// Polynomial in q <= 3 commuting variables (the formal Chern roots).
class SymPoly {
 public:
  using Exponents = std::array<int, 3>;
  /// Lex-descending so the first entry is the leading term.
  using Map = std::map<Exponents, Integer, std::greater<>>;

  explicit SymPoly(int nvars = 1);

  static SymPoly constant(int nvars, const Integer& c);
  static SymPoly variable(int nvars, int i);
  /// e_i in the variables; zero for i > nvars.
  static SymPoly elementary(int nvars, int i);

  int nvars() const { return nvars_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest total degree, -1 for the zero polynomial.
  int degree() const;

  void add(const Exponents& e, const Integer& c);
  Integer coefficient(const Exponents& e) const;

  SymPoly operator+(const SymPoly& o) const;
  SymPoly operator-(const SymPoly& o) const;
  SymPoly operator*(const SymPoly& o) const;
  SymPoly operator*(const Integer& c) const;
  bool operator==(const SymPoly&) const = default;

  /// Drops every term of total degree above max_degree.
  SymPoly truncated(int max_degree) const;
  SymPoly homogeneous_component(int d) const;

  /// First transposition (i, j) of variables that changes the polynomial.
  std::optional<std::pair<int, int>> asymmetry() const;

  Integer evaluate(std::span<const Integer> values) const;

 private:
  int nvars_;
  Map terms_;
};

/// Polynomial in the elementary symmetric generators e_1..e_q. Exponent slot i
/// holds the power of e_{i+1}; the grading gives e_i weight i.
class ElementaryPoly {
 public:
  using Exponents = std::array<int, 3>;
  using Map = std::map<Exponents, Integer>;

  explicit ElementaryPoly(int nvars = 1) : nvars_(nvars) {}

  int nvars() const { return nvars_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Exponents& e, const Integer& c);
  Integer coefficient(const Exponents& e) const;

  static int weighted_degree(const Exponents& e) { return e[0] + 2 * e[1] + 3 * e[2]; }
  ElementaryPoly homogeneous_component(int d) const;

  /// Value at e_i = values[i-1].
  Integer evaluate(std::span<const Integer> values) const;
  bool operator==(const ElementaryPoly&) const = default;

 private:
  int nvars_;
  Map terms_;
};

/// Fundamental theorem of symmetric polynomials by leading-term subtraction.
/// Throws AsymmetryError naming a transposition that moves `p`.
ElementaryPoly reduce_to_elementary(const SymPoly& p);

/// Substitutes e_i by the elementary symmetric polynomials in the roots.
SymPoly expand_elementary(const ElementaryPoly& p);

}  // namespace chow
