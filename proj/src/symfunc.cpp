#include "chow/symfunc.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "chow/error.hpp"

namespace chow {

// ---------------------------------------------------------------------------
// BoxShape / Partition

BoxShape BoxShape::of(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw InvalidInput("box shape needs positive sides, got " + std::to_string(rows) + "x" +
                       std::to_string(cols));
  }
  return BoxShape{rows, cols};
}

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0 || (i > 0 && parts_[i] > parts_[i - 1])) {
      throw InvalidInput("not a partition: " + to_string());
    }
  }
}

Partition Partition::row(int a) {
  if (a < 0) throw InvalidInput("negative row length");
  return a == 0 ? Partition{} : Partition{a};
}

Partition Partition::column(int n) {
  if (n < 0) throw InvalidInput("negative column length");
  return Partition(std::vector<int>(static_cast<std::size_t>(n), 1));
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool Partition::fits(const BoxShape& box) const {
  return static_cast<int>(parts_.size()) <= box.rows && (parts_.empty() || parts_[0] <= box.cols);
}

bool Partition::contains(const Partition& inner) const {
  if (inner.length() > length()) return false;
  for (std::size_t i = 0; i < inner.length(); ++i) {
    if (inner.parts_[i] > parts_[i]) return false;
  }
  return true;
}

Partition Partition::complement(const BoxShape& box) const {
  if (!fits(box)) throw InvalidInput(to_string() + " does not fit the box");
  std::vector<int> out(static_cast<std::size_t>(box.rows));
  for (int i = 0; i < box.rows; ++i) {
    out[static_cast<std::size_t>(i)] = box.cols - (*this)[static_cast<std::size_t>(box.rows - 1 - i)];
  }
  return Partition(std::move(out));
}

Partition Partition::conjugate() const {
  std::vector<int> out;
  if (parts_.empty()) return {};
  for (int c = 1; c <= parts_[0]; ++c) {
    int count = 0;
    for (int p : parts_) count += (p >= c) ? 1 : 0;
    out.push_back(count);
  }
  return Partition(std::move(out));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

namespace {

void box_partitions(int rows, int cols, int remaining, std::vector<int>& prefix,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  if (static_cast<int>(prefix.size()) == rows) return;
  int cap = prefix.empty() ? cols : prefix.back();
  for (int p = std::min(cap, remaining); p >= 1; --p) {
    prefix.push_back(p);
    box_partitions(rows, cols, remaining - p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_in_box(int rows, int cols) {
  std::vector<Partition> out;
  for (int w = 0; w <= rows * cols; ++w) {
    std::vector<std::vector<int>> raw;
    std::vector<int> prefix;
    box_partitions(rows, cols, w, prefix, raw);
    for (auto& r : raw) out.emplace_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SchurVector

SchurVector::SchurVector(std::initializer_list<std::pair<const Partition, Integer>> init) {
  for (const auto& [p, c] : init) add(p, c);
}

void SchurVector::add(const Partition& p, const Integer& c) {
  if (c == 0) return;
  if (auto w = weight(); w && *w != p.weight()) {
    throw InvalidInput("SchurVector must stay homogeneous");
  }
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer SchurVector::coefficient(const Partition& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::optional<int> SchurVector::weight() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.weight();
}

SchurVector& SchurVector::operator+=(const SchurVector& other) {
  for (const auto& [p, c] : other) add(p, c);
  return *this;
}

SchurVector SchurVector::operator*(const Integer& c) const {
  SchurVector out;
  if (c == 0) return out;
  for (const auto& [p, v] : terms_) out.terms_.emplace(p, v * c);
  return out;
}

std::string SchurVector::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [p, c] : terms_) {
    os << (first ? "" : ", ") << p.to_string() << ':' << c.get_str();
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// Pieri

namespace {

// Every mu containing lambda with mu/lambda a horizontal strip of size a.
void horizontal_strips(const Partition& lambda, int a, const BoxShape& box, std::size_t row,
                       std::vector<int>& mu, const Integer& coeff, SchurVector& out) {
  if (a == 0) {
    std::vector<int> full = mu;
    for (std::size_t i = row; i < lambda.length(); ++i) full.push_back(lambda[i]);
    out.add(Partition(std::move(full)), coeff);
    return;
  }
  if (static_cast<int>(row) >= box.rows || row > lambda.length()) return;
  int lo = lambda[row];
  int hi = row == 0 ? box.cols : lambda[row - 1];
  for (int v = lo; v <= hi && v - lo <= a; ++v) {
    mu.push_back(v);
    horizontal_strips(lambda, a - (v - lo), box, row + 1, mu, coeff, out);
    mu.pop_back();
  }
}

}  // namespace

SchurVector pieri_multiply(const SchurVector& v, int a, const BoxShape& box) {
  if (a < 0) throw InvalidInput("pieri_multiply needs a >= 0");
  SchurVector out;
  for (const auto& [lambda, c] : v) {
    if (!lambda.fits(box)) {
      throw InvalidInput("partition " + lambda.to_string() + " does not fit the box");
    }
    std::vector<int> mu;
    horizontal_strips(lambda, a, box, 0, mu, c, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi-Trudi

std::vector<HMonomial> jacobi_trudi(const Partition& lambda) {
  const int n = static_cast<int>(lambda.length());
  if (n > 3) {
    throw UnsupportedRank("jacobi_trudi supports at most 3 parts, got " + lambda.to_string());
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::vector<int>, long> merged;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    std::vector<int> factors;
    bool vanishes = false;
    for (int i = 0; i < n; ++i) {
      int index = lambda[static_cast<std::size_t>(i)] - i + perm[static_cast<std::size_t>(i)];
      if (index < 0) {
        vanishes = true;
        break;
      }
      if (index > 0) factors.push_back(index);
    }
    if (vanishes) continue;
    std::sort(factors.rbegin(), factors.rend());
    merged[factors] += (inversions % 2 == 0) ? 1 : -1;
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<HMonomial> out;
  // Largest factors first reads like the determinant's diagonal.
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    if (it->second != 0) out.push_back({it->second, it->first});
  }
  return out;
}

// ---------------------------------------------------------------------------
// schur_product with a process-wide memo

namespace {

using ProductKey = std::tuple<Partition, Partition, BoxShape>;

struct ProductCache {
  std::shared_mutex mutex;
  std::map<ProductKey, SchurVector> entries;
};

ProductCache& product_cache() {
  static ProductCache cache;
  return cache;
}

SchurVector compute_schur_product(const Partition& lambda, const Partition& mu,
                                  const BoxShape& box) {
  SchurVector out;
  for (const auto& term : jacobi_trudi(mu)) {
    SchurVector v{{lambda, Integer(1)}};
    for (int f : term.factors) {
      v = pieri_multiply(v, f, box);
      if (v.empty()) break;
    }
    out += v * Integer(term.coefficient);
  }
  return out;
}

}  // namespace

SchurVector schur_product(const Partition& lambda, const Partition& mu, const BoxShape& box) {
  if (!lambda.fits(box) || !mu.fits(box)) {
    throw InvalidInput("schur_product: " + lambda.to_string() + " or " + mu.to_string() +
                       " does not fit the box");
  }
  if (lambda.weight() + mu.weight() > box.area()) return {};
  auto& cache = product_cache();
  ProductKey key{lambda, mu, box};
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;
  }
  SchurVector result = compute_schur_product(lambda, mu, box);
  std::unique_lock lock(cache.mutex);
  return cache.entries.try_emplace(std::move(key), std::move(result)).first->second;
}

// ---------------------------------------------------------------------------
// Littlewood-Richardson tableau enumeration

namespace {

struct LrSearch {
  const Partition& lambda;
  const Partition& mu;
  const Partition& nu;
  std::vector<std::pair<int, int>> cells;  // reverse reading order
  std::vector<std::vector<int>> filling;   // filling[row][col], 0 = outside skew shape
  std::vector<int> used;                   // used[v] for v = 1..len(mu)
  Integer count = 0;

  LrSearch(const Partition& l, const Partition& m, const Partition& n)
      : lambda(l), mu(m), nu(n), used(m.length() + 1, 0) {
    filling.resize(nu.length());
    for (std::size_t i = 0; i < nu.length(); ++i) {
      filling[i].assign(static_cast<std::size_t>(nu[i]), 0);
      for (int j = nu[i] - 1; j >= lambda[i]; --j) cells.emplace_back(static_cast<int>(i), j);
    }
  }

  void run(std::size_t pos) {
    if (pos == cells.size()) {
      ++count;
      return;
    }
    auto [i, j] = cells[pos];
    const auto ui = static_cast<std::size_t>(i);
    const auto uj = static_cast<std::size_t>(j);
    int hi = static_cast<int>(mu.length());
    if (j + 1 < nu[ui]) hi = std::min(hi, filling[ui][uj + 1]);  // rows weakly increase
    int lo = 1;
    if (i > 0 && j >= lambda[ui - 1]) lo = filling[ui - 1][uj] + 1;  // columns strictly increase
    for (int v = lo; v <= hi; ++v) {
      const auto uv = static_cast<std::size_t>(v);
      if (used[uv] >= mu[uv - 1]) continue;
      if (v > 1 && used[uv] + 1 > used[uv - 1]) continue;  // lattice word
      ++used[uv];
      filling[ui][uj] = v;
      run(pos + 1);
      filling[ui][uj] = 0;
      --used[uv];
    }
  }
};

}  // namespace

Integer lr_oracle(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (nu.weight() != lambda.weight() + mu.weight()) return 0;
  if (!nu.contains(lambda) || !nu.contains(mu)) return 0;
  LrSearch search(lambda, mu, nu);
  search.run(0);
  return search.count;
}

// ---------------------------------------------------------------------------
// SymPoly

namespace {

void check_nvars(int nvars) {
  if (nvars < 1 || nvars > 3) {
    throw UnsupportedRank("symmetric polynomials support 1 to 3 variables, got " +
                          std::to_string(nvars));
  }
}

int total_degree(const SymPoly::Exponents& e) { return e[0] + e[1] + e[2]; }

}  // namespace

SymPoly::SymPoly(int nvars) : nvars_(nvars) { check_nvars(nvars); }

SymPoly SymPoly::constant(int nvars, const Integer& c) {
  SymPoly p(nvars);
  p.add({0, 0, 0}, c);
  return p;
}

SymPoly SymPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw InvalidInput("variable index out of range");
  SymPoly p(nvars);
  Exponents e{0, 0, 0};
  e[static_cast<std::size_t>(i)] = 1;
  p.add(e, 1);
  return p;
}

SymPoly SymPoly::elementary(int nvars, int i) {
  SymPoly p(nvars);
  if (i < 0 || i > nvars) return p;
  for (unsigned mask = 0; mask < (1u << nvars); ++mask) {
    if (std::popcount(mask) != i) continue;
    Exponents e{0, 0, 0};
    for (int v = 0; v < nvars; ++v)
      if (mask & (1u << v)) e[static_cast<std::size_t>(v)] = 1;
    p.add(e, 1);
  }
  return p;
}

int SymPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

void SymPoly::add(const Exponents& e, const Integer& c) {
  if (c == 0) return;
  for (int v = nvars_; v < 3; ++v) {
    if (e[static_cast<std::size_t>(v)] != 0) throw InvalidInput("exponent on a missing variable");
  }
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer SymPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
  SymPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add(e, c);
  return out;
}

SymPoly SymPoly::operator-(const SymPoly& o) const {
  SymPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add(e, -c);
  return out;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
  if (nvars_ != o.nvars_) throw InvalidInput("variable count mismatch");
  SymPoly out(nvars_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      out.add({a[0] + b[0], a[1] + b[1], a[2] + b[2]}, ca * cb);
    }
  }
  return out;
}

SymPoly SymPoly::operator*(const Integer& c) const {
  SymPoly out(nvars_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

SymPoly SymPoly::truncated(int max_degree) const {
  SymPoly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) <= max_degree) out.terms_.emplace(e, c);
  return out;
}

SymPoly SymPoly::homogeneous_component(int d) const {
  SymPoly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) out.terms_.emplace(e, c);
  return out;
}

std::optional<std::pair<int, int>> SymPoly::asymmetry() const {
  for (int i = 0; i < nvars_; ++i) {
    for (int j = i + 1; j < nvars_; ++j) {
      for (const auto& [e, c] : terms_) {
        Exponents swapped = e;
        std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(j)]);
        if (coefficient(swapped) != c) return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

Integer SymPoly::evaluate(std::span<const Integer> values) const {
  if (static_cast<int>(values.size()) < nvars_) throw InvalidInput("too few values");
  Integer total = 0;
  for (const auto& [e, c] : terms_) {
    Integer term = c;
    for (int v = 0; v < nvars_; ++v) {
      Integer power;
      mpz_pow_ui(power.get_mpz_t(), values[static_cast<std::size_t>(v)].get_mpz_t(),
                 static_cast<unsigned long>(e[static_cast<std::size_t>(v)]));
      term *= power;
    }
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// ElementaryPoly

void ElementaryPoly::add(const Exponents& e, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer ElementaryPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

ElementaryPoly ElementaryPoly::homogeneous_component(int d) const {
  ElementaryPoly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (weighted_degree(e) == d) out.terms_.emplace(e, c);
  return out;
}

Integer ElementaryPoly::evaluate(std::span<const Integer> values) const {
  if (static_cast<int>(values.size()) < nvars_) throw InvalidInput("too few values");
  Integer total = 0;
  for (const auto& [e, c] : terms_) {
    Integer term = c;
    for (int v = 0; v < nvars_; ++v) {
      Integer power;
      mpz_pow_ui(power.get_mpz_t(), values[static_cast<std::size_t>(v)].get_mpz_t(),
                 static_cast<unsigned long>(e[static_cast<std::size_t>(v)]));
      term *= power;
    }
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Fundamental theorem

namespace {

class ElementaryExpander {
 public:
  explicit ElementaryExpander(int nvars) : nvars_(nvars) {}

  const SymPoly& monomial(const ElementaryPoly::Exponents& e) {
    if (auto it = cache_.find(e); it != cache_.end()) return it->second;
    SymPoly value = SymPoly::constant(nvars_, 1);
    // Build from a cached neighbour to keep each step one multiplication.
    for (std::size_t i = 0; i < 3; ++i) {
      if (e[i] > 0) {
        auto prev = e;
        --prev[i];
        value = monomial(prev) * SymPoly::elementary(nvars_, static_cast<int>(i) + 1);
        break;
      }
    }
    return cache_.emplace(e, std::move(value)).first->second;
  }

 private:
  int nvars_;
  std::map<ElementaryPoly::Exponents, SymPoly> cache_;
};

}  // namespace

ElementaryPoly reduce_to_elementary(const SymPoly& p) {
  if (auto bad = p.asymmetry()) {
    throw AsymmetryError("polynomial is not symmetric under the transposition of variables " +
                         std::to_string(bad->first) + " and " + std::to_string(bad->second));
  }
  const int q = p.nvars();
  ElementaryExpander expander(q);
  ElementaryPoly out(q);
  SymPoly rest = p;
  while (!rest.is_zero()) {
    const auto [lead, c] = *rest.terms().begin();
    ElementaryPoly::Exponents e{0, 0, 0};
    for (int i = 0; i < q; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      int next = (i + 1 < q) ? lead[ui + 1] : 0;
      if (lead[ui] < next) {
        throw ConsistencyError("leading exponent of a symmetric polynomial is not dominant");
      }
      e[ui] = lead[ui] - next;
    }
    out.add(e, c);
    const Integer coeff = c;
    for (const auto& [m, v] : expander.monomial(e).terms()) rest.add(m, -coeff * v);
  }
  return out;
}

SymPoly expand_elementary(const ElementaryPoly& p) {
  ElementaryExpander expander(p.nvars());
  SymPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) out = out + expander.monomial(e) * c;
  return out;
}

}  // namespace chow
