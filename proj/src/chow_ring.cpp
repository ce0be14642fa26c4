#include "chow/chow_ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "chow/error.hpp"

namespace chow {

// ---------------------------------------------------------------------------
// Root ring: Schubert basis of a Grassmannian (or the point) with its full
// multiplication table.

struct Space::RootRing {
  std::optional<BoxShape> box;
  std::vector<Partition> parts;
  std::map<Partition, std::uint32_t> index;
  std::vector<int> weight;
  std::vector<std::uint32_t> dual;
  std::uint32_t full = 0;
  int dimension = 0;
  // products[p * N + q] lists (s, c^s_{pq}).
  std::vector<std::vector<std::pair<std::uint32_t, long>>> products;

  explicit RootRing(std::optional<BoxShape> b) : box(b) {
    parts = box ? partitions_in_box(*box) : std::vector<Partition>{Partition{}};
    const auto n = static_cast<std::uint32_t>(parts.size());
    for (std::uint32_t i = 0; i < n; ++i) {
      index.emplace(parts[i], i);
      weight.push_back(parts[i].weight());
    }
    dimension = box ? box->area() : 0;
    full = n - 1;
    dual.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      dual[i] = box ? index.at(parts[i].complement(*box)) : 0;
    }
    products.resize(static_cast<std::size_t>(n) * n);
    if (!box) {
      products[0] = {{0, 1}};
      return;
    }
    for (std::uint32_t p = 0; p < n; ++p) {
      for (std::uint32_t q = p; q < n; ++q) {
        if (weight[p] + weight[q] > dimension) continue;
        std::vector<std::pair<std::uint32_t, long>> row;
        for (const auto& [nu, c] : schur_product(parts[p], parts[q], *box)) {
          if (!c.fits_slong_p()) throw ConsistencyError("Littlewood-Richardson coefficient overflow");
          row.emplace_back(index.at(nu), c.get_si());
        }
        std::sort(row.begin(), row.end());
        products[static_cast<std::size_t>(q) * n + p] = row;
        products[static_cast<std::size_t>(p) * n + q] = std::move(row);
      }
    }
  }

  const std::vector<std::pair<std::uint32_t, long>>& product(std::uint32_t p, std::uint32_t q) const {
    return products[static_cast<std::size_t>(p) * parts.size() + q];
  }
};

struct Space::Private {};

namespace {

using Dense = std::vector<Integer>;

SparseVector compress(Dense& dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) out.emplace_back(static_cast<std::uint32_t>(i), std::move(dense[i]));
  }
  return out;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (a.get() != b.get() && !a->same_as(*b)) {
    throw SpaceMismatch(std::string(what) + ": classes live on different spaces");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Label

int Label::codim() const {
  return partition.weight() + std::accumulate(exponents.begin(), exponents.end(), 0);
}

std::string Label::to_string() const {
  std::ostringstream os;
  os << "s" << partition.to_string();
  for (std::size_t l = 0; l < exponents.size(); ++l) {
    if (exponents[l] != 0) os << "*z" << l + 1 << "^" << exponents[l];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Space construction

SpacePtr Space::root(std::optional<BoxShape> box) {
  auto ring = std::make_shared<const RootRing>(box);
  return std::make_shared<const Space>(Private{}, std::move(ring), nullptr, 0);
}

SpacePtr Space::projective(const SpacePtr& base, std::vector<ChowClass> chern) {
  if (!base) throw InvalidInput("projective bundle needs a base space");
  if (chern.empty()) throw RankError("projective bundle of a rank-0 bundle");
  for (std::size_t i = 0; i < chern.size(); ++i) {
    require_same_space(chern[i].space(), base, "projective bundle");
    auto d = chern[i].degree();
    if (d && *d != static_cast<int>(i) + 1) {
      throw DegreeError("c_" + std::to_string(i + 1) + " must have codimension " +
                        std::to_string(i + 1));
    }
  }
  auto space = std::make_shared<Space>(Private{}, base->root_, base, static_cast<int>(chern.size()));
  space->chern_ = std::move(chern);
  space->build_normal_forms();
  return space;
}

Space::Space(Private, std::shared_ptr<const RootRing> root, SpacePtr base, int rank)
    : root_(std::move(root)), base_(std::move(base)) {
  if (base_) {
    ranks_ = base_->ranks_;
    ranks_.push_back(rank);
  }
  build_indexing();
}

const std::optional<BoxShape>& Space::box() const { return root_->box; }

void Space::build_indexing() {
  root_count_ = static_cast<std::uint32_t>(root_->parts.size());
  fiber_count_ = 1;
  dimension_ = root_->dimension;
  radix_.clear();
  unreduced_count_ = 1;
  for (int r : ranks_) {
    fiber_count_ *= static_cast<std::uint32_t>(r);
    dimension_ += r - 1;
    radix_.push_back(static_cast<std::uint32_t>(std::max(2 * r - 1, 2)));
    unreduced_count_ *= radix_.back();
  }
  const std::size_t depth = ranks_.size();
  const std::size_t size = static_cast<std::size_t>(fiber_count_) * root_count_;
  labels_.resize(size);
  codims_.resize(size);
  fiber_of_.resize(size);
  unreduced_.resize(fiber_count_);
  by_codim_.assign(static_cast<std::size_t>(dimension_) + 1, {});

  for (std::uint32_t fc = 0; fc < fiber_count_; ++fc) {
    std::vector<int> exps(depth);
    std::uint32_t rest = fc;
    std::uint32_t code = 0;
    std::uint32_t weight = 1;
    for (std::size_t l = 0; l < depth; ++l) {
      exps[l] = static_cast<int>(rest % static_cast<std::uint32_t>(ranks_[l]));
      rest /= static_cast<std::uint32_t>(ranks_[l]);
      code += static_cast<std::uint32_t>(exps[l]) * weight;
      weight *= radix_[l];
    }
    unreduced_[fc] = code;
    const int fiber_codim = std::accumulate(exps.begin(), exps.end(), 0);
    for (std::uint32_t p = 0; p < root_count_; ++p) {
      const std::uint32_t idx = index_of(p, fc);
      labels_[idx] = Label{root_->parts[p], exps};
      codims_[idx] = root_->weight[p] + fiber_codim;
      fiber_of_[idx] = fc;
      by_codim_[static_cast<std::size_t>(codims_[idx])].push_back(idx);
      index_.emplace(labels_[idx], idx);
    }
  }
  top_index_ = index_of(root_->full, fiber_count_ - 1);

  reduced_code_.assign(unreduced_count_, -1);
  for (std::uint32_t fc = 0; fc < fiber_count_; ++fc) reduced_code_[unreduced_[fc]] = fc;
  normal_form_.assign(unreduced_count_, {});
}

void Space::build_normal_forms() {
  const Space& b = *base_;
  const int rank = ranks_.back();
  const std::size_t n = root_count_;
  const std::size_t base_size = b.basis_size();
  const std::uint32_t base_fibers = b.fiber_count_;
  const std::size_t size = basis_size();
  const auto& ring = *root_;

  // zeta^rank * (base fiber monomial b) via the Grothendieck relation
  // zeta^r = c_1 zeta^{r-1} - c_2 zeta^{r-2} + ...
  std::vector<SparseVector> top_relation(base_fibers);
  for (std::uint32_t fb = 0; fb < base_fibers; ++fb) {
    Dense acc(size);
    SparseVector monomial{{static_cast<std::uint32_t>(fb * n), Integer(1)}};
    for (int i = 1; i <= rank; ++i) {
      const auto& ci = chern_[static_cast<std::size_t>(i - 1)];
      if (ci.is_zero()) continue;
      const long sign = (i % 2 == 1) ? 1 : -1;
      const std::size_t shift = static_cast<std::size_t>(rank - i) * base_size;
      for (const auto& [j, v] : b.multiply(monomial, ci.sparse())) add_scaled(acc[j + shift], v, sign);
    }
    top_relation[fb] = compress(acc);
  }

  Integer scratch;
  auto root_multiply_into = [&](Dense& out, std::uint32_t p, const Integer& coeff,
                                const SparseVector& y) {
    for (const auto& [j, v] : y) {
      const std::uint32_t q = j % root_count_;
      const std::size_t fiber_offset = static_cast<std::size_t>(j - q);
      for (const auto& [s, c] : ring.product(p, q)) add_product(out[fiber_offset + s], coeff, v, c, scratch);
    }
  };

  auto times_zeta = [&](const SparseVector& x) {
    Dense out(size);
    for (const auto& [idx, v] : x) {
      const std::size_t t = idx / base_size;
      const std::size_t lower = idx % base_size;
      if (static_cast<int>(t) + 1 < rank) {
        out[idx + base_size] += v;
      } else {
        const auto p = static_cast<std::uint32_t>(lower % n);
        const auto fb = static_cast<std::uint32_t>(lower / n);
        root_multiply_into(out, p, v, top_relation[fb]);
      }
    }
    return compress(out);
  };

  // Normal forms of zeta_top^t * (reduced base fiber monomial).
  const std::uint32_t top_radix = radix_.back();
  std::vector<std::vector<SparseVector>> top_powers(base_fibers, std::vector<SparseVector>(top_radix));
  for (std::uint32_t fb = 0; fb < base_fibers; ++fb) {
    for (std::uint32_t t = 0; t < top_radix; ++t) {
      if (static_cast<int>(t) < rank) {
        top_powers[fb][t] = {{static_cast<std::uint32_t>(fb * n + t * base_size), Integer(1)}};
      } else {
        top_powers[fb][t] = times_zeta(top_powers[fb][t - 1]);
      }
    }
  }

  const std::uint32_t lower_count = b.unreduced_count_;
  for (std::uint32_t u = 0; u < unreduced_count_; ++u) {
    if (reduced_code_[u] >= 0) continue;
    const std::uint32_t lower = u % lower_count;
    const std::uint32_t t = u / lower_count;
    if (b.reduced_code_[lower] >= 0) {
      normal_form_[u] = top_powers[static_cast<std::uint32_t>(b.reduced_code_[lower])][t];
      continue;
    }
    Dense acc(size);
    for (const auto& [j, v] : b.normal_form_[lower]) {
      const auto p = static_cast<std::uint32_t>(j % n);
      const auto fb = static_cast<std::uint32_t>(j / n);
      root_multiply_into(acc, p, v, top_powers[fb][t]);
    }
    normal_form_[u] = compress(acc);
  }
}

std::span<const std::uint32_t> Space::basis(int codim) const {
  if (codim < 0 || codim > dimension_) return {};
  return by_codim_[static_cast<std::size_t>(codim)];
}

std::optional<std::uint32_t> Space::find(const Label& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Space::has_ancestor(const Space& other) const {
  for (const Space* s = this; s != nullptr; s = s->base_.get()) {
    if (s == &other || s->same_as(other)) return true;
  }
  return false;
}

bool Space::same_as(const Space& other) const {
  if (this == &other) return true;
  if (root_->box != other.root_->box || ranks_ != other.ranks_) return false;
  if (!base_) return true;
  if (!base_->same_as(*other.base_)) return false;
  for (std::size_t i = 0; i < chern_.size(); ++i) {
    if (chern_[i].sparse() != other.chern_[i].sparse()) return false;
  }
  return true;
}

std::size_t Space::generator_count() const {
  const std::size_t cols = root_->box ? static_cast<std::size_t>(root_->box->cols) : 0;
  return cols + ranks_.size();
}

ChowClass Space::generator(std::size_t i) const {
  auto self = shared_from_this();
  const std::size_t cols = root_->box ? static_cast<std::size_t>(root_->box->cols) : 0;
  if (i < cols) {
    return ChowClass::basis(self, Label{Partition::row(static_cast<int>(i) + 1),
                                        std::vector<int>(ranks_.size(), 0)});
  }
  const std::size_t level = i - cols;
  if (level >= ranks_.size()) throw RangeError("generator index out of range");
  std::uint32_t code = 1;
  for (std::size_t l = 0; l < level; ++l) code *= radix_[l];
  if (reduced_code_[code] >= 0) {
    return ChowClass(self, {{index_of(0, static_cast<std::uint32_t>(reduced_code_[code])), Integer(1)}});
  }
  return ChowClass(self, normal_form_[code]);
}

// ---------------------------------------------------------------------------
// Multiplication

SparseVector Space::multiply(const SparseVector& x, const SparseVector& y) const {
  if (x.empty() || y.empty()) return {};
  const auto& ring = *root_;
  const std::uint32_t n = root_count_;
  std::vector<Dense> acc(unreduced_count_);
  Integer scratch;
  for (const auto& [ix, vx] : x) {
    const std::uint32_t fx = fiber_of_[ix];
    const std::uint32_t px = ix - fx * n;
    for (const auto& [iy, vy] : y) {
      if (codims_[ix] + codims_[iy] > dimension_) continue;
      const std::uint32_t fy = fiber_of_[iy];
      const auto& row = ring.product(px, iy - fy * n);
      if (row.empty()) continue;
      Dense& a = acc[unreduced_[fx] + unreduced_[fy]];
      if (a.empty()) a.resize(n);
      mpz_mul(scratch.get_mpz_t(), vx.get_mpz_t(), vy.get_mpz_t());
      for (const auto& [s, c] : row) add_scaled(a[s], scratch, c);
    }
  }

  Dense out(basis_size());
  for (std::uint32_t u = 0; u < unreduced_count_; ++u) {
    Dense& a = acc[u];
    if (a.empty()) continue;
    if (reduced_code_[u] >= 0) {
      const std::size_t offset = static_cast<std::size_t>(reduced_code_[u]) * n;
      for (std::uint32_t s = 0; s < n; ++s) {
        if (a[s] != 0) out[offset + s] += a[s];
      }
      continue;
    }
    for (std::uint32_t s = 0; s < n; ++s) {
      if (a[s] == 0) continue;
      for (const auto& [j, v] : normal_form_[u]) {
        const std::uint32_t q = j % n;
        const std::size_t offset = j - q;
        for (const auto& [t, c] : ring.product(s, q)) add_product(out[offset + t], a[s], v, c, scratch);
      }
    }
  }
  return compress(out);
}

Integer Space::pair(const SparseVector& x, const SparseVector& y) const {
  Integer total = 0;
  if (x.empty() || y.empty()) return total;
  const auto& ring = *root_;
  const std::uint32_t n = root_count_;
  std::vector<Dense> acc(unreduced_count_);
  Integer scratch;
  for (const auto& [ix, vx] : x) {
    const std::uint32_t fx = fiber_of_[ix];
    const std::uint32_t px = ix - fx * n;
    for (const auto& [iy, vy] : y) {
      if (codims_[ix] + codims_[iy] != dimension_) continue;
      const std::uint32_t fy = fiber_of_[iy];
      const auto& row = ring.product(px, iy - fy * n);
      if (row.empty()) continue;
      Dense& a = acc[unreduced_[fx] + unreduced_[fy]];
      if (a.empty()) a.resize(n);
      mpz_mul(scratch.get_mpz_t(), vx.get_mpz_t(), vy.get_mpz_t());
      for (const auto& [s, c] : row) add_scaled(a[s], scratch, c);
    }
  }
  const std::uint32_t top_fiber = fiber_count_ - 1;
  for (std::uint32_t u = 0; u < unreduced_count_; ++u) {
    const Dense& a = acc[u];
    if (a.empty()) continue;
    if (reduced_code_[u] >= 0) {
      if (static_cast<std::uint32_t>(reduced_code_[u]) == top_fiber) total += a[ring.full];
      continue;
    }
    for (const auto& [j, v] : normal_form_[u]) {
      if (j / n != top_fiber) continue;
      const Integer& coeff = a[ring.dual[j % n]];
      if (coeff != 0) {
        mpz_mul(scratch.get_mpz_t(), coeff.get_mpz_t(), v.get_mpz_t());
        total += scratch;
      }
    }
  }
  return total;
}

const IntegerMatrix& Space::gram_matrix(int d) const {
  if (d < 0 || d > dimension_) {
    throw RangeError("gram_matrix codimension " + std::to_string(d) + " outside 0.." +
                     std::to_string(dimension_));
  }
  std::lock_guard lock(gram_mutex_);
  auto& slot = gram_cache_[d];
  if (!slot) {
    const auto rows = basis(d);
    const auto cols = basis(dimension_ - d);
    auto m = std::make_unique<IntegerMatrix>(rows.size(), std::vector<Integer>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      SparseVector bi{{rows[i], Integer(1)}};
      for (std::size_t j = 0; j < cols.size(); ++j) {
        (*m)[i][j] = pair(bi, SparseVector{{cols[j], Integer(1)}});
      }
    }
    slot = std::move(m);
  }
  return *slot;
}

// ---------------------------------------------------------------------------
// ChowClass

ChowClass::ChowClass(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw InvalidInput("ChowClass needs a space");
}

ChowClass::ChowClass(SpacePtr space, SparseVector terms) : ChowClass(std::move(space)) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [i, c] : terms) {
    if (i >= space_->basis_size()) throw InvalidInput("basis index out of range");
    if (c == 0) continue;
    if (!terms_.empty() && terms_.back().first == i) {
      terms_.back().second += c;
      if (terms_.back().second == 0) terms_.pop_back();
    } else {
      terms_.emplace_back(i, std::move(c));
    }
  }
}

ChowClass ChowClass::unit(SpacePtr space) {
  return ChowClass(std::move(space), {{0u, Integer(1)}});
}

ChowClass ChowClass::basis(SpacePtr space, const Label& label) {
  auto idx = space->find(label);
  if (!idx) throw InvalidInput("not a basis label of this space: " + label.to_string());
  return ChowClass(std::move(space), {{*idx, Integer(1)}});
}

Integer ChowClass::coefficient(const Label& label) const {
  auto idx = space_->find(label);
  if (!idx) return 0;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), *idx,
                             [](const auto& t, std::uint32_t i) { return t.first < i; });
  return (it != terms_.end() && it->first == *idx) ? it->second : Integer(0);
}

std::vector<std::pair<Label, Integer>> ChowClass::terms() const {
  std::vector<std::pair<Label, Integer>> out;
  out.reserve(terms_.size());
  for (const auto& [i, c] : terms_) out.emplace_back(space_->label(i), c);
  return out;
}

ChowClass ChowClass::component(int d) const {
  SparseVector out;
  for (const auto& [i, c] : terms_)
    if (space_->codim(i) == d) out.emplace_back(i, c);
  ChowClass result(space_);
  result.terms_ = std::move(out);
  return result;
}

std::optional<int> ChowClass::degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return space_->codim(terms_.front().first);
}

bool ChowClass::is_homogeneous() const {
  for (const auto& [i, c] : terms_) {
    if (space_->codim(i) != space_->codim(terms_.front().first)) return false;
  }
  return true;
}

int ChowClass::max_codim() const {
  int d = -1;
  for (const auto& [i, c] : terms_) d = std::max(d, space_->codim(i));
  return d;
}

ChowClass ChowClass::truncated(int max) const {
  ChowClass result(space_);
  for (const auto& [i, c] : terms_)
    if (space_->codim(i) <= max) result.terms_.emplace_back(i, c);
  return result;
}

ChowClass& ChowClass::operator+=(const ChowClass& o) {
  require_same_space(space_, o.space_, "addition");
  SparseVector merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Integer s = a->second + b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

ChowClass& ChowClass::operator-=(const ChowClass& o) { return *this += o * Integer(-1); }

ChowClass& ChowClass::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

ChowClass& ChowClass::operator*=(const ChowClass& o) { return *this = multiply(*this, o); }

ChowClass operator*(const ChowClass& a, const ChowClass& b) { return multiply(a, b); }

bool ChowClass::operator==(const ChowClass& o) const {
  if (space_.get() != o.space_.get() && !space_->same_as(*o.space_)) return false;
  return terms_ == o.terms_;
}

std::string ChowClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Integer mag = abs(c);
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i != 0) os << (mag != 1 ? "*" : "") << space_->label(i).to_string();
    first = false;
  }
  return os.str();
}

ChowClass multiply(const ChowClass& x, const ChowClass& y) {
  require_same_space(x.space(), y.space(), "multiply");
  return ChowClass(x.space(), x.space()->multiply(x.sparse(), y.sparse()));
}

ChowClass power(const ChowClass& x, int n) {
  if (n < 0) throw InvalidInput("negative power");
  ChowClass out = ChowClass::unit(x.space());
  for (int i = 0; i < n; ++i) out = multiply(out, x);
  return out;
}

Integer integrate(const ChowClass& x) {
  const int dim = x.space()->dimension();
  for (const auto& [i, c] : x.sparse()) {
    if (x.space()->codim(i) != dim) {
      throw DegreeError("integrate needs a class of codimension " + std::to_string(dim) +
                        ", found a term of codimension " + std::to_string(x.space()->codim(i)));
    }
  }
  return x.is_zero() ? Integer(0) : x.sparse().front().second;
}

ChowClass lift(const ChowClass& x, const SpacePtr& tower) {
  if (!tower->has_ancestor(*x.space())) {
    throw SpaceMismatch("lift: source space is not below the target tower");
  }
  // Indices of an ancestor coincide with the zero-fiber-exponent indices above it.
  return ChowClass(tower, x.sparse());
}

// ---------------------------------------------------------------------------
// Morphisms

struct Morphism::Cache {
  std::mutex mutex;
  std::map<std::vector<int>, ChowClass> h_monomials;
  std::map<std::pair<std::size_t, int>, ChowClass> zeta_powers;
};

Morphism::Morphism(SpacePtr source, SpacePtr target, std::vector<ChowClass> generator_images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(generator_images)),
      cache_(std::make_shared<Cache>()) {
  if (!source_ || !target_) throw InvalidInput("morphism needs both spaces");
  if (images_.size() != target_->generator_count()) {
    throw InvalidInput("morphism needs one image per target generator (" +
                       std::to_string(target_->generator_count()) + ")");
  }
  const std::size_t cols = target_->box() ? static_cast<std::size_t>(target_->box()->cols) : 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    require_same_space(images_[i].space(), source_, "morphism image");
    const int expected = i < cols ? static_cast<int>(i) + 1 : 1;
    auto d = images_[i].degree();
    if (!images_[i].is_zero() && d != expected) {
      throw DegreeError("generator image " + std::to_string(i) + " has the wrong codimension");
    }
  }
}

Morphism Morphism::projection(const SpacePtr& tower) {
  if (!tower->base()) throw InvalidInput("projection needs a tower space");
  const auto& base = tower->base();
  std::vector<ChowClass> images;
  for (std::size_t i = 0; i < base->generator_count(); ++i) {
    images.push_back(lift(base->generator(i), tower));
  }
  return Morphism(tower, base, std::move(images));
}

namespace {

ChowClass h_image(const Morphism& f, int i) {
  const int cols = f.target()->box() ? f.target()->box()->cols : 0;
  if (i > cols) return ChowClass(f.source());
  return f.generator_images()[static_cast<std::size_t>(i - 1)];
}

}  // namespace

std::vector<ChowClass> Morphism::relation_residuals() const {
  std::vector<ChowClass> out;
  if (const auto& box = target_->box()) {
    // e_j = sum_i (-1)^{i-1} h_i e_{j-i} must vanish for j > rank of the quotient.
    std::vector<ChowClass> e{ChowClass::unit(source_)};
    const int n = box->rows + box->cols;
    for (int j = 1; j <= n; ++j) {
      ChowClass ej(source_);
      for (int i = 1; i <= j; ++i) {
        ChowClass term = multiply(h_image(*this, i), e[static_cast<std::size_t>(j - i)]);
        ej += (i % 2 == 1) ? term : -term;
      }
      e.push_back(ej);
      if (j > box->rows) out.push_back(ej);
    }
  }
  // Grothendieck relation of every tower level.
  std::vector<const Space*> levels;
  for (const Space* s = target_.get(); s->base(); s = s->base().get()) levels.push_back(s);
  std::reverse(levels.begin(), levels.end());
  const std::size_t cols = target_->box() ? static_cast<std::size_t>(target_->box()->cols) : 0;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const Space& level = *levels[l];
    const int rank = level.ranks().back();
    const ChowClass& zeta = images_[cols + l];
    ChowClass residual = power(zeta, rank);
    for (int i = 1; i <= rank; ++i) {
      const ChowClass& ci = level.bundle_chern()[static_cast<std::size_t>(i - 1)];
      ChowClass term = multiply(pullback_apply(*this, lift(ci, target_)), power(zeta, rank - i));
      residual += (i % 2 == 0) ? term : -term;
    }
    out.push_back(residual);
  }
  return out;
}

ChowClass pullback_apply(const Morphism& f, const ChowClass& x) {
  require_same_space(x.space(), f.target(), "pullback");
  auto& cache = *f.cache_;
  const SpacePtr& source = f.source();
  const std::size_t cols = f.target()->box() ? static_cast<std::size_t>(f.target()->box()->cols) : 0;

  auto h_monomial = [&](const std::vector<int>& factors) -> ChowClass {
    {
      std::lock_guard lock(cache.mutex);
      if (auto it = cache.h_monomials.find(factors); it != cache.h_monomials.end()) return it->second;
    }
    ChowClass value = ChowClass::unit(source);
    for (int factor : factors) value = multiply(value, h_image(f, factor));
    std::lock_guard lock(cache.mutex);
    return cache.h_monomials.try_emplace(factors, std::move(value)).first->second;
  };
  auto zeta_power = [&](std::size_t level, int e) -> ChowClass {
    std::pair key{level, e};
    {
      std::lock_guard lock(cache.mutex);
      if (auto it = cache.zeta_powers.find(key); it != cache.zeta_powers.end()) return it->second;
    }
    ChowClass value = power(f.generator_images()[cols + level], e);
    std::lock_guard lock(cache.mutex);
    return cache.zeta_powers.try_emplace(key, std::move(value)).first->second;
  };

  ChowClass out(source);
  for (const auto& [idx, coeff] : x.sparse()) {
    const Label& label = x.space()->label(idx);
    ChowClass image(source);
    for (const auto& term : jacobi_trudi(label.partition)) {
      image += h_monomial(term.factors) * Integer(term.coefficient);
    }
    for (std::size_t l = 0; l < label.exponents.size(); ++l) {
      if (label.exponents[l] > 0) image = multiply(image, zeta_power(l, label.exponents[l]));
    }
    out += image * coeff;
  }
  return out;
}

ChowClass pushforward_dual_basis(const Morphism& f, const ChowClass& x) {
  require_same_space(x.space(), f.source(), "pushforward");
  const SpacePtr& target = f.target();
  const int rel = f.relative_dimension();
  const int dim = target->dimension();
  ChowClass out(target);
  for (int p = 0; p <= x.max_codim(); ++p) {
    ChowClass part = x.component(p);
    if (part.is_zero()) continue;
    const int t = p - rel;
    if (t < 0 || t > dim) continue;
    const auto rows = target->basis(t);
    const auto cols = target->basis(dim - t);
    const IntegerMatrix& gram = target->gram_matrix(t);
    std::vector<Integer> rhs(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      ChowClass pulled = pullback_apply(f, ChowClass(target, {{cols[j], Integer(1)}}));
      rhs[j] = f.source()->pair(part.sparse(), pulled.sparse());
    }
    const auto y = solve_rational(transpose(gram), rhs);
    SparseVector terms;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (y[i].get_den() != 1) {
        throw ConsistencyError("pushforward produced the non-integral coefficient " + y[i].get_str() +
                               " on " + target->label(rows[i]).to_string());
      }
      if (y[i] != 0) terms.emplace_back(rows[i], y[i].get_num());
    }
    out += ChowClass(target, std::move(terms));
  }
  return out;
}

}  // namespace chow
