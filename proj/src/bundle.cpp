#include "chow/bundle.hpp"

#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "chow/error.hpp"

namespace chow {

BundleClass::BundleClass(int rank, ChowClass total) : rank_(rank), total_(std::move(total)) {
  if (rank_ < 0) throw RankError("negative rank");
  if (total_.component(0) != ChowClass::unit(total_.space())) {
    throw InvalidInput("total Chern class must start with 1");
  }
}

BundleClass BundleClass::trivial(const SpacePtr& space, int rank) {
  return BundleClass(rank, ChowClass::unit(space));
}

BundleClass BundleClass::line(const ChowClass& c1) {
  if (!c1.is_zero() && c1.degree() != 1) throw DegreeError("line bundle needs a codimension-1 class");
  return BundleClass(1, ChowClass::unit(c1.space()) + c1);
}

BundleClass direct_sum(const BundleClass& e, const BundleClass& f) {
  return BundleClass(e.rank() + f.rank(), multiply(e.total(), f.total()));
}

BundleClass dual(const BundleClass& e) {
  ChowClass out(e.space());
  for (int d = 0; d <= e.total().max_codim(); ++d) {
    ChowClass part = e.chern(d);
    out += (d % 2 == 0) ? part : -part;
  }
  return BundleClass(e.rank(), out);
}

BundleClass tensor_by_line(const BundleClass& e, const ChowClass& t) {
  if (!t.is_zero() && t.degree() != 1) throw DegreeError("tensor_by_line needs a codimension-1 class");
  if (t.space().get() != e.space().get() && !t.space()->same_as(*e.space())) {
    throw SpaceMismatch("tensor_by_line: line class on another space");
  }
  const int dim = e.space()->dimension();
  std::vector<ChowClass> t_powers{ChowClass::unit(e.space())};
  for (int j = 1; j <= dim; ++j) t_powers.push_back(multiply(t_powers.back(), t));
  // c(E (x) L) = sum_i c_i(E) (1 + t)^{rank - i}
  ChowClass out(e.space());
  for (int i = 0; i <= std::min(dim, e.total().max_codim()); ++i) {
    ChowClass ci = e.chern(i);
    if (ci.is_zero()) continue;
    ChowClass factor(e.space());
    for (int j = 0; i + j <= dim; ++j) {
      Integer b = generalized_binomial(e.rank() - i, j);
      if (b != 0) factor += t_powers[static_cast<std::size_t>(j)] * b;
    }
    out += multiply(ci, factor);
  }
  return BundleClass(e.rank(), out);
}

namespace {

void multisets(int vars, int k, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == vars - 1) {
    current.push_back(k);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int m = k; m >= 0; --m) {
    current.push_back(m);
    multisets(vars, k - m, current, out);
    current.pop_back();
  }
}

struct SymmetricPowerCache {
  std::shared_mutex mutex;
  std::map<std::tuple<int, int, int>, ElementaryPoly> entries;
};

}  // namespace

const ElementaryPoly& universal_symmetric_power(int k, int rank, int max_degree) {
  if (rank < 1 || rank > 3) {
    throw UnsupportedRank("symmetric powers are supported for ranks 1 to 3, got " + std::to_string(rank));
  }
  if (k < 0) throw InvalidInput("negative symmetric power");
  static SymmetricPowerCache cache;
  const std::tuple key{k, rank, max_degree};
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;
  }
  std::vector<std::vector<int>> roots;
  std::vector<int> current;
  multisets(rank, k, current, roots);
  SymPoly product = SymPoly::constant(rank, 1);
  for (const auto& m : roots) {
    SymPoly factor = SymPoly::constant(rank, 1);
    for (int v = 0; v < rank; ++v) {
      if (m[static_cast<std::size_t>(v)] != 0) {
        factor = factor + SymPoly::variable(rank, v) * Integer(m[static_cast<std::size_t>(v)]);
      }
    }
    product = (product * factor).truncated(max_degree);
  }
  ElementaryPoly reduced = reduce_to_elementary(product);
  std::unique_lock lock(cache.mutex);
  return cache.entries.try_emplace(key, std::move(reduced)).first->second;
}

ChowClass substitute_elementary(const ElementaryPoly& p, std::span<const ChowClass> chern,
                                const SpacePtr& space) {
  if (static_cast<int>(chern.size()) < p.nvars()) throw InvalidInput("too few Chern classes");
  const int dim = space->dimension();
  auto powers_of = [&](std::size_t i) {
    std::vector<ChowClass> pw{ChowClass::unit(space)};
    if (i < chern.size()) {
      for (int j = 1; (static_cast<int>(i) + 1) * j <= dim; ++j) pw.push_back(multiply(pw.back(), chern[i]));
    }
    return pw;
  };
  const auto p1 = powers_of(0);
  const auto p2 = p.nvars() > 1 ? powers_of(1) : std::vector<ChowClass>{ChowClass::unit(space)};
  const auto p3 = p.nvars() > 2 ? powers_of(2) : std::vector<ChowClass>{ChowClass::unit(space)};

  // Group by the (e_2, e_3) exponents: one multiplication per group.
  std::map<std::pair<int, int>, ChowClass> groups;
  for (const auto& [e, c] : p.terms()) {
    if (ElementaryPoly::weighted_degree(e) > dim) continue;
    auto it = groups.try_emplace({e[1], e[2]}, space).first;
    it->second += p1[static_cast<std::size_t>(e[0])] * c;
  }
  ChowClass out(space);
  for (const auto& [key, linear] : groups) {
    const auto& [b, c] = key;
    ChowClass mono = multiply(p2[static_cast<std::size_t>(b)], p3[static_cast<std::size_t>(c)]);
    out += multiply(mono, linear);
  }
  return out;
}

BundleClass symmetric_power(int k, const BundleClass& e) {
  const int rank = e.rank();
  if (rank < 1 || rank > 3) {
    throw UnsupportedRank("symmetric_power supports ranks 1 to 3, got " + std::to_string(rank));
  }
  if (k < 0) throw InvalidInput("negative symmetric power");
  const int dim = e.space()->dimension();
  const ElementaryPoly& universal = universal_symmetric_power(k, rank, dim);
  std::vector<ChowClass> chern;
  for (int i = 1; i <= rank; ++i) chern.push_back(e.chern(i));
  ChowClass total = substitute_elementary(universal, chern, e.space());
  const int new_rank = static_cast<int>(binomial(static_cast<unsigned long>(k + rank - 1),
                                                 static_cast<unsigned long>(rank - 1))
                                            .get_si());
  return BundleClass(new_rank, total);
}

BundleClass quotient_chern(const BundleClass& total, const BundleClass& sub) {
  if (sub.rank() > total.rank()) {
    throw RankError("quotient of a rank " + std::to_string(total.rank()) + " bundle by rank " +
                    std::to_string(sub.rank()));
  }
  if (total.space().get() != sub.space().get() && !total.space()->same_as(*sub.space())) {
    throw SpaceMismatch("quotient_chern: bundles on different spaces");
  }
  // Solve sub * q = total degree by degree: q_d = total_d - sum_{i>=1} sub_i q_{d-i}.
  const int dim = total.space()->dimension();
  std::vector<ChowClass> sub_parts;
  for (int i = 0; i <= dim; ++i) sub_parts.push_back(sub.chern(i));
  std::vector<ChowClass> q;
  ChowClass out(total.space());
  for (int d = 0; d <= dim; ++d) {
    ChowClass qd = total.chern(d);
    for (int i = 1; i <= d; ++i) {
      if (sub_parts[static_cast<std::size_t>(i)].is_zero()) continue;
      qd -= multiply(sub_parts[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(d - i)]);
    }
    out += qd;
    q.push_back(std::move(qd));
  }
  return BundleClass(total.rank() - sub.rank(), out);
}

}  // namespace chow
