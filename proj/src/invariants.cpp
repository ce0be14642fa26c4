#include "chow/invariants.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <future>
#include <map>
#include <mutex>
#include <tuple>

#include "chow/error.hpp"

namespace chow {

namespace {

// Builds each value at most once, even when several threads ask together.
template <class Key, class Value>
class OnceMap {
 public:
  template <class Build>
  std::shared_ptr<const Value> get(const Key& key, Build&& build) {
    std::shared_future<std::shared_ptr<const Value>> future;
    std::promise<std::shared_ptr<const Value>> promise;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      auto it = entries_.find(key);
      if (it == entries_.end()) {
        future = promise.get_future().share();
        entries_.emplace(key, future);
        owner = true;
      } else {
        future = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(std::make_shared<const Value>(build()));
      } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard lock(mutex_);
        entries_.erase(key);
      }
    }
    return future.get();
  }

 private:
  std::mutex mutex_;
  std::map<Key, std::shared_future<std::shared_ptr<const Value>>> entries_;
};

void check_dimension(int k) {
  if (k < kMinDimension || k > kMaxDimension) {
    throw InvalidInput("Calabi-Yau dimension must be in 3..10, got " + std::to_string(k));
  }
}

Incidence checked_incidence(int k, int a, int b) {
  check_dimension(k);
  const int c = k - a - b;
  if (a < 1 || b < 1 || c < 1) {
    throw InvalidIncidence("incidence needs positive a, b, c with a+b+c=" + std::to_string(k) +
                           ", got a=" + std::to_string(a) + " b=" + std::to_string(b));
  }
  return Incidence{a, b, c};
}

BundleClass sum_of_symmetric_powers(const BundleClass& q, int step, int top) {
  BundleClass out = BundleClass::trivial(q.space(), 1);
  for (int j = step; j <= top; j += step) out = direct_sum(out, symmetric_power(j, q));
  return out;
}

OnceMap<std::tuple<Family, int, Incidence>, Integer>& value_cache() {
  static OnceMap<std::tuple<Family, int, Incidence>, Integer> cache;
  return cache;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::WeightedLines: return "weighted-lines";
    case Family::GwLines: return "gw-lines";
    case Family::GwConics: return "gw-conics";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& name) {
  for (Family f : {Family::WeightedLines, Family::GwLines, Family::GwConics}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

Incidence Incidence::sorted() const {
  std::array<int, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return Incidence{v[0], v[1], v[2]};
}

int Incidence::unit_count() const { return (a == 1) + (b == 1) + (c == 1); }

InvariantRequest InvariantRequest::weighted_lines(int weight) {
  return InvariantRequest{Family::WeightedLines, weight, std::nullopt};
}

InvariantRequest InvariantRequest::lines(int k, int a, int b) {
  return InvariantRequest{Family::GwLines, k, Incidence{a, b, k - a - b}};
}

InvariantRequest InvariantRequest::conics(int k, int a, int b) {
  return InvariantRequest{Family::GwConics, k, Incidence{a, b, k - a - b}};
}

void InvariantRequest::validate() const {
  if (family == Family::WeightedLines) {
    if (incidence) throw InvalidIncidence("weighted lines take no incidence conditions");
    if (k != 1 && k != 2 && k != 4) {
      throw InvalidWeight("weight " + std::to_string(k) + " must divide the degree " +
                          std::to_string(k + 4) + "; only 2 and 4 (or 1, the quintic) qualify");
    }
    return;
  }
  if (!incidence) throw InvalidIncidence("Gromov-Witten invariants need an incidence (a, b)");
  const Incidence checked = checked_incidence(k, incidence->a, incidence->b);
  if (checked.c != incidence->c) {
    throw InvalidIncidence("incidence must satisfy a+b+c=k");
  }
}

// ---------------------------------------------------------------------------

Integer lines_on_quintic() {
  const Grassmannian g = grassmannian(2, 5);
  return integrate(symmetric_power(5, g.quotient).chern(6));
}

Integer weighted_lines_count(int k) {
  if (k != 2 && k != 4) {
    throw InvalidWeight("weight " + std::to_string(k) + " does not divide the degree " +
                        std::to_string(k + 4) + "; a weighted Calabi-Yau threefold of this kind needs k = 2 or 4");
  }
  const int degree = k + 4;
  const Grassmannian g = grassmannian(2, 4);
  // Weighted lines x_0 = f_k(q): the line spanned by (1, f_k) in C + S^k Q.
  const ProjectiveBundle m =
      projective_bundle(g.space, dual(direct_sum(BundleClass::trivial(g.space, 1),
                                                 symmetric_power(k, g.quotient))));
  const BundleClass equations = sum_of_symmetric_powers(g.quotient, k, degree);
  const BundleClass multiples = sum_of_symmetric_powers(g.quotient, k, degree - k);
  const BundleClass sub_line = tautological_sub_line(m);
  const BundleClass b = quotient_chern(
      pull_to_total(equations, m.space),
      tensor_by_line(pull_to_total(multiples, m.space), sub_line.chern(1)));
  return integrate(b.chern(b.rank()));
}

std::shared_ptr<const LineGeometry> line_geometry(int k) {
  check_dimension(k);
  static OnceMap<int, LineGeometry> cache;
  return cache.get(k, [k] {
    Grassmannian g = grassmannian(2, k + 2);
    ChowClass locus = symmetric_power(k + 2, g.quotient).chern(k + 3);
    return LineGeometry{std::move(g), std::move(locus)};
  });
}

Integer gw_lines(int k, int a, int b) {
  const Incidence inc = checked_incidence(k, a, b);
  return *value_cache().get({Family::GwLines, k, inc.sorted()}, [&] {
    const auto geometry = line_geometry(k);
    const SpacePtr& g = geometry->grassmannian.space;
    ChowClass product = geometry->locus;
    for (int x : {inc.a, inc.b, inc.c}) {
      product = multiply(product, ChowClass::basis(g, Label{Partition::row(x - 1), {}}));
    }
    return integrate(product);
  });
}

Integer fact_identity_rhs(int k, int i, int j) {
  check_dimension(k);
  if (i < 1 || j < 1 || i + j >= k) {
    throw InvalidIncidence("fact identity needs i, j >= 1 and i + j < k");
  }
  Integer total = 0;
  for (int l = 0; l < j; ++l) total += gw_lines(k, 1, i + l);
  for (int l = 1; l < j; ++l) total -= gw_lines(k, 1, l);
  return total;
}

std::shared_ptr<const ConicGeometry> conic_geometry(int k) {
  check_dimension(k);
  static OnceMap<int, ConicGeometry> cache;
  return cache.get(k, [k] {
    Grassmannian g = grassmannian(3, k + 2);
    const BundleClass& q = g.quotient;

    // Conics: a plane plus a quadric equation O(-1) in S^2 Q, up to scalar.
    ProjectiveBundle m = projective_bundle(g.space, dual(symmetric_power(2, q)));
    BundleClass equations = quotient_chern(
        pull_to_total(symmetric_power(k + 2, q), m.space),
        tensor_by_line(pull_to_total(symmetric_power(k, q), m.space), tautological_sub_line(m).chern(1)));
    ChowClass locus = equations.chern(2 * k + 5);

    // Pointed planes: a rank-1 quotient Q -> O(1) is a point of the plane.
    ProjectiveBundle h = projective_bundle(g.space, q);
    const BundleClass q_h = pull_to_total(q, h.space);
    BundleClass w = quotient_chern(symmetric_power(2, q_h), BundleClass::line(h.zeta * Integer(2)));
    ProjectiveBundle mp = projective_bundle(h.space, dual(w));

    std::vector<ChowClass> images;
    for (std::size_t i = 0; i < g.space->generator_count(); ++i) {
      images.push_back(lift(g.space->generator(i), mp.space));
    }
    images.push_back(mp.zeta);
    Morphism forget(mp.space, m.space, std::move(images));
    ChowClass hyperplane = lift(h.zeta, mp.space);
    return ConicGeometry{std::move(g),  std::move(m),  std::move(equations),
                         std::move(locus), std::move(h), std::move(w),
                         std::move(mp), std::move(forget), std::move(hyperplane)};
  });
}

const ChowClass& conic_incidence_class(int k, int a) {
  check_dimension(k);
  if (a < 0 || a > k) throw InvalidIncidence("incidence codimension out of range");
  static OnceMap<std::pair<int, int>, ChowClass> cache;
  return *cache.get({k, a}, [k, a] {
    const auto geometry = conic_geometry(k);
    return pushforward_dual_basis(geometry->forget, power(geometry->hyperplane, a));
  });
}

Integer gw_conics(int k, int a, int b) {
  const Incidence inc = checked_incidence(k, a, b);
  return *value_cache().get({Family::GwConics, k, inc.sorted()}, [&] {
    const auto geometry = conic_geometry(k);
    ChowClass product = geometry->locus;
    for (int x : {inc.a, inc.b, inc.c}) product = multiply(product, conic_incidence_class(k, x));
    return integrate(product);
  });
}

Integer gw_to_curve_count(const Integer& value, int d, const Incidence& incidence) {
  if (d != 1 && d != 2) throw InvalidInput("curve degree must be 1 or 2");
  Integer divisor = 1;
  for (int i = 0; i < incidence.unit_count(); ++i) divisor *= d;
  if (value % divisor != 0) {
    throw DivisibilityError(to_decimal(value) + " is not divisible by " + to_decimal(divisor));
  }
  return value / divisor;
}

InvariantResult evaluate(const InvariantRequest& request) {
  request.validate();
  const auto start = std::chrono::steady_clock::now();
  InvariantResult result{request, 0, std::nullopt, 0};
  switch (request.family) {
    case Family::WeightedLines:
      result.value = request.k == 1 ? lines_on_quintic() : weighted_lines_count(request.k);
      result.curve_count = result.value;
      break;
    case Family::GwLines:
      result.value = gw_lines(request.k, request.incidence->a, request.incidence->b);
      result.curve_count = gw_to_curve_count(result.value, 1, *request.incidence);
      break;
    case Family::GwConics:
      result.value = gw_conics(request.k, request.incidence->a, request.incidence->b);
      result.curve_count = gw_to_curve_count(result.value, 2, *request.incidence);
      break;
  }
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace chow
