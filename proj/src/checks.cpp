#include "chow/checks.hpp"

#include <algorithm>
#include <random>

#include "chow/invariants.hpp"

namespace chow::checks {

void CheckResult::fail(std::string what) {
  passed = false;
  if (failures.size() < 8) failures.push_back(std::move(what));
}

namespace {

void check_gram(CheckResult& r, const SpacePtr& s, const std::string& name) {
  for (int d = 0; d <= s->dimension(); ++d) {
    const Integer det = determinant(s->gram_matrix(d));
    ++r.checked;
    if (abs(det) != 1) r.fail(name + " codim " + std::to_string(d) + ": det " + to_decimal(det));
  }
}

Partition random_partition(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> part(0, cols);
  std::vector<int> parts(static_cast<std::size_t>(rows));
  for (int& p : parts) p = part(rng);
  std::sort(parts.rbegin(), parts.rend());
  return Partition(parts);
}

ChowClass sigma_row(const SpacePtr& g, int a) { return ChowClass::basis(g, Label{Partition::row(a), {}}); }

void check_projection(CheckResult& r, const ProjectiveBundle& p, const std::string& name) {
  const int rank = p.bundle.rank();
  ChowClass z = ChowClass::unit(p.space);
  for (int j = 0; j < rank; ++j) {
    const ChowClass pushed = pushforward_dual_basis(p.projection, z);
    const ChowClass expected = j == rank - 1 ? ChowClass::unit(p.projection.target()) : ChowClass(p.projection.target());
    ++r.checked;
    if (pushed != expected) r.fail(name + ": pi_*(zeta^" + std::to_string(j) + ") = " + pushed.to_string());
    z = multiply(z, p.zeta);
  }
}

// Coefficients of prod_m (1 + t * sum_i m_i x_i) up to t^max_degree.
std::vector<Integer> graded_root_product(int k, const std::vector<long>& roots, int max_degree) {
  std::vector<Integer> poly(static_cast<std::size_t>(max_degree) + 1, 0);
  poly[0] = 1;
  const int rank = static_cast<int>(roots.size());
  std::vector<int> m(static_cast<std::size_t>(rank), 0);
  // Enumerate exponent vectors with sum k.
  auto visit = [&](auto&& self, int slot, int left) -> void {
    if (slot == rank - 1) {
      m[static_cast<std::size_t>(slot)] = left;
      long weight = 0;
      for (int i = 0; i < rank; ++i) weight += m[static_cast<std::size_t>(i)] * roots[static_cast<std::size_t>(i)];
      for (int d = max_degree; d >= 1; --d) poly[static_cast<std::size_t>(d)] += poly[static_cast<std::size_t>(d - 1)] * weight;
      return;
    }
    for (int v = left; v >= 0; --v) {
      m[static_cast<std::size_t>(slot)] = v;
      self(self, slot + 1, left - v);
    }
  };
  visit(visit, 0, k);
  return poly;
}

}  // namespace

CheckResult gram_grassmannians(int max_n2, int max_n3) {
  CheckResult r("poincare-duality-grassmannians");
  for (int n = 3; n <= max_n2; ++n) check_gram(r, grassmannian(2, n).space, "G(2," + std::to_string(n) + ")");
  for (int n = 4; n <= max_n3; ++n) check_gram(r, grassmannian(3, n).space, "G(3," + std::to_string(n) + ")");
  return r;
}

CheckResult gram_towers(int max_k) {
  CheckResult r("poincare-duality-towers");
  for (int k = kMinDimension; k <= max_k; ++k) {
    const auto geometry = conic_geometry(k);
    const std::string tag = " k=" + std::to_string(k);
    check_gram(r, geometry->conics.space, "M" + tag);
    check_gram(r, geometry->pointed_planes.space, "H" + tag);
    check_gram(r, geometry->pointed_conics.space, "M'" + tag);
  }
  return r;
}

CheckResult lr_oracle_agreement(int pairs, std::uint64_t seed) {
  CheckResult r("littlewood-richardson-oracle");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rows_dist(1, 3);
  std::uniform_int_distribution<int> cols_dist(1, 6);
  for (int i = 0; i < pairs; ++i) {
    const int rows = rows_dist(rng);
    const int cols = cols_dist(rng);
    const BoxShape box = BoxShape::of(rows, cols);
    Partition lambda = random_partition(rng, rows, cols);
    Partition mu = random_partition(rng, rows, cols);
    // Redraw until the product can be nonzero in the box.
    while (lambda.weight() + mu.weight() > box.area()) {
      lambda = random_partition(rng, rows, cols);
      mu = random_partition(rng, rows, cols);
    }
    const SchurVector product = schur_product(lambda, mu, box);
    const int weight = lambda.weight() + mu.weight();
    for (const Partition& nu : partitions_in_box(box)) {
      if (nu.weight() != weight) continue;
      ++r.checked;
      const Integer expected = lr_oracle(lambda, mu, nu);
      if (product.coefficient(nu) != expected) {
        r.fail("c^" + nu.to_string() + "_" + lambda.to_string() + mu.to_string() + " in " + std::to_string(rows) +
               "x" + std::to_string(cols) + ": " + to_decimal(product.coefficient(nu)) + " vs oracle " +
               to_decimal(expected));
      }
    }
  }
  return r;
}

CheckResult projection_normalization(int max_k) {
  CheckResult r("projection-normalization");
  const Grassmannian g24 = grassmannian(2, 4);
  check_projection(r, projective_bundle(g24.space, g24.quotient), "P(Q) over G(2,4)");
  for (int w : {2, 4}) {
    const BundleClass e = dual(direct_sum(BundleClass::trivial(g24.space, 1), symmetric_power(w, g24.quotient)));
    check_projection(r, projective_bundle(g24.space, e), "weighted M, weight " + std::to_string(w));
  }
  for (int k = kMinDimension; k <= max_k; ++k) {
    const auto geometry = conic_geometry(k);
    const std::string tag = " k=" + std::to_string(k);
    check_projection(r, geometry->conics, "M" + tag);
    check_projection(r, geometry->pointed_planes, "H" + tag);
    check_projection(r, geometry->pointed_conics, "M'" + tag);
  }
  return r;
}

CheckResult symmetric_power_oracle() {
  CheckResult r("symmetric-power-oracle");
  struct Case {
    int rank, k, max_degree;
  };
  std::vector<Case> cases;
  for (int k = 1; k <= 8; ++k) cases.push_back({2, k, k + 1});
  cases.push_back({3, 1, 3});
  cases.push_back({3, 2, 6});
  cases.push_back({3, 12, 27});
  const std::vector<std::vector<long>> samples{{1, 2, 3}, {-2, 5, 7}, {3, -1, -4}, {0, 4, -3}, {6, 6, -5}};
  for (const Case& c : cases) {
    const ElementaryPoly& universal = universal_symmetric_power(c.k, c.rank, c.max_degree);
    for (const auto& sample : samples) {
      const std::vector<long> roots(sample.begin(), sample.begin() + c.rank);
      std::vector<Integer> e(static_cast<std::size_t>(c.rank), 0);
      // Elementary symmetric functions of the roots.
      std::vector<Integer> acc{1};
      for (long x : roots) {
        acc.push_back(0);
        for (std::size_t j = acc.size() - 1; j >= 1; --j) acc[j] += acc[j - 1] * x;
      }
      for (int i = 0; i < c.rank; ++i) e[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i) + 1];
      const auto oracle = graded_root_product(c.k, roots, c.max_degree);
      for (int d = 0; d <= c.max_degree; ++d) {
        ++r.checked;
        const Integer got = universal.homogeneous_component(d).evaluate(e);
        if (got != oracle[static_cast<std::size_t>(d)]) {
          r.fail("c_" + std::to_string(d) + "(S^" + std::to_string(c.k) + ") rank " + std::to_string(c.rank) + ": " +
                 to_decimal(got) + " vs roots " + to_decimal(oracle[static_cast<std::size_t>(d)]));
        }
      }
    }
  }
  return r;
}

CheckResult schubert_identity(int max_k) {
  CheckResult r("schubert-identity");
  for (int k = kMinDimension; k <= max_k; ++k) {
    const SpacePtr g = grassmannian(2, k + 2).space;
    auto s = [&](int a) { return sigma_row(g, a); };
    for (int i = 1; i < k; ++i) {
      for (int j = 1; i + j < k; ++j) {
        const ChowClass lhs = s(i - 1) * s(j - 1) * s(k - i - j - 1);
        ChowClass rhs(g);
        for (int l = 0; l < j; ++l) rhs += s(i + l - 1) * s(k - i - l - 2);
        for (int l = 1; l < j; ++l) rhs -= s(l - 1) * s(k - l - 2);
        ++r.checked;
        if (lhs != rhs) {
          r.fail("k=" + std::to_string(k) + " i=" + std::to_string(i) + " j=" + std::to_string(j) + ": " +
                 lhs.to_string() + " vs " + rhs.to_string());
        }
      }
    }
  }
  return r;
}

CheckResult fact_identity(int max_k) {
  CheckResult r("fact-identity");
  for (int k = kMinDimension; k <= max_k; ++k) {
    for (int i = 1; i < k; ++i) {
      for (int j = 1; i + j < k; ++j) {
        const Integer lhs = gw_lines(k, i, j);
        const Integer rhs = fact_identity_rhs(k, i, j);
        ++r.checked;
        if (lhs != rhs) {
          r.fail("k=" + std::to_string(k) + " (" + std::to_string(i) + "," + std::to_string(j) + "): " +
                 to_decimal(lhs) + " vs " + to_decimal(rhs));
        }
      }
    }
  }
  return r;
}

CheckResult conic_normalization(int min_k, int max_k) {
  CheckResult r("conic-normalization");
  for (int k = min_k; k <= max_k; ++k) {
    const auto geometry = conic_geometry(k);
    const SpacePtr& m = geometry->conics.space;
    ++r.checked;
    const ChowClass& f0 = conic_incidence_class(k, 0);
    if (!f0.is_zero()) r.fail("k=" + std::to_string(k) + ": f_*(1) = " + f0.to_string());
    ++r.checked;
    const ChowClass& f1 = conic_incidence_class(k, 1);
    if (f1 != ChowClass::unit(m) * Integer(2)) r.fail("k=" + std::to_string(k) + ": f_*(h) = " + f1.to_string());
  }
  return r;
}

CheckResult four_lines() {
  CheckResult r("four-lines");
  const SpacePtr g = grassmannian(2, 4).space;
  const Integer value = integrate(power(sigma_row(g, 1), 4));
  ++r.checked;
  if (value != 2) r.fail("deg sigma_1^4 = " + to_decimal(value));
  return r;
}

std::vector<CheckResult> engine_suite() {
  return {gram_grassmannians(),       gram_towers(),          lr_oracle_agreement(),
          projection_normalization(), symmetric_power_oracle(), schubert_identity(),
          conic_normalization(3, 6),  four_lines()};
}

}  // namespace chow::checks
