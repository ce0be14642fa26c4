#pragma once
// Self-contained property checks of the engine, each comparing against an
// independent oracle or an exact identity. Used by `verify` and by the
// acceptance suite.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chow::checks {

struct CheckResult {
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  long checked = 0;           // number of individual comparisons
  std::vector<std::string> failures;  // first few failures, human readable

  void fail(std::string what);
};

/// Gram determinants of every codimension are +-1 on G(2,n), n <= max_n2, and
/// G(3,n), n <= max_n3.
CheckResult gram_grassmannians(int max_n2 = 8, int max_n3 = 12);
/// Same on the conic towers M, H, M' for 3 <= k <= max_k.
CheckResult gram_towers(int max_k = 6);
/// schur_product against LR tableau enumeration on random pairs in boxes up to 3x6.
CheckResult lr_oracle_agreement(int pairs = 200, std::uint64_t seed = 20240601);
/// pi_*(zeta^{r-1}) = 1 and pi_*(zeta^j) = 0 for j < r-1 on every bundle the
/// invariant pipelines construct (conic towers up to max_k, weighted lines).
CheckResult projection_normalization(int max_k = 6);
/// Universal Chern classes of S^k against numeric splitting roots.
CheckResult symmetric_power_oracle();
/// The Pieri identity behind the line invariants, as classes on G(2, k+2).
CheckResult schubert_identity(int max_k = 10);
/// gw_lines(k,i,j) against fact_identity_rhs for every admissible triple.
CheckResult fact_identity(int max_k = 10);
/// f_*(1) = 0 and f_*(h) = 2 on the conic space, for k in [min_k, max_k].
CheckResult conic_normalization(int min_k = 3, int max_k = 10);
/// Degree of sigma_1^4 on G(2,4) is 2.
CheckResult four_lines();

/// Everything above that involves no table values, at the default sizes.
std::vector<CheckResult> engine_suite();

}  // namespace chow::checks
