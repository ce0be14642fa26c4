#pragma once

#include <vector>

#include "chow/integer.hpp"

namespace chow {

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(IntegerMatrix m);

/// Solves a x = b over the rationals. Throws ConsistencyError when a is singular.
std::vector<Rational> solve_rational(const IntegerMatrix& a, const std::vector<Integer>& b);

IntegerMatrix transpose(const IntegerMatrix& m);

}  // namespace chow
