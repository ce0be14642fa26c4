#pragma once

#include <gmpxx.h>

#include <string>

namespace chow {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_decimal(const Integer& value) { return value.get_str(10); }

inline Integer parse_integer(const std::string& text) { return Integer(text, 10); }

// acc += a * b * c for a small multiplier c.
inline void add_product(Integer& acc, const Integer& a, const Integer& b, long c, Integer& scratch) {
  mpz_mul(scratch.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (c >= 0) {
    mpz_addmul_ui(acc.get_mpz_t(), scratch.get_mpz_t(), static_cast<unsigned long>(c));
  } else {
    mpz_submul_ui(acc.get_mpz_t(), scratch.get_mpz_t(), static_cast<unsigned long>(-c));
  }
}

inline void add_scaled(Integer& acc, const Integer& a, long c) {
  if (c >= 0) {
    mpz_addmul_ui(acc.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(c));
  } else {
    mpz_submul_ui(acc.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(-c));
  }
}

/// Binomial coefficient with arbitrary integer top entry, (n choose k) = n(n-1)...(n-k+1)/k!.
inline Integer generalized_binomial(long n, long k) {
  if (k < 0) return 0;
  Integer num = 1;
  for (long i = 0; i < k; ++i) num *= (n - i);
  Integer den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(k));
  return num / den;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace chow
