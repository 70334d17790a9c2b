#pragma once

#include <gmpxx.h>

#include <string>

namespace lcss {

// All matrix arithmetic is exact; transform entries in Smith reduction grow
// quickly even for small inputs.
using Integer = mpz_class;

/// p-adic valuation of a nonzero integer. Returns -1 for zero.
int valuation(const Integer& value, int prime);

/// p^exponent as an Integer.
Integer power_of(int prime, int exponent);

/// Largest divisor of value that is prime to p (sign dropped). Zero maps to zero.
Integer prime_to_part(const Integer& value, int prime);

inline std::string to_string(const Integer& value) { return value.get_str(); }

}  // namespace lcss
