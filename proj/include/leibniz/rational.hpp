#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "leibniz/errors.hpp"

namespace leibniz {

/// Exact rational scalar. GMP keeps values canonical (lowest terms,
/// positive denominator); no floating point anywhere in the library.
using Rat = mpq_class;
using Int = mpz_class;

using Vec = std::vector<Rat>;

inline bool is_zero(const Rat& a) { return sgn(a) == 0; }

/// Parses "p/q" or "p" (optional sign, arbitrary precision).
Rat parse_rational(const std::string& s);

/// Serializes as "p" or "p/q" with q > 1; never a decimal.
std::string to_string(const Rat& a);

} // namespace leibniz
