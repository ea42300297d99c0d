#ifndef CYBEFORGE_RATIONAL_HPP
#define CYBEFORGE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cybeforge {

/// Arbitrary-precision rational. GMP keeps it canonical after every
/// arithmetic operation (positive denominator, coprime parts).
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q", "p" or "-p/q". Throws ParseError on malformed input or q = 0.
Rat parse_rat(std::string_view text);

/// Always "p/q", including integers ("3/1") and zero ("0/1").
std::string format_rat(const Rat &r);

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);

/// 1/n!
Rat inv_factorial(unsigned n);

inline bool is_zero(const Rat &r) { return sgn(r) == 0; }

} // namespace cybeforge

#endif
