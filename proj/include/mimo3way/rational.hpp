#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace mimo3way {

/// Exact rational used for antenna counts, DoF values and LP data.
// Compare with == / != only against another Rational: boost 1.74 recurses
// forever on `rational == int` under C++20 rewritten comparisons.
using Rational = boost::rational<std::int64_t>;

/// Canonical "p/q" text (q >= 1, always present).
std::string to_string(const Rational& r);

/// Accepts "p/q", "p", or a terminating decimal such as "1.5".
Rational parse_rational(std::string_view text);

/// Fixed-point rendering used by tables and CSV.
std::string to_decimal(const Rational& r, int places = 4);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// Least common multiple of the denominators.
std::int64_t common_denominator(const Rational* first, const Rational* last);

inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace mimo3way
