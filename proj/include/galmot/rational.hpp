#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace galmot {

/// Exact rational with arbitrary-precision numerator and denominator.
/// Always normalized: denominator > 0, gcd(|num|, den) = 1.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

/// `a/b`, or just `a` for integers.
inline std::string to_string(const Rational& r) { return r.str(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace galmot
