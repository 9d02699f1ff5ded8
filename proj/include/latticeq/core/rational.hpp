#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace latticeq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "-3/2" or "0.125" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline BigInt numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denom(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denom(r) == 1; }

/// Floor of a/b for b > 0.
BigInt floor_div(const BigInt& a, const BigInt& b);

/// Non-negative residue of a modulo m (m > 0).
BigInt mod_floor(const BigInt& a, const BigInt& m);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Throws PreconditionError when the value does not fit.
std::int64_t to_int64(const BigInt& v);

double to_double(const Rational& r);

}  // namespace latticeq
