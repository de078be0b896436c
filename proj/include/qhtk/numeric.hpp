#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qhtk {

// All arithmetic in this library is exact. Int is an arbitrary-precision
// integer, Rat an arbitrary-precision rational; no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// Quotient minimizing |a - q*b|; ties broken toward the truncated quotient.
// Used by the Smith normal form reduction so pivots shrink strictly.
Int div_round(const Int& a, const Int& b);

// "p/q" (or "p" when q == 1), canonical sign on the numerator.
std::string to_string(const Rat& r);
std::string to_string(const Int& a);

// Parses an integer or "p/q" rational; throws invalid_input on garbage.
Rat parse_rat(const std::string& text);

// Exact square root test: value == (root)^2 with root >= 0.
bool is_perfect_square(const Rat& value, Rat* root = nullptr);

}  // namespace qhtk
