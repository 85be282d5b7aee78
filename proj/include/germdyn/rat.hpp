#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <stdexcept>
#include <string>

namespace germdyn {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int t = n / d;
  if (n < 0 && t * d != n) --t;
  return t;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

std::string rat_str(const Rat& q);
Rat rat_parse(const std::string& s);

}  // namespace germdyn
