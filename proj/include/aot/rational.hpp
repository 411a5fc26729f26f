#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace aot {

// Exact arithmetic used throughout: arbitrary-precision integers and
// rationals (GMP-backed).  Rationals are kept in canonical form by the
// backend, so equality is structural.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Canonical textual form "num/den" (always includes the denominator, even
// when it is 1, so parsers never need to special-case integers).
inline std::string rat_to_string(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "num/den" or a bare integer "num".
inline Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

inline int sign_of(const Int& v) { return v.sign(); }
inline int sign_of(const Rat& v) { return v.sign(); }

}  // namespace aot
