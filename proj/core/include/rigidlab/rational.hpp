#pragma once

#include <gmpxx.h>

#include <string>

namespace rigidlab {

// Exact rationals throughout; every probability, bias, and average distance
// is a pure function of its inputs with no rounding.
using Rational = mpq_class;

inline Rational rat(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Serialized as "p/q" in lowest terms, "p/1" kept explicit for integers.
inline std::string rat_str(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double rat_double(const Rational& r) { return r.get_d(); }

// Exact power with small non-negative exponent.
inline Rational rat_pow(const Rational& base, int k) {
  Rational acc = 1;
  for (int i = 0; i < k; ++i) acc *= base;
  return acc;
}

}  // namespace rigidlab
