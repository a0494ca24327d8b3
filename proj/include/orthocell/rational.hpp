#pragma once

// Exact scalar arithmetic. All geometry in this library is computed over
// arbitrary-precision rationals; floating point appears only in output
// formatting (OFF export).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthocell {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

inline int sign(const Rat& q) { return sgn(q); }

// Serialized form is "p" for integers and "p/q" otherwise, canonical lowest
// terms, denominator positive.
inline std::string rat_to_string(const Rat& q) {
  return q.get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

using Vec = std::vector<Rat>;

inline Vec zero_vec(int n) { return Vec(static_cast<size_t>(n)); }

inline Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(const Rat& c, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const Vec& a) {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

// Total order used for every canonical form in the library.
inline int cmp_vec(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

inline bool lex_less(const Vec& a, const Vec& b) { return cmp_vec(a, b) < 0; }

inline std::string vec_to_string(const Vec& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    s += rat_to_string(a[i]);
  }
  return s + ")";
}

// Points are coordinate vectors; the ambient dimension is the length.
using Point = Vec;

}  // namespace orthocell
