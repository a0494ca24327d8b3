#pragma once

// Exact k-dimensional Euclidean volumes. A k-cell spanning a non-axis-aligned
// flat has irrational Euclidean volume (a diagonal segment of the square has
// length 2*sqrt(2)), so volumes are carried as exact quadratic values
// r*sqrt(m) with rational r >= 0 and integer radicand m >= 1. Two values are
// compared by cross-squaring; sums only ever combine cells lying in parallel
// flats, where the ratio of radicands is a perfect rational square.

#include <stdexcept>
#include <string>

#include "orthocell/rational.hpp"

namespace orthocell {

struct Volume {
  Rat r;  // nonnegative rational factor
  Int m;  // integer radicand, >= 1; value is r*sqrt(m)

  Volume() : r(0), m(1) {}
  Volume(Rat r_, Int m_) : r(std::move(r_)), m(std::move(m_)) {
    if (sgn(m) <= 0) throw std::invalid_argument("Volume: radicand must be positive");
    if (sgn(r) < 0) throw std::invalid_argument("Volume: negative volume");
    if (r == 0) m = 1;
  }
  static Volume zero() { return Volume(); }
  static Volume rational(const Rat& q) { return Volume(q, 1); }

  bool operator==(const Volume& o) const { return r * r * m == o.r * o.r * o.m; }
  bool operator!=(const Volume& o) const { return !(*this == o); }

  // Defined whenever both values live over commensurable radicands, which is
  // guaranteed for cells in parallel flats. Throws otherwise.
  Volume operator+(const Volume& o) const {
    if (r == 0) return o;
    if (o.r == 0) return *this;
    if (m == o.m) return Volume(r + o.r, m);
    // o.m/m must be the square of a rational: check both quotients.
    Rat q(o.m, m);
    q.canonicalize();
    Int num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
      Int sn, sd;
      mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
      return Volume(r + o.r * Rat(sn, sd), m);
    }
    throw std::domain_error("Volume: adding incommensurable radicands");
  }
  Volume& operator+=(const Volume& o) { return *this = *this + o; }

  Volume scaled(const Rat& c) const {
    if (sgn(c) < 0) throw std::invalid_argument("Volume::scaled: negative factor");
    return Volume(r * c, m);
  }

  bool is_rational() const {
    return r == 0 || mpz_perfect_square_p(m.get_mpz_t());
  }
  // The plain rational value; only valid when is_rational().
  Rat rational_value() const {
    if (r == 0) return Rat(0);
    if (!mpz_perfect_square_p(m.get_mpz_t()))
      throw std::domain_error("Volume: irrational value");
    Int s;
    mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
    return r * Rat(s);
  }

  std::string to_string() const {
    if (is_rational()) return rat_to_string(rational_value());
    return rat_to_string(r) + "*sqrt(" + m.get_str() + ")";
  }
};

}  // namespace orthocell
