#pragma once

// Signed-permutation isometries (the symmetries of cubes and orthotopes) and
// general invertible affine maps. A signed permutation sends e_i to
// sign[i] * e_{perm[i]}; composing with a translation gives every isometry
// this library needs. General affine maps cover coordinate scalings
// (non-isometric) used to stretch cubes onto orthotopes.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orthocell/linalg.hpp"
#include "orthocell/rational.hpp"

namespace orthocell {

struct SignedPerm {
  std::vector<int> perm;   // image axis of axis i
  std::vector<int> signs;  // +1 or -1 per source axis

  int dim() const { return static_cast<int>(perm.size()); }

  static SignedPerm identity(int n) {
    SignedPerm p;
    p.perm.resize(static_cast<size_t>(n));
    p.signs.assign(static_cast<size_t>(n), 1);
    for (int i = 0; i < n; ++i) p.perm[static_cast<size_t>(i)] = i;
    return p;
  }

  Vec apply(const Vec& x) const {
    Vec y(x.size());
    for (size_t i = 0; i < x.size(); ++i)
      y[static_cast<size_t>(perm[i])] = signs[i] > 0 ? x[i] : -x[i];
    return y;
  }

  // this after other: (a*b)(x) = a(b(x)).
  SignedPerm compose(const SignedPerm& other) const {
    SignedPerm r;
    size_t n = perm.size();
    r.perm.resize(n);
    r.signs.resize(n);
    for (size_t i = 0; i < n; ++i) {
      size_t mid = static_cast<size_t>(other.perm[i]);
      r.perm[i] = perm[mid];
      r.signs[i] = other.signs[i] * signs[mid];
    }
    return r;
  }

  SignedPerm inverse() const {
    SignedPerm r;
    size_t n = perm.size();
    r.perm.resize(n);
    r.signs.resize(n);
    for (size_t i = 0; i < n; ++i) {
      size_t j = static_cast<size_t>(perm[i]);
      r.perm[j] = static_cast<int>(i);
      r.signs[j] = signs[i];
    }
    return r;
  }

  bool is_identity() const {
    for (size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != static_cast<int>(i) || signs[i] != 1) return false;
    return true;
  }

  Mat matrix() const {
    Mat m(perm.size(), zero_vec(dim()));
    for (size_t i = 0; i < perm.size(); ++i)
      m[static_cast<size_t>(perm[i])][i] = signs[i];
    return m;
  }

  bool operator==(const SignedPerm& o) const {
    return perm == o.perm && signs == o.signs;
  }
  bool operator<(const SignedPerm& o) const {
    if (perm != o.perm) return perm < o.perm;
    return signs < o.signs;
  }
};

struct AffineSignedIsometry {
  SignedPerm linear;
  Vec translation;

  int dim() const { return linear.dim(); }

  static AffineSignedIsometry identity(int n) {
    return {SignedPerm::identity(n), zero_vec(n)};
  }
  static AffineSignedIsometry make_translation(Vec t) {
    SignedPerm p = SignedPerm::identity(static_cast<int>(t.size()));
    return {std::move(p), std::move(t)};
  }

  Vec apply(const Vec& x) const { return add(linear.apply(x), translation); }

  AffineSignedIsometry compose(const AffineSignedIsometry& other) const {
    // (this ∘ other)(x) = L1 L2 x + L1 t2 + t1
    return {linear.compose(other.linear),
            add(linear.apply(other.translation), translation)};
  }

  AffineSignedIsometry inverse() const {
    SignedPerm li = linear.inverse();
    return {li, scale(Rat(-1), li.apply(translation))};
  }

  bool is_identity() const {
    return linear.is_identity() && is_zero(translation);
  }

  bool operator==(const AffineSignedIsometry& o) const {
    return linear == o.linear && cmp_vec(translation, o.translation) == 0;
  }
  bool operator<(const AffineSignedIsometry& o) const {
    if (!(linear == o.linear)) return linear < o.linear;
    return lex_less(translation, o.translation);
  }

  std::string to_string() const {
    std::string s = "[perm(";
    for (size_t i = 0; i < linear.perm.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(linear.perm[i] + 1);
    }
    s += ") signs(";
    for (size_t i = 0; i < linear.signs.size(); ++i) {
      if (i) s += ",";
      s += linear.signs[i] > 0 ? "+" : "-";
    }
    s += ") t=" + vec_to_string(translation) + "]";
    return s;
  }
};

// General invertible affine map x |-> A x + b.
struct AffineMap {
  Mat a;
  Vec b;

  int dim() const { return static_cast<int>(a.size()); }

  static AffineMap identity(int n) { return {identity_mat(n), zero_vec(n)}; }
  static AffineMap scaling(const Rat& c, int n) {
    Mat m = identity_mat(n);
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = c;
    return {std::move(m), zero_vec(n)};
  }
  static AffineMap diagonal(const Vec& d) {
    int n = static_cast<int>(d.size());
    Mat m = identity_mat(n);
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = d[static_cast<size_t>(i)];
    return {std::move(m), zero_vec(n)};
  }
  static AffineMap make_translation(Vec t) {
    int n = static_cast<int>(t.size());
    return {identity_mat(n), std::move(t)};
  }
  static AffineMap from_isometry(const AffineSignedIsometry& g) {
    return {g.linear.matrix(), g.translation};
  }

  Vec apply(const Vec& x) const { return add(mat_apply(a, x), b); }

  AffineMap compose(const AffineMap& other) const {
    return {mat_mul(a, other.a), add(mat_apply(a, other.b), b)};
  }

  std::optional<AffineMap> inverse() const {
    std::optional<Mat> ai = orthocell::inverse(a);
    if (!ai) return std::nullopt;
    return AffineMap{*ai, scale(Rat(-1), mat_apply(*ai, b))};
  }

  bool is_invertible() const { return det(a) != 0; }

  bool operator==(const AffineMap& o) const {
    if (b.size() != o.b.size() || cmp_vec(b, o.b) != 0) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (cmp_vec(a[i], o.a[i]) != 0) return false;
    return true;
  }
};

}  // namespace orthocell
