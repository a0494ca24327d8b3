#pragma once

// Compact convex rational polytopes ("cells") in ambient dimension <= 4.
//
// A cell is stored canonically: the lexicographically sorted list of its
// vertices (the complete equality invariant), its affine dimension, the
// equations cutting out its affine hull, and one inequality per facet.
// Construction from an inequality system enumerates basic feasible solutions
// (every subset of ambient-dim many constraints), which is exhaustive and
// exact at these dimensions; construction from a point set enumerates
// supporting hyperplanes spanned by subsets of the points. Coefficients in
// scope are tiny integers after clearing denominators, so the vertex
// enumeration runs in 128-bit integer arithmetic with an automatic fallback
// to arbitrary-precision rationals.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthocell/error.hpp"
#include "orthocell/isometry.hpp"
#include "orthocell/linalg.hpp"
#include "orthocell/rational.hpp"
#include "orthocell/volume.hpp"

namespace orthocell {

// a . x >= b, or a . x == b where used as an equation.
struct Constraint {
  Vec a;
  Rat b;
};

namespace detail {

using i128 = __int128;

inline Int int_from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                            : static_cast<unsigned __int128>(v);
  Int hi(static_cast<unsigned long>(u >> 64));
  Int lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  Int r = (hi << 64) + lo;
  return neg ? Int(-r) : r;
}

// Clears denominators and divides by the content; canonical equations also
// fix the sign of the leading coefficient.
inline void normalize_row(Vec& a, Rat& b, bool canonical_sign) {
  Int l = 1;
  for (const Rat& x : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b.get_den_mpz_t());
  Int g = 0;
  std::vector<Int> ia(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    ia[i] = Int(a[i] * l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ia[i].get_mpz_t());
  }
  Int ib(b * l);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ib.get_mpz_t());
  if (g == 0) g = 1;
  int flip = 1;
  if (canonical_sign) {
    for (const Int& x : ia)
      if (x != 0) {
        flip = sgn(x) < 0 ? -1 : 1;
        break;
      }
  }
  for (size_t i = 0; i < a.size(); ++i) a[i] = Rat(ia[i] * flip) / Rat(g);
  b = Rat(ib * flip) / Rat(g);
}

struct IntRows {
  // One row per constraint, integer coefficients, row[i] = (a..., b),
  // meaning a . x >= b (or == b when is_eq).
  std::vector<std::vector<long long>> rows;
  std::vector<bool> is_eq;
};

// Attempts small-integer form; fails if any coefficient is out of range.
inline bool integerize(const std::vector<Constraint>& ineqs,
                       const std::vector<Constraint>& eqs, int n, IntRows& out) {
  constexpr long long kMax = 1LL << 20;
  auto push = [&](const Constraint& c, bool eq) -> bool {
    Int l = 1;
    for (const Rat& x : c.a)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.b.get_den_mpz_t());
    std::vector<long long> row(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      Rat v = (i < n ? c.a[static_cast<size_t>(i)] : c.b) * Rat(l);
      Int iv(v);
      if (!iv.fits_slong_p()) return false;
      long s = iv.get_si();
      if (s > kMax || s < -kMax) return false;
      row[static_cast<size_t>(i)] = s;
    }
    out.rows.push_back(std::move(row));
    out.is_eq.push_back(eq);
    return true;
  };
  for (const Constraint& c : ineqs)
    if (!push(c, false)) return false;
  for (const Constraint& c : eqs)
    if (!push(c, true)) return false;
  return true;
}

template <class F>
inline void for_each_combination(int m, int k, F f) {
  if (k < 0 || k > m) return;
  std::vector<int> idx(static_cast<size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

// Fraction-free determinant, exact for entries bounded by 2^20 up to 4x4.
inline i128 det_i128(std::vector<std::vector<i128>> m) {
  int n = static_cast<int>(m.size());
  i128 d = 1;
  int sign_flip = 1;
  i128 prev = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m[static_cast<size_t>(p)][static_cast<size_t>(c)] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[static_cast<size_t>(p)], m[static_cast<size_t>(c)]);
      sign_flip = -sign_flip;
    }
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j) {
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            (m[static_cast<size_t>(c)][static_cast<size_t>(c)] * m[static_cast<size_t>(i)][static_cast<size_t>(j)] -
             m[static_cast<size_t>(i)][static_cast<size_t>(c)] * m[static_cast<size_t>(c)][static_cast<size_t>(j)]) /
            prev;
      }
      m[static_cast<size_t>(i)][static_cast<size_t>(c)] = 0;
    }
    prev = m[static_cast<size_t>(c)][static_cast<size_t>(c)];
  }
  d = prev * sign_flip;
  return d;
}

// Basic solutions of all n-subsets, filtered by feasibility. Exact.
inline std::vector<Point> enumerate_vertices_int(const IntRows& r, int n) {
  std::vector<Point> verts;
  std::vector<std::pair<std::vector<Int>, Int>> seen;  // normalized (nums, den)
  int m = static_cast<int>(r.rows.size());
  for_each_combination(m, n, [&](const std::vector<int>& idx) {
    std::vector<std::vector<i128>> a(static_cast<size_t>(n),
                                     std::vector<i128>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            r.rows[static_cast<size_t>(idx[static_cast<size_t>(i)])][static_cast<size_t>(j)];
    i128 d = det_i128(a);
    if (d == 0) return;
    // Cramer: numerator determinant per coordinate.
    std::vector<i128> num(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<i128>> aj = a;
      for (int i = 0; i < n; ++i)
        aj[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            r.rows[static_cast<size_t>(idx[static_cast<size_t>(i)])][static_cast<size_t>(n)];
      num[static_cast<size_t>(j)] = det_i128(aj);
    }
    i128 den = d;
    if (den < 0) {
      den = -den;
      for (auto& v : num) v = -v;
    }
    // Feasibility against every row.
    for (int i = 0; i < m; ++i) {
      i128 lhs = 0;
      for (int j = 0; j < n; ++j)
        lhs += static_cast<i128>(r.rows[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
               num[static_cast<size_t>(j)];
      i128 rhs = static_cast<i128>(r.rows[static_cast<size_t>(i)][static_cast<size_t>(n)]) * den;
      if (r.is_eq[static_cast<size_t>(i)] ? (lhs != rhs) : (lhs < rhs)) return;
    }
    std::vector<Int> nums(static_cast<size_t>(n));
    Int dz = int_from_i128(den);
    Int g = dz;
    for (int j = 0; j < n; ++j) {
      nums[static_cast<size_t>(j)] = int_from_i128(num[static_cast<size_t>(j)]);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nums[static_cast<size_t>(j)].get_mpz_t());
    }
    if (g != 0)
      for (auto& v : nums) v /= g;
    Int dn = dz / (g == 0 ? Int(1) : g);
    auto key = std::make_pair(nums, dn);
    for (const auto& s : seen)
      if (s == key) return;
    seen.push_back(key);
    Point p(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) p[static_cast<size_t>(j)] = Rat(nums[static_cast<size_t>(j)]) / Rat(dn);
    verts.push_back(std::move(p));
  });
  return verts;
}

inline std::vector<Point> enumerate_vertices_rat(const std::vector<Constraint>& ineqs,
                                                 const std::vector<Constraint>& eqs,
                                                 int n) {
  std::vector<Constraint> rows = ineqs;
  std::vector<bool> is_eq(ineqs.size(), false);
  for (const Constraint& c : eqs) {
    rows.push_back(c);
    is_eq.push_back(true);
  }
  std::vector<Point> verts;
  int m = static_cast<int>(rows.size());
  for_each_combination(m, n, [&](const std::vector<int>& idx) {
    Mat a;
    Vec rhs;
    for (int i : idx) {
      a.push_back(rows[static_cast<size_t>(i)].a);
      rhs.push_back(rows[static_cast<size_t>(i)].b);
    }
    if (det(a) == 0) return;
    std::optional<Vec> x = solve(a, rhs);
    if (!x) return;
    for (int i = 0; i < m; ++i) {
      Rat lhs = dot(rows[static_cast<size_t>(i)].a, *x);
      int c = cmp(lhs, rows[static_cast<size_t>(i)].b);
      if (is_eq[static_cast<size_t>(i)] ? (c != 0) : (c < 0)) return;
    }
    for (const Point& p : verts)
      if (cmp_vec(p, *x) == 0) return;
    verts.push_back(*x);
  });
  return verts;
}

}  // namespace detail

class ConvexCell {
 public:
  // ---- canonical data ----
  int ambient() const { return n_; }
  int dim() const { return k_; }
  const std::vector<Point>& verts() const { return verts_; }
  const std::vector<Constraint>& hull_equations() const { return eqs_; }
  const std::vector<Constraint>& facet_inequalities() const { return ineqs_; }
  const Vec& bbox_lo() const { return lo_; }
  const Vec& bbox_hi() const { return hi_; }

  bool is_simplex() const { return verts_.size() == static_cast<size_t>(k_) + 1; }

  bool contains_point(const Point& x) const {
    for (const Constraint& e : eqs_)
      if (dot(e.a, x) != e.b) return false;
    for (const Constraint& c : ineqs_)
      if (dot(c.a, x) < c.b) return false;
    return true;
  }

  // Membership in the relative interior: hull equations hold exactly and all
  // facet inequalities are strict. A point cell's relative interior is itself.
  bool relint_contains(const Point& x) const {
    for (const Constraint& e : eqs_)
      if (dot(e.a, x) != e.b) return false;
    for (const Constraint& c : ineqs_)
      if (dot(c.a, x) <= c.b) return false;
    return true;
  }

  bool contains_cell(const ConvexCell& inner) const {
    for (const Point& v : inner.verts_)
      if (!contains_point(v)) return false;
    return true;
  }

  Point relative_interior_point() const {
    Point p = zero_vec(n_);
    for (const Point& v : verts_) p = add(p, v);
    return scale(Rat(1, static_cast<long>(verts_.size())) , p);
  }

  int cmp(const ConvexCell& o) const {
    if (n_ != o.n_) return n_ < o.n_ ? -1 : 1;
    if (k_ != o.k_) return k_ < o.k_ ? -1 : 1;
    if (verts_.size() != o.verts_.size())
      return verts_.size() < o.verts_.size() ? -1 : 1;
    for (size_t i = 0; i < verts_.size(); ++i) {
      int c = cmp_vec(verts_[i], o.verts_[i]);
      if (c != 0) return c;
    }
    return 0;
  }
  bool operator==(const ConvexCell& o) const { return cmp(o) == 0; }
  bool operator!=(const ConvexCell& o) const { return cmp(o) != 0; }
  bool operator<(const ConvexCell& o) const { return cmp(o) < 0; }

  std::string to_string() const {
    std::string s = "cell(dim " + std::to_string(k_) + ": ";
    for (size_t i = 0; i < verts_.size(); ++i) {
      if (i) s += " ";
      s += vec_to_string(verts_[i]);
    }
    return s + ")";
  }

  // ---- constructors ----

  // Convex hull of a finite point set.
  static ConvexCell from_points(int n, std::vector<Point> pts) {
    if (pts.empty()) throw error(Error::Code::EmptyCell, "from_points: no points");
    for (const Point& p : pts)
      if (static_cast<int>(p.size()) != n)
        throw error(Error::Code::DimensionMismatch, "from_points: bad point size");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& a, const Point& b) { return cmp_vec(a, b) == 0; }),
              pts.end());
    return from_vertex_set(n, std::move(pts));
  }

  // Intersection of halfspaces (and optional equations). Returns nullopt when
  // the system is infeasible; throws when the feasible set is unbounded.
  static std::optional<ConvexCell> from_hrep(int n, std::vector<Constraint> ineqs,
                                             std::vector<Constraint> eqs = {}) {
    // Normalize, drop trivial rows, detect trivially inconsistent rows.
    auto prep = [&](std::vector<Constraint>& rows, bool eq) -> bool {
      std::vector<Constraint> out;
      for (Constraint& c : rows) {
        if (static_cast<int>(c.a.size()) != n)
          throw error(Error::Code::DimensionMismatch, "from_hrep: bad row size");
        detail::normalize_row(c.a, c.b, eq);
        if (is_zero(c.a)) {
          if (eq ? (c.b != 0) : (c.b > 0)) return false;
          continue;
        }
        bool dup = false;
        for (const Constraint& d : out)
          if (cmp_vec(d.a, c.a) == 0 && d.b == c.b) {
            dup = true;
            break;
          }
        if (!dup) out.push_back(std::move(c));
      }
      rows = std::move(out);
      return true;
    };
    if (!prep(ineqs, false) || !prep(eqs, true)) return std::nullopt;

    std::vector<Point> verts;
    detail::IntRows ir;
    if (n <= 4 && detail::integerize(ineqs, eqs, n, ir)) {
      verts = detail::enumerate_vertices_int(ir, n);
    } else {
      verts = detail::enumerate_vertices_rat(ineqs, eqs, n);
    }

    if (verts.empty()) {
      // A nonempty pointed system has a basic feasible solution; if the rows
      // span the whole dual space the system is pointed, so emptiness of the
      // candidate set certifies infeasibility. Otherwise fall back to exact
      // Fourier-Motzkin elimination to decide feasibility.
      Mat all;
      for (const Constraint& c : ineqs) all.push_back(c.a);
      for (const Constraint& c : eqs) all.push_back(c.a);
      if (rank(std::move(all)) == n) return std::nullopt;
      if (n == 0 || fm_feasible(ineqs, eqs, n))
        throw error(Error::Code::Unbounded, "from_hrep: unbounded feasible set");
      return std::nullopt;
    }

    if (!axis_bounded(ineqs, n) && recession_nontrivial(ineqs, eqs, n))
      throw error(Error::Code::Unbounded, "from_hrep: unbounded feasible set");

    std::sort(verts.begin(), verts.end(), lex_less);
    return from_vertex_set(n, std::move(verts));
  }

  static ConvexCell point(Point p) {
    int n = static_cast<int>(p.size());
    return from_vertex_set(n, {std::move(p)});
  }

  // Axis-aligned box given per-axis bounds; degenerate axes allowed.
  static ConvexCell box(const Vec& lo, const Vec& hi) {
    int n = static_cast<int>(lo.size());
    for (int i = 0; i < n; ++i)
      if (lo[static_cast<size_t>(i)] > hi[static_cast<size_t>(i)])
        throw error(Error::Code::EmptyCell, "box: empty bounds");
    std::vector<Point> corners{zero_vec(n)};
    for (int i = 0; i < n; ++i) {
      std::vector<Point> next;
      for (Point& p : corners) {
        Point q = p;
        p[static_cast<size_t>(i)] = lo[static_cast<size_t>(i)];
        next.push_back(std::move(p));
        if (hi[static_cast<size_t>(i)] != lo[static_cast<size_t>(i)]) {
          q[static_cast<size_t>(i)] = hi[static_cast<size_t>(i)];
          next.push_back(std::move(q));
        }
      }
      corners = std::move(next);
    }
    std::sort(corners.begin(), corners.end(), lex_less);
    ConvexCell c;
    c.n_ = n;
    c.verts_ = std::move(corners);
    c.k_ = 0;
    for (int i = 0; i < n; ++i) {
      Vec e = zero_vec(n);
      e[static_cast<size_t>(i)] = 1;
      if (lo[static_cast<size_t>(i)] == hi[static_cast<size_t>(i)]) {
        c.eqs_.push_back({e, lo[static_cast<size_t>(i)]});
      } else {
        ++c.k_;
        c.ineqs_.push_back({e, lo[static_cast<size_t>(i)]});
        Vec me = zero_vec(n);
        me[static_cast<size_t>(i)] = -1;
        c.ineqs_.push_back({me, -hi[static_cast<size_t>(i)]});
      }
    }
    for (Constraint& r : c.eqs_) detail::normalize_row(r.a, r.b, true);
    for (Constraint& r : c.ineqs_) detail::normalize_row(r.a, r.b, false);
    c.lo_ = lo;
    c.hi_ = hi;
    return c;
  }

  // ---- operations ----

  friend std::optional<ConvexCell> intersect_cells(const ConvexCell& x,
                                                   const ConvexCell& y) {
    if (x.n_ != y.n_)
      throw error(Error::Code::DimensionMismatch, "intersect: ambient mismatch");
    for (int i = 0; i < x.n_; ++i) {
      size_t ui = static_cast<size_t>(i);
      if (x.hi_[ui] < y.lo_[ui] || y.hi_[ui] < x.lo_[ui]) return std::nullopt;
    }
    // Containment shortcuts keep the common shared-face case cheap.
    if (x.contains_cell(y)) return y;
    if (y.contains_cell(x)) return x;
    std::vector<Constraint> ineqs = x.ineqs_;
    ineqs.insert(ineqs.end(), y.ineqs_.begin(), y.ineqs_.end());
    std::vector<Constraint> eqs = x.eqs_;
    eqs.insert(eqs.end(), y.eqs_.begin(), y.eqs_.end());
    return from_hrep(x.n_, std::move(ineqs), std::move(eqs));
  }

  // Image under a signed-permutation isometry.
  ConvexCell transformed(const AffineSignedIsometry& g) const {
    ConvexCell c;
    c.n_ = n_;
    c.k_ = k_;
    c.verts_.reserve(verts_.size());
    for (const Point& v : verts_) c.verts_.push_back(g.apply(v));
    std::sort(c.verts_.begin(), c.verts_.end(), lex_less);
    auto xf = [&](const Constraint& r, bool eq) {
      Constraint s;
      s.a = g.linear.apply(r.a);  // signed permutations are orthogonal
      s.b = r.b + dot(s.a, g.translation);
      detail::normalize_row(s.a, s.b, eq);
      return s;
    };
    for (const Constraint& r : eqs_) c.eqs_.push_back(xf(r, true));
    for (const Constraint& r : ineqs_) c.ineqs_.push_back(xf(r, false));
    c.compute_bbox();
    return c;
  }

  // Image under an invertible affine map.
  ConvexCell transformed(const AffineMap& f) const {
    std::optional<AffineMap> finv = f.inverse();
    if (!finv)
      throw error(Error::Code::BadInput, "transformed: map not invertible");
    ConvexCell c;
    c.n_ = n_;
    c.k_ = k_;
    c.verts_.reserve(verts_.size());
    for (const Point& v : verts_) c.verts_.push_back(f.apply(v));
    std::sort(c.verts_.begin(), c.verts_.end(), lex_less);
    auto xf = [&](const Constraint& r, bool eq) {
      Constraint s;
      s.a = zero_vec(n_);
      for (int j = 0; j < n_; ++j) {
        size_t uj = static_cast<size_t>(j);
        for (int i = 0; i < n_; ++i)
          s.a[uj] += r.a[static_cast<size_t>(i)] * finv->a[static_cast<size_t>(i)][uj];
      }
      // With x = finv(y) = Ainv y + t: a.x = (a^T Ainv).y + a.t, so the
      // transformed bound is b - a.t.
      s.b = r.b - dot(r.a, finv->b);
      detail::normalize_row(s.a, s.b, eq);
      return s;
    };
    for (const Constraint& r : eqs_) c.eqs_.push_back(xf(r, true));
    for (const Constraint& r : ineqs_) c.ineqs_.push_back(xf(r, false));
    c.compute_bbox();
    return c;
  }

  // Image under an arbitrary (possibly non-invertible) affine map.
  ConvexCell affine_image(const AffineMap& f) const {
    std::vector<Point> pts;
    pts.reserve(verts_.size());
    for (const Point& v : verts_) pts.push_back(f.apply(v));
    return from_points(static_cast<int>(f.a.size()), std::move(pts));
  }

  // The facets (codimension-one faces); requires dim >= 1.
  std::vector<ConvexCell> facets() const {
    if (k_ == 0)
      throw error(Error::Code::ZeroDimensional, "facets: zero-dimensional cell");
    std::vector<ConvexCell> fs;
    for (const Constraint& c : ineqs_) {
      std::vector<Point> tight;
      for (const Point& v : verts_)
        if (dot(c.a, v) == c.b) tight.push_back(v);
      fs.push_back(from_vertex_set(n_, std::move(tight)));
    }
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    return fs;
  }

  // Exact k-dimensional Euclidean volume, via triangulation from the first
  // vertex and determinants in a basis of the affine hull. Zero-dimensional
  // cells count 1.
  Volume volume() const {
    if (k_ == 0) return Volume::rational(1);
    // Basis of the affine hull from the reduced difference matrix.
    Mat diffs;
    for (size_t i = 1; i < verts_.size(); ++i)
      diffs.push_back(sub(verts_[i], verts_[0]));
    Mat basis = diffs;
    std::vector<int> piv = row_reduce(basis);
    // Coordinates in the flat: solve on the pivot columns.
    Mat bct(static_cast<size_t>(k_), zero_vec(k_));
    for (int r = 0; r < k_; ++r)
      for (int c = 0; c < k_; ++c)
        bct[static_cast<size_t>(c)][static_cast<size_t>(r)] =
            basis[static_cast<size_t>(r)][static_cast<size_t>(piv[static_cast<size_t>(c)])];
    Mat bct_inv = *inverse(bct);
    auto flat = [&](const Point& p) {
      Vec y(static_cast<size_t>(k_));
      for (int c = 0; c < k_; ++c)
        y[static_cast<size_t>(c)] = p[static_cast<size_t>(piv[static_cast<size_t>(c)])] -
                                    verts_[0][static_cast<size_t>(piv[static_cast<size_t>(c)])];
      return mat_apply(bct_inv, y);
    };
    std::vector<std::vector<Point>> simplices;
    collect_simplices(*this, simplices);
    Rat total = 0;
    for (const auto& s : simplices) {
      Mat edge;
      Vec u0 = flat(s[0]);
      for (size_t i = 1; i < s.size(); ++i) edge.push_back(sub(flat(s[i]), u0));
      Rat d = det(edge);
      total += d < 0 ? -d : d;
    }
    Rat fact = 1;
    for (int i = 2; i <= k_; ++i) fact *= i;
    total /= fact;
    // Metric distortion of the flat basis: gram determinant of the basis.
    Mat gram(static_cast<size_t>(k_), zero_vec(k_));
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        gram[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            dot(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
    Rat g = det(gram);
    // vol = total * sqrt(g); fold sqrt(p/q) = sqrt(pq)/q into the radicand.
    Int p = g.get_num(), q = g.get_den();
    Rat r = total / Rat(q);
    Int rad = p * q;
    if (mpz_perfect_square_p(rad.get_mpz_t())) {
      Int s;
      mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());
      return Volume(r * Rat(s), 1);
    }
    return Volume(r, rad);
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Point> verts_;
  std::vector<Constraint> eqs_;
  std::vector<Constraint> ineqs_;
  Vec lo_, hi_;

  void compute_bbox() {
    lo_ = verts_[0];
    hi_ = verts_[0];
    for (const Point& v : verts_)
      for (int i = 0; i < n_; ++i) {
        size_t ui = static_cast<size_t>(i);
        if (v[ui] < lo_[ui]) lo_[ui] = v[ui];
        if (v[ui] > hi_[ui]) hi_[ui] = v[ui];
      }
  }

  static void collect_simplices(const ConvexCell& c,
                                std::vector<std::vector<Point>>& out) {
    if (c.verts_.size() == static_cast<size_t>(c.k_) + 1) {
      out.push_back(c.verts_);
      return;
    }
    const Point& v0 = c.verts_[0];
    for (const Constraint& f : c.ineqs_) {
      if (dot(f.a, v0) == f.b) continue;  // apex on the facet
      std::vector<Point> tight;
      for (const Point& v : c.verts_)
        if (dot(f.a, v) == f.b) tight.push_back(v);
      ConvexCell facet = from_vertex_set(c.n_, std::move(tight));
      std::vector<std::vector<Point>> sub;
      collect_simplices(facet, sub);
      for (auto& s : sub) {
        s.push_back(v0);
        out.push_back(std::move(s));
      }
    }
  }

  static bool axis_bounded(const std::vector<Constraint>& ineqs, int n) {
    for (int i = 0; i < n; ++i) {
      bool low = false, high = false;
      for (const Constraint& c : ineqs) {
        bool axis_only = true;
        for (int j = 0; j < n; ++j)
          if (j != i && c.a[static_cast<size_t>(j)] != 0) {
            axis_only = false;
            break;
          }
        if (!axis_only) continue;
        int s = sgn(c.a[static_cast<size_t>(i)]);
        if (s > 0) low = true;
        if (s < 0) high = true;
      }
      if (!low || !high) return false;
    }
    return n > 0;
  }

  static bool recession_nontrivial(const std::vector<Constraint>& ineqs,
                                   const std::vector<Constraint>& eqs, int n) {
    Mat all;
    for (const Constraint& c : ineqs) all.push_back(c.a);
    for (const Constraint& c : eqs) all.push_back(c.a);
    int m = static_cast<int>(all.size());
    if (rank(all) < n) return true;  // a full line in the recession cone
    auto in_recession = [&](const Vec& y) {
      for (const Constraint& c : eqs)
        if (dot(c.a, y) != 0) return false;
      for (const Constraint& c : ineqs)
        if (dot(c.a, y) < 0) return false;
      return true;
    };
    bool found = false;
    detail::for_each_combination(m, n - 1, [&](const std::vector<int>& idx) {
      if (found) return;
      Mat sub;
      for (int i : idx) sub.push_back(all[static_cast<size_t>(i)]);
      std::vector<Vec> ker = nullspace(std::move(sub));
      if (ker.size() != 1) return;
      if (in_recession(ker[0]) || in_recession(scale(Rat(-1), ker[0]))) found = true;
    });
    return found;
  }

  // Exact Fourier-Motzkin feasibility for the rare rank-deficient case.
  static bool fm_feasible(std::vector<Constraint> ineqs,
                          std::vector<Constraint> eqs, int n) {
    for (const Constraint& e : eqs) {
      ineqs.push_back(e);
      ineqs.push_back({scale(Rat(-1), e.a), -e.b});
    }
    for (int v = 0; v < n; ++v) {
      std::vector<Constraint> pos, neg, rest;
      for (Constraint& c : ineqs) {
        int s = sgn(c.a[static_cast<size_t>(v)]);
        if (s > 0) pos.push_back(std::move(c));
        else if (s < 0) neg.push_back(std::move(c));
        else rest.push_back(std::move(c));
      }
      for (const Constraint& p : pos)
        for (const Constraint& q : neg) {
          Rat cp = p.a[static_cast<size_t>(v)], cq = -q.a[static_cast<size_t>(v)];
          Constraint r{add(scale(cq, p.a), scale(cp, q.a)), cq * p.b + cp * q.b};
          detail::normalize_row(r.a, r.b, false);
          if (is_zero(r.a)) {
            if (r.b > 0) return false;
          } else {
            rest.push_back(std::move(r));
          }
        }
      std::sort(rest.begin(), rest.end(), [](const Constraint& a, const Constraint& b) {
        int c = cmp_vec(a.a, b.a);
        return c != 0 ? c < 0 : a.b < b.b;
      });
      rest.erase(std::unique(rest.begin(), rest.end(),
                             [](const Constraint& a, const Constraint& b) {
                               return cmp_vec(a.a, b.a) == 0 && a.b == b.b;
                             }),
                 rest.end());
      ineqs = std::move(rest);
    }
    for (const Constraint& c : ineqs)
      if (c.b > 0) return false;
    return true;
  }

  // Canonicalization from a deduplicated sorted vertex candidate set. Points
  // that are not extreme are dropped.
  static ConvexCell from_vertex_set(int n, std::vector<Point> pts) {
    ConvexCell c;
    c.n_ = n;
    if (pts.empty()) throw error(Error::Code::EmptyCell, "empty vertex set");
    if (pts.size() > 64)
      throw error(Error::Code::BadInput, "vertex set too large for this scope");
    if (pts.size() == 1) {
      c.k_ = 0;
      c.verts_ = std::move(pts);
      for (int i = 0; i < n; ++i) {
        Vec e = zero_vec(n);
        e[static_cast<size_t>(i)] = 1;
        c.eqs_.push_back({e, c.verts_[0][static_cast<size_t>(i)]});
      }
      c.compute_bbox();
      return c;
    }

    // Affine hull: reduced difference basis and its orthogonal equations.
    Mat diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    Mat basis = diffs;
    std::vector<int> piv = row_reduce(basis);
    int k = static_cast<int>(piv.size());
    c.k_ = k;
    for (Vec& normal : nullspace(basis)) {
      Rat b = dot(normal, pts[0]);
      Constraint e{std::move(normal), b};
      detail::normalize_row(e.a, e.b, true);
      c.eqs_.push_back(std::move(e));
    }
    std::sort(c.eqs_.begin(), c.eqs_.end(), [](const Constraint& a, const Constraint& b) {
      int q = cmp_vec(a.a, b.a);
      return q != 0 ? q < 0 : a.b < b.b;
    });

    // Coordinates within the flat, via the pivot columns of the basis.
    Mat bct(static_cast<size_t>(k), zero_vec(k));
    for (int r = 0; r < k; ++r)
      for (int col = 0; col < k; ++col)
        bct[static_cast<size_t>(col)][static_cast<size_t>(r)] =
            basis[static_cast<size_t>(r)][static_cast<size_t>(piv[static_cast<size_t>(col)])];
    Mat bct_inv = *inverse(bct);
    std::vector<Vec> flat(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      Vec y(static_cast<size_t>(k));
      for (int col = 0; col < k; ++col)
        y[static_cast<size_t>(col)] = pts[i][static_cast<size_t>(piv[static_cast<size_t>(col)])] -
                                      pts[0][static_cast<size_t>(piv[static_cast<size_t>(col)])];
      flat[i] = mat_apply(bct_inv, y);
    }

    // Supporting hyperplanes spanned by k-subsets of the points.
    struct Facet {
      Vec w;
      Rat cval;
      uint64_t tight = 0;
    };
    std::vector<Facet> facets;
    int m = static_cast<int>(pts.size());
    detail::for_each_combination(m, k, [&](const std::vector<int>& idx) {
      uint64_t mask = 0;
      for (int i : idx) mask |= 1ULL << i;
      for (const Facet& f : facets)
        if ((mask & f.tight) == mask) return;  // hyperplane already found
      Mat d;
      for (size_t j = 1; j < idx.size(); ++j)
        d.push_back(sub(flat[static_cast<size_t>(idx[j])], flat[static_cast<size_t>(idx[0])]));
      if (k > 1) {
        std::vector<Vec> ker = nullspace(d);
        if (ker.size() != 1) return;  // degenerate subset
        finish_facet(std::move(ker[0]), idx, flat, facets);
      } else {
        Vec w(1, Rat(1));
        finish_facet(std::move(w), idx, flat, facets);
      }
    });

    // Lift facet inequalities to ambient functionals.
    for (const Facet& f : facets) {
      Vec a = zero_vec(n);
      Vec wt = mat_apply(transpose(bct_inv), f.w);
      for (int col = 0; col < k; ++col)
        a[static_cast<size_t>(piv[static_cast<size_t>(col)])] = wt[static_cast<size_t>(col)];
      Rat b = f.cval + dot(a, pts[0]);
      Constraint cn{std::move(a), b};
      detail::normalize_row(cn.a, cn.b, false);
      c.ineqs_.push_back(std::move(cn));
    }
    std::sort(c.ineqs_.begin(), c.ineqs_.end(), [](const Constraint& a, const Constraint& b) {
      int q = cmp_vec(a.a, b.a);
      return q != 0 ? q < 0 : a.b < b.b;
    });

    // Vertices: points whose tight facet normals span the flat.
    for (size_t i = 0; i < pts.size(); ++i) {
      Mat tight;
      for (const Facet& f : facets)
        if (f.tight & (1ULL << i)) tight.push_back(f.w);
      if (static_cast<int>(tight.size()) >= k && rank(std::move(tight)) == k)
        c.verts_.push_back(pts[i]);
    }
    c.compute_bbox();
    return c;
  }

  template <class FacetVec>
  static void finish_facet(Vec w, const std::vector<int>& idx,
                           const std::vector<Vec>& flat, FacetVec& facets) {
    Rat cval = dot(w, flat[static_cast<size_t>(idx[0])]);
    bool all_ge = true, all_le = true;
    uint64_t tight = 0;
    for (size_t i = 0; i < flat.size(); ++i) {
      int s = ::cmp(dot(w, flat[i]), cval);
      if (s < 0) all_ge = false;
      if (s > 0) all_le = false;
      if (s == 0) tight |= 1ULL << i;
      if (!all_ge && !all_le) return;  // not supporting
    }
    if (!all_ge) {
      w = scale(Rat(-1), w);
      cval = -cval;
    }
    Vec wb = w;
    wb.push_back(cval);
    Rat dummy = 0;
    detail::normalize_row(wb, dummy, false);
    cval = wb.back();
    wb.pop_back();
    w = wb;
    for (const auto& f : facets)
      if (cmp_vec(f.w, w) == 0 && f.cval == cval) return;
    facets.push_back({std::move(w), std::move(cval), tight});
  }

  static Mat transpose(const Mat& m) {
    size_t r = m.size(), c = r ? m[0].size() : 0;
    Mat t(c, Vec(r));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
    return t;
  }
};

std::optional<ConvexCell> intersect_cells(const ConvexCell& x, const ConvexCell& y);

struct ConeResult {
  ConvexCell cell;
  bool degenerate;  // apex lay in the affine hull of the base
};

// Union of segments from the apex to every point of the base.
inline ConeResult cone(const Point& apex, const ConvexCell& base) {
  std::vector<Point> pts = base.verts();
  pts.push_back(apex);
  ConvexCell c = ConvexCell::from_points(base.ambient(), std::move(pts));
  return {c, c.dim() == base.dim()};
}

}  // namespace orthocell
