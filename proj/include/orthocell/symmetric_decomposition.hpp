#pragma once

// Symmetric cell decompositions of cubes.
//
// The building blocks are the halfspaces {x in I^d : a*x_i >= b*x_j} with
// signs a, b.  A subset of them is "fundamental" when it separates every pair
// of coordinate axes both ways; intersecting the cube with a fundamental
// subset yields a cone at the origin.  The family ko(d) collects all such
// intersections.  It is computed from the minimal fundamental subsets (one
// choice per two-element family) and then closed under pairwise intersection,
// which reaches the same family as enumerating every fundamental subset.
//
// k(d) decomposes the cube: each of the 3^d faces of the cube contributes a
// copy of ko of its own dimension, mapped onto the face by the similarity
// that matches centers and scales.  k_subdivided(n, l) splits the cube into
// l^n congruent subcubes and glues the per-subcube copies of k(n).

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "orthocell/box.hpp"
#include "orthocell/cell_complex.hpp"
#include "orthocell/convex_cell.hpp"
#include "orthocell/error.hpp"
#include "orthocell/isometry.hpp"
#include "orthocell/rational.hpp"

namespace orthocell {

// The halfspace {x in I^d : a*x_i >= b*x_j}, with 0-based axes and signs
// a, b in {-1, +1}.  Swapping the roles of the axes negates both signs, and
// i == j with a == b puts no constraint at all.
struct HalfspaceSpec {
  int i = 0;
  int j = 0;
  int a = 1;
  int b = 1;

  bool vacuous() const { return i == j && a == b; }

  HalfspaceSpec canonical() const {
    if (i > j) return HalfspaceSpec{j, i, -b, -a};
    return *this;
  }

  friend bool operator==(const HalfspaceSpec& x, const HalfspaceSpec& y) {
    return x.i == y.i && x.j == y.j && x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const HalfspaceSpec& x, const HalfspaceSpec& y) {
    return std::tie(x.i, x.j, x.a, x.b) < std::tie(y.i, y.j, y.a, y.b);
  }

  // a*x_i - b*x_j >= 0.  For i == j, a != b this degenerates to a sign
  // condition on the single coordinate.
  Constraint row(int d) const {
    Vec v = zero_vec(d);
    v[i] += a;
    v[j] -= b;
    return Constraint{std::move(v), Rat(0)};
  }

  ConvexCell cell(int d) const {
    if (i < 0 || i >= d || j < 0 || j >= d)
      throw error(Error::Code::BadInput, "halfspace axis out of range");
    std::vector<Constraint> ineqs;
    for (int t = 0; t < d; ++t) {
      Vec lo = zero_vec(d), hi = zero_vec(d);
      lo[t] = 1;
      hi[t] = -1;
      ineqs.push_back({std::move(lo), Rat(-1)});
      ineqs.push_back({std::move(hi), Rat(-1)});
    }
    if (!vacuous()) ineqs.push_back(row(d));
    auto c = ConvexCell::from_hrep(d, ineqs);
    if (!c) throw error(Error::Code::EmptyCell, "halfspace cell is empty");
    return *std::move(c);
  }

  std::string to_string() const {
    return "H[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "](" +
           (a > 0 ? "+" : "-") + "," + (b > 0 ? "+" : "-") + ")";
  }
};

inline std::vector<HalfspaceSpec> all_halfspace_specs(int d) {
  std::vector<HalfspaceSpec> out;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      for (int a : {1, -1})
        for (int b : {1, -1}) out.push_back(HalfspaceSpec{i, j, a, b});
  return out;
}

// A subset is fundamental iff for every pair i <= j it contains a member of
// {H[i,j](+,-), H[i,j](-,+)} and a member of {H[i,j](+,+), H[i,j](-,-)},
// comparing halfspaces up to the swap identity.
inline bool is_fundamental(int d, const std::vector<HalfspaceSpec>& specs) {
  std::set<HalfspaceSpec> have;
  for (const HalfspaceSpec& s : specs) have.insert(s.canonical());
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      bool opposite = have.count({i, j, 1, -1}) || have.count({i, j, -1, 1});
      bool aligned = have.count({i, j, 1, 1}) || have.count({i, j, -1, -1});
      if (!opposite || !aligned) return false;
    }
  return true;
}

namespace detail {

inline std::vector<Constraint> cube_rows(int d) {
  std::vector<Constraint> rows;
  for (int t = 0; t < d; ++t) {
    Vec lo = zero_vec(d), hi = zero_vec(d);
    lo[t] = 1;
    hi[t] = -1;
    rows.push_back({std::move(lo), Rat(-1)});
    rows.push_back({std::move(hi), Rat(-1)});
  }
  return rows;
}

inline ConvexCell intersect_fundamental(int d,
                                        const std::vector<HalfspaceSpec>& s) {
  std::vector<Constraint> ineqs = cube_rows(d);
  for (const HalfspaceSpec& h : s)
    if (!h.vacuous()) ineqs.push_back(h.row(d));
  auto c = ConvexCell::from_hrep(d, ineqs);
  if (!c)
    throw error(Error::Code::EmptyCell,
                "fundamental intersection is empty");  // contains the origin
  return *std::move(c);
}

// Grows the family until it is closed under pairwise intersection.
inline void close_under_intersection(std::vector<ConvexCell>& cells) {
  std::set<ConvexCell> seen(cells.begin(), cells.end());
  cells.assign(seen.begin(), seen.end());
  for (std::size_t x = 1; x < cells.size(); ++x)
    for (std::size_t y = 0; y < x; ++y) {
      if (bbox_disjoint(cells[x], cells[y])) continue;
      std::optional<ConvexCell> meet = intersect_cells(cells[x], cells[y]);
      if (!meet) continue;
      if (seen.insert(*meet).second) cells.push_back(*std::move(meet));
    }
}

}  // namespace detail

// The cone family at the center of the cube I^d: all intersections of the
// cube with fundamental halfspace subsets.  Every member contains the origin.
// For d = 0 this is the single point.
inline const CellComplex& build_ko(int d) {
  static std::map<int, CellComplex> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  if (d < 0) throw error(Error::Code::BadInput, "negative dimension");

  std::vector<ConvexCell> cells;
  if (d == 0) {
    cells.push_back(ConvexCell::point(Point{}));
  } else {
    // Minimal fundamental subsets: one choice from each two-element family.
    struct Family {
      HalfspaceSpec opposite[2];
      HalfspaceSpec aligned[2];
    };
    std::vector<Family> pairs;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        pairs.push_back({{{i, j, 1, -1}, {i, j, -1, 1}},
                         {{i, j, 1, 1}, {i, j, -1, -1}}});
    std::size_t total = std::size_t{1} << (2 * pairs.size());  // 4^pairs
    std::set<std::vector<HalfspaceSpec>> seen_subsets;
    std::set<ConvexCell> seen_cells;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<HalfspaceSpec> subset;
      std::size_t c = code;
      for (const Family& f : pairs) {
        subset.push_back(f.opposite[c & 1]);
        subset.push_back(f.aligned[(c >> 1) & 1]);
        c >>= 2;
      }
      std::vector<HalfspaceSpec> key;
      for (const HalfspaceSpec& h : subset)
        if (!h.vacuous()) key.push_back(h.canonical());
      std::sort(key.begin(), key.end());
      if (!seen_subsets.insert(key).second) continue;
      ConvexCell cell = detail::intersect_fundamental(d, key);
      if (seen_cells.insert(cell).second) cells.push_back(std::move(cell));
    }
    detail::close_under_intersection(cells);
  }

  CellComplex k = CellComplex::from_cells(
      d, std::move(cells), {Box::centered_cube(d).to_cell()});
  return cache.emplace(d, std::move(k)).first->second;
}

// Full symmetric decomposition of the cube I^d: every face of the cube
// carries a scaled copy of the cone family of its own dimension.
inline const CellComplex& build_k(int d) {
  static std::map<int, CellComplex> cache;
  static std::mutex mutex;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  if (d < 0) throw error(Error::Code::BadInput, "negative dimension");

  std::vector<ConvexCell> cells;
  for (const Box& face : Box::centered_cube(d).faces()) {
    int k = face.dim();
    std::vector<int> free_axes;
    for (int t = 0; t < d; ++t)
      if (face.lo[t] != face.hi[t]) free_axes.push_back(t);
    for (const ConvexCell& c : build_ko(k).cells()) {
      std::vector<Point> mapped;
      for (const Point& v : c.verts()) {
        Point y = face.lo;  // pinned coordinates; free ones overwritten
        for (int t = 0; t < k; ++t) y[free_axes[t]] = v[t];
        mapped.push_back(std::move(y));
      }
      cells.push_back(ConvexCell::from_points(d, mapped));
    }
  }
  CellComplex out = CellComplex::from_cells(
      d, std::move(cells), {Box::centered_cube(d).to_cell()});
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(d, std::move(out)).first->second;
}

// The cells of k(d) lying in the cube's boundary; its space is the union of
// the cube's facets.
inline CellComplex boundary_k(int d) {
  std::vector<ConvexCell> facet_pieces;
  Box cube = Box::centered_cube(d);
  for (int axis = 0; axis < d; ++axis)
    for (int side : {-1, 1})
      facet_pieces.push_back(cube.facet(axis, side).to_cell());
  return build_k(d).restricted_to_union(std::move(facet_pieces));
}

// The face complex of a box: all 3^k faces as cells.
inline CellComplex box_face_complex(const Box& b) {
  std::vector<ConvexCell> cells;
  for (const Box& f : b.faces()) cells.push_back(f.to_cell());
  return CellComplex::from_cells(b.ambient(), std::move(cells), {b.to_cell()});
}

// The diagonal map sending a centered box onto the standard cube I^d.
// Throws NotStandard when the box is not centered at the origin.
inline AffineMap cubic_stretching(const Box& b) {
  Vec h = b.halfwidths();
  for (const Rat& w : h)
    if (w == 0) throw error(Error::Code::BadInput, "degenerate box");
  if (!is_zero(b.center()))
    throw error(Error::Code::NotStandard, "box is not centered at the origin");
  Vec inv(h.size());
  for (std::size_t t = 0; t < h.size(); ++t) inv[t] = 1 / h[t];
  return AffineMap::diagonal(inv);
}

// The affine chart sending an arbitrary box onto the standard cube I^d:
// translate the center to the origin, then stretch each axis.
inline AffineMap standardizing_map(const Box& b) {
  Vec h = b.halfwidths();
  for (const Rat& w : h)
    if (w == 0) throw error(Error::Code::BadInput, "degenerate box");
  Vec c = b.center();
  Vec diag(h.size()), off(h.size());
  for (std::size_t t = 0; t < h.size(); ++t) {
    diag[t] = 1 / h[t];
    off[t] = -c[t] / h[t];
  }
  AffineMap m = AffineMap::diagonal(diag);
  m.b = std::move(off);
  return m;
}

// k carried onto a cube by the similarity matching centers and scale.
// Throws NotACube for boxes with unequal sides.
inline CellComplex build_k_cube(const Box& b) {
  if (!b.is_cube())
    throw error(Error::Code::NotACube, "box is not a cube: " + b.to_string());
  return build_k(b.ambient()).transformed(*standardizing_map(b).inverse());
}

// k carried onto an arbitrary box by the standardizing chart (an affine,
// generally non-conformal, image).
inline CellComplex build_k_stretched(const Box& b) {
  return build_k(b.ambient()).transformed(*standardizing_map(b).inverse());
}

// The subcube of I^n at grid position alpha in {0..l-1}^n, side length 2/l.
inline Box subcube_box(int n, int l, const std::vector<int>& alpha) {
  if (l < 1 || static_cast<int>(alpha.size()) != n)
    throw error(Error::Code::BadInput, "bad subcube position");
  Vec lo(n), hi(n);
  for (int t = 0; t < n; ++t) {
    if (alpha[t] < 0 || alpha[t] >= l)
      throw error(Error::Code::BadInput, "subcube position out of range");
    lo[t] = rat(2 * alpha[t] - l, l);
    hi[t] = rat(2 * alpha[t] + 2 - l, l);
  }
  return Box::bounds(std::move(lo), std::move(hi));
}

// The similarity carrying I^n onto the subcube at alpha.
inline AffineMap subcube_map(int n, int l, const std::vector<int>& alpha) {
  Box b = subcube_box(n, l, alpha);
  return *standardizing_map(b).inverse();
}

// The subdivided decomposition: I^n split into l^n congruent subcubes, each
// carrying a copy of k(n), glued along shared faces.
inline CellComplex build_k_subdivided(int n, int l) {
  if (l < 1) throw error(Error::Code::BadInput, "subdivision level must be >= 1");
  std::vector<std::pair<ConvexCell, CellComplex>> parts;
  std::vector<int> alpha(n, 0);
  while (true) {
    Box b = subcube_box(n, l, alpha);
    parts.emplace_back(b.to_cell(), build_k_cube(b));
    int t = 0;
    for (; t < n; ++t) {
      if (++alpha[t] < l) break;
      alpha[t] = 0;
    }
    if (t == n) break;
  }
  return glue_refinements(n, parts);
}

// The subdivided decomposition carried onto a box by its standardizing chart.
inline CellComplex build_k_subdivided_stretched(const Box& b, int l) {
  return build_k_subdivided(b.ambient(), l)
      .transformed(*standardizing_map(b).inverse());
}

}  // namespace orthocell
