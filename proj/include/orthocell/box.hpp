#pragma once

// Axis-aligned boxes (orthotopes), possibly degenerate along some axes.
// These are the raw rectangular shapes; ConvexCell is the canonical
// polytope form used by the decomposition machinery.

#include <string>
#include <vector>

#include "orthocell/convex_cell.hpp"
#include "orthocell/error.hpp"
#include "orthocell/rational.hpp"

namespace orthocell {

struct Box {
  Vec lo;
  Vec hi;

  int ambient() const { return static_cast<int>(lo.size()); }

  // Number of non-degenerate axes.
  int dim() const {
    int k = 0;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] != hi[i]) ++k;
    return k;
  }

  static Box bounds(Vec l, Vec h) {
    if (l.size() != h.size())
      throw error(Error::Code::DimensionMismatch, "box bounds size mismatch");
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i] > h[i])
        throw error(Error::Code::BadInput, "box with lo > hi on axis " +
                                               std::to_string(i));
    return Box{std::move(l), std::move(h)};
  }

  // [-1,1]^n
  static Box centered_cube(int n) {
    return Box{Vec(n, Rat(-1)), Vec(n, Rat(1))};
  }

  // [0,a_1] x ... x [0,a_n]
  static Box corner(const Vec& sides) {
    for (const Rat& a : sides)
      if (a <= 0) throw error(Error::Code::BadInput, "box side must be > 0");
    return Box{zero_vec(static_cast<int>(sides.size())), sides};
  }

  Vec center() const {
    Vec c(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) c[i] = (lo[i] + hi[i]) / 2;
    return c;
  }

  Vec halfwidths() const {
    Vec w(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) w[i] = (hi[i] - lo[i]) / 2;
    return w;
  }

  // Full-dimensional with all sides equal.
  bool is_cube() const {
    if (lo.empty()) return true;
    Rat s = hi[0] - lo[0];
    if (s == 0) return false;
    for (std::size_t i = 1; i < lo.size(); ++i)
      if (hi[i] - lo[i] != s) return false;
    return true;
  }

  bool contains(const Point& p) const {
    if (p.size() != lo.size())
      throw error(Error::Code::DimensionMismatch, "point/box dimension");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }

  Box translated(const Vec& t) const {
    if (t.size() != lo.size())
      throw error(Error::Code::DimensionMismatch, "translation dimension");
    return Box{add(lo, t), add(hi, t)};
  }

  ConvexCell to_cell() const { return ConvexCell::box(lo, hi); }

  // All 3^k faces (per non-degenerate axis: lo endpoint, hi endpoint, or the
  // whole interval), the box itself included.  Degenerate axes contribute a
  // single choice.
  std::vector<Box> faces() const {
    std::vector<Box> out;
    out.push_back(*this);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] == hi[i]) continue;
      std::size_t m = out.size();
      for (std::size_t j = 0; j < m; ++j) {
        Box at_lo = out[j];
        at_lo.hi[i] = at_lo.lo[i];
        Box at_hi = out[j];
        at_hi.lo[i] = at_hi.hi[i];
        out.push_back(std::move(at_lo));
        out.push_back(std::move(at_hi));
      }
    }
    return out;
  }

  std::vector<Box> proper_faces() const {
    std::vector<Box> out = faces();
    out.erase(out.begin());
    return out;
  }

  // The face where the given axis is pinned to its lower (side < 0) or upper
  // (side > 0) endpoint.
  Box facet(int axis, int side) const {
    Box f = *this;
    if (axis < 0 || axis >= ambient())
      throw error(Error::Code::BadInput, "facet axis out of range");
    if (side > 0)
      f.lo[axis] = f.hi[axis];
    else
      f.hi[axis] = f.lo[axis];
    return f;
  }

  friend bool operator==(const Box& a, const Box& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  friend bool operator!=(const Box& a, const Box& b) { return !(a == b); }
  friend bool operator<(const Box& a, const Box& b) {
    if (int c = cmp_vec(a.lo, b.lo)) return c < 0;
    return cmp_vec(a.hi, b.hi) < 0;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (i) s += " x ";
      if (lo[i] == hi[i])
        s += "{" + rat_to_string(lo[i]) + "}";
      else
        s += "[" + rat_to_string(lo[i]) + "," + rat_to_string(hi[i]) + "]";
    }
    if (lo.empty()) s = "{()}";
    return s;
  }
};

}  // namespace orthocell
