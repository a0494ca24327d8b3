#pragma once

// Finite symmetry groups of cubes and boxes, and the two symmetry properties
// a decomposition can be checked against:
//
//  * invariance: every group element permutes the cell family.
//  * stabilizer property: whenever a group element maps a point of a cell
//    back into the same cell, the point is fixed.  Equivalently, for a cell H
//    and element g, g restricted to the intersection of H with g^-1(H) is
//    the identity.  The exact
//    check tests the vertices of that intersection (an affine map fixing all
//    vertices fixes the hull); the sampled check tests random rational
//    relative-interior points with a recorded seed, trading completeness for
//    independence from the intersection machinery.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "orthocell/box.hpp"
#include "orthocell/cell_complex.hpp"
#include "orthocell/convex_cell.hpp"
#include "orthocell/isometry.hpp"
#include "orthocell/parallel.hpp"
#include "orthocell/rational.hpp"
#include "orthocell/report.hpp"

namespace orthocell {

inline std::vector<SignedPerm> enumerate_signed_perms(int d) {
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  std::vector<SignedPerm> out;
  do {
    for (std::uint32_t bits = 0; bits < (1u << d); ++bits) {
      SignedPerm g;
      g.perm = perm;
      g.signs.assign(d, 1);
      for (int i = 0; i < d; ++i)
        if (bits & (1u << i)) g.signs[i] = -1;
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// The full symmetry group of I^d: all signed permutations, order 2^d * d!.
inline std::vector<AffineSignedIsometry> enumerate_cube_symmetries(int d) {
  std::vector<AffineSignedIsometry> out;
  for (SignedPerm& g : enumerate_signed_perms(d))
    out.push_back(AffineSignedIsometry{std::move(g), zero_vec(d)});
  return out;
}

// The symmetry group of an arbitrary box: signed permutations that match the
// half-width of every axis to its image axis, conjugated by the translation
// to the box center.
inline std::vector<AffineSignedIsometry> enumerate_box_symmetries(const Box& b) {
  int d = b.ambient();
  Vec h = b.halfwidths();
  Vec c = b.center();
  std::vector<AffineSignedIsometry> out;
  for (SignedPerm& g : enumerate_signed_perms(d)) {
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) ok = (h[g.perm[i]] == h[i]);
    if (!ok) continue;
    Vec t = sub(c, g.apply(c));  // x -> c + g(x - c)
    out.push_back(AffineSignedIsometry{std::move(g), std::move(t)});
  }
  return out;
}

// Checks that every group element maps the cell family onto itself.
inline VerificationReport check_family_invariance(
    const CellComplex& k, const std::vector<AffineSignedIsometry>& group) {
  VerificationReport report;
  std::vector<std::string> fail(group.size());
  parallel_for(group.size(), [&](std::size_t gi) {
    const AffineSignedIsometry& g = group[gi];
    for (const ConvexCell& c : k.cells()) {
      ConvexCell image = c.transformed(g);
      if (!k.has_cell(image)) {
        fail[gi] = g.to_string() + " maps member " + c.to_string() +
                   " to non-member " + image.to_string();
        return;
      }
    }
  });
  std::size_t bad = 0;
  for (std::size_t gi = 0; gi < group.size(); ++gi)
    if (!fail[gi].empty() && bad++ < detail::kMaxWitnesses)
      report.add_fail("family invariance", fail[gi]);
  if (bad == 0)
    report.add_pass("family invariance (" + std::to_string(group.size()) +
                    " symmetries x " + std::to_string(k.size()) + " cells)");
  return report;
}

// Deterministic rational points in the relative interior of a cell: random
// positive integer vertex weights, normalized.  Weights stay small so the
// common denominator stays small.
inline std::vector<Point> sample_relint_points(const ConvexCell& c, int count,
                                               std::uint64_t seed,
                                               int max_weight = 31) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  const std::vector<Point>& vs = c.verts();
  for (int s = 0; s < count; ++s) {
    Rat total = 0;
    Point p = zero_vec(c.ambient());
    for (const Point& v : vs) {
      long w = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_weight));
      p = add(p, scale(Rat(w), v));
      total += w;
    }
    out.push_back(scale(1 / total, p));
  }
  return out;
}

struct SampleConfig {
  int count = 100;
  std::uint64_t seed = 20260815;
  int max_weight = 31;
};

namespace detail {

template <class PointsForCell>
VerificationReport stabilizer_scan(const CellComplex& k,
                                   const std::vector<AffineSignedIsometry>& group,
                                   const std::string& label,
                                   PointsForCell&& points_for_cell) {
  VerificationReport report;
  std::vector<std::string> fail(k.size());
  std::size_t checked_total = 0;
  std::vector<std::size_t> checked(k.size(), 0);
  parallel_for(k.size(), [&](std::size_t ci) {
    const ConvexCell& h = k.cell(ci);
    std::vector<Point> pts = points_for_cell(ci, h);
    for (const AffineSignedIsometry& g : group) {
      for (const Point& x : pts) {
        Point y = g.apply(x);
        ++checked[ci];
        if (h.contains_point(y) && y != x) {
          fail[ci] = g.to_string() + " moves " + vec_to_string(x) + " to " +
                     vec_to_string(y) + " inside " + cell_label(k, ci);
          return;
        }
      }
    }
  });
  std::size_t bad = 0;
  for (std::size_t ci = 0; ci < k.size(); ++ci) {
    checked_total += checked[ci];
    if (!fail[ci].empty() && bad++ < kMaxWitnesses)
      report.add_fail(label, fail[ci]);
  }
  if (bad == 0)
    report.add_pass(label + " (" + std::to_string(checked_total) +
                    " point checks)");
  return report;
}

}  // namespace detail

// Sampled stabilizer check: vertices plus seeded random relative-interior
// points of every cell, against every group element.
inline VerificationReport check_stabilizer_property_sampled(
    const CellComplex& k, const std::vector<AffineSignedIsometry>& group,
    const SampleConfig& cfg = {}) {
  return detail::stabilizer_scan(
      k, group, "stabilizer property (sampled)",
      [&](std::size_t ci, const ConvexCell& h) {
        std::vector<Point> pts = h.verts();
        std::vector<Point> extra = sample_relint_points(
            h, cfg.count, cfg.seed + static_cast<std::uint64_t>(ci),
            cfg.max_weight);
        pts.insert(pts.end(), extra.begin(), extra.end());
        return pts;
      });
}

// Exact stabilizer check: for each cell H and element g, every vertex of
// the intersection of H with g^-1(H) must be fixed by g.  Complete: if some
// point of H maps into H without being fixed, some vertex of the
// intersection does too.
inline VerificationReport check_stabilizer_property_exact(
    const CellComplex& k, const std::vector<AffineSignedIsometry>& group) {
  VerificationReport report;
  std::vector<std::string> fail(k.size());
  parallel_for(k.size(), [&](std::size_t ci) {
    const ConvexCell& h = k.cell(ci);
    for (const AffineSignedIsometry& g : group) {
      ConvexCell pre = h.transformed(g.inverse());
      if (detail::bbox_disjoint(h, pre)) continue;
      std::optional<ConvexCell> meet = intersect_cells(h, pre);
      if (!meet) continue;
      for (const Point& v : meet->verts())
        if (g.apply(v) != v) {
          fail[ci] = g.to_string() + " moves " + vec_to_string(v) +
                     " inside " + detail::cell_label(k, ci);
          return;
        }
    }
  });
  std::size_t bad = 0;
  for (std::size_t ci = 0; ci < k.size(); ++ci)
    if (!fail[ci].empty() && bad++ < detail::kMaxWitnesses)
      report.add_fail("stabilizer property (exact)", fail[ci]);
  if (bad == 0) report.add_pass("stabilizer property (exact)");
  return report;
}

}  // namespace orthocell
