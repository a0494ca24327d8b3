#pragma once

// Crystallographic groups of signed-permutation isometries whose base tile is
// a box Q = [0,a_1] x ... x [0,a_n].  Every group element carries Q onto a
// lattice translate of Q (a "tile"), and distinct elements carry it to
// distinct tiles, so elements are addressed by tile coordinates.
//
// A group is assembled from point generators (each must map Q onto some
// tile) plus one pure translation per axis.  The translation step is chosen
// as the smallest multiple of the tile side that keeps the tile action
// collision-free; a reflection-type generator typically forces step two on
// its axis, leaving the tile lattice strictly finer than the translation
// sublattice.
//
// Element storage: per-axis periods k_i and one coset representative per
// residue tile in [0,k_1) x ... x [0,k_n).  The element for an arbitrary
// tile is its residue representative shifted by a lattice translation.

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orthocell/box.hpp"
#include "orthocell/cell_complex.hpp"
#include "orthocell/convex_cell.hpp"
#include "orthocell/error.hpp"
#include "orthocell/isometry.hpp"
#include "orthocell/rational.hpp"
#include "orthocell/report.hpp"
#include "orthocell/symmetry_group.hpp"

namespace orthocell {

class OrthotopicGroup {
 public:
  int n = 0;
  Vec sides;   // a_i > 0
  Box domain;  // Q
  std::vector<AffineSignedIsometry> point_generators;
  std::vector<long> period;  // translation step per axis, in tile units
  std::map<std::vector<long>, AffineSignedIsometry> coset_reps;

  // Tile coordinates of the image of Q, or nullopt when the image is not a
  // lattice translate of Q.
  std::optional<std::vector<long>> tile_of(const AffineSignedIsometry& g) const {
    Point p = g.apply(domain.lo);
    Point q = g.apply(domain.hi);
    std::vector<long> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      Rat lo = std::min(p[j], q[j]);
      Rat hi = std::max(p[j], q[j]);
      if (hi - lo != sides[j]) return std::nullopt;
      Rat idx = lo / sides[j];
      if (!is_integer(idx)) return std::nullopt;
      Int num = idx.get_num();
      if (!num.fits_slong_p()) return std::nullopt;
      v[j] = num.get_si();
    }
    return v;
  }

  // Pure translation by the given multiples of the per-axis periods.
  AffineSignedIsometry lattice_translation(const std::vector<long>& q) const {
    Vec t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[i] = Rat(q[i]) * Rat(period[i]) * sides[i];
    return AffineSignedIsometry::make_translation(std::move(t));
  }

  // The unique element carrying Q to the given tile.
  AffineSignedIsometry gamma_for_tile(const std::vector<long>& v) const {
    std::vector<long> res(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      long r = v[i] % period[i];
      if (r < 0) r += period[i];
      res[i] = r;
      q[i] = (v[i] - r) / period[i];
    }
    auto it = coset_reps.find(res);
    if (it == coset_reps.end())
      throw error(Error::Code::NotFound, "no element for the requested tile");
    return lattice_translation(q).compose(it->second);
  }

  bool is_element(const AffineSignedIsometry& g) const {
    std::optional<std::vector<long>> v = tile_of(g);
    if (!v) return false;
    return gamma_for_tile(*v) == g;
  }

  // All elements with tile coordinates in [-radius, radius]^n.
  std::vector<AffineSignedIsometry> shell(long radius) const {
    std::vector<AffineSignedIsometry> out;
    std::vector<long> v(static_cast<std::size_t>(n), -radius);
    while (true) {
      out.push_back(gamma_for_tile(v));
      int t = 0;
      for (; t < n; ++t) {
        if (++v[t] <= radius) break;
        v[t] = -radius;
      }
      if (t == n) break;
    }
    return out;
  }

  std::vector<AffineSignedIsometry> generators() const {
    std::vector<AffineSignedIsometry> out = point_generators;
    for (int i = 0; i < n; ++i) {
      std::vector<long> q(static_cast<std::size_t>(n), 0);
      q[i] = 1;
      out.push_back(lattice_translation(q));
    }
    return out;
  }

  // Orbit representative of a point: bring it into Q by the tile element,
  // then take the lexicographically smallest orbit point inside Q.  Elements
  // mapping a point of Q back into Q sit in the radius-1 shell, so that shell
  // is enough.
  Point canonical_point(const Point& x) const {
    if (static_cast<int>(x.size()) != n)
      throw error(Error::Code::DimensionMismatch, "point dimension");
    std::vector<long> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Int f = rat_floor(x[i] / sides[i]);
      if (!f.fits_slong_p())
        throw error(Error::Code::BadInput, "point too far from the origin");
      v[i] = f.get_si();
    }
    Point y = gamma_for_tile(v).inverse().apply(x);
    if (!domain.contains(y))
      throw error(Error::Code::BadInput, "tile reduction failed");
    Point best = y;
    for (const AffineSignedIsometry& g : shell(1)) {
      Point z = g.apply(y);
      if (domain.contains(z) && lex_less(z, best)) best = std::move(z);
    }
    return best;
  }
};

namespace detail {

// Breadth-first closure of left products of the generators (and inverses),
// pruned to tiles within [-radius, radius]^n.  Records the element reaching
// each tile; a tile reached by two distinct elements is a collision, meaning
// the candidate group would not act freely on tiles.
struct TileExploration {
  std::map<std::vector<long>, AffineSignedIsometry> by_tile;
  bool collision = false;
  std::string collision_note;
};

inline TileExploration explore_tiles(const OrthotopicGroup& skeleton,
                                     const std::vector<AffineSignedIsometry>& gens,
                                     long radius) {
  TileExploration result;
  std::vector<AffineSignedIsometry> step;
  for (const AffineSignedIsometry& g : gens) {
    step.push_back(g);
    step.push_back(g.inverse());
  }
  AffineSignedIsometry id = AffineSignedIsometry::identity(skeleton.n);
  std::deque<AffineSignedIsometry> queue{id};
  result.by_tile.emplace(std::vector<long>(static_cast<std::size_t>(skeleton.n), 0), id);
  while (!queue.empty()) {
    AffineSignedIsometry g = std::move(queue.front());
    queue.pop_front();
    for (const AffineSignedIsometry& s : step) {
      AffineSignedIsometry next = s.compose(g);
      std::optional<std::vector<long>> v = skeleton.tile_of(next);
      if (!v)
        throw error(Error::Code::IncompatibleGenerator,
                    "generator product leaves the tile lattice: " +
                        next.to_string());
      bool in_range = true;
      for (long c : *v)
        if (c < -radius || c > radius) in_range = false;
      if (!in_range) continue;
      auto [it, fresh] = result.by_tile.emplace(*v, next);
      if (fresh) {
        queue.push_back(std::move(next));
      } else if (it->second != next) {
        result.collision = true;
        if (result.collision_note.empty())
          result.collision_note = it->second.to_string() + " and " +
                                  next.to_string() + " share a tile";
      }
    }
  }
  return result;
}

}  // namespace detail

// Builds the group over Q = [0,a_1] x ... x [0,a_n] generated by the given
// point generators together with one pure translation per axis, chosen as the
// smallest side multiple that keeps the tile action free of collisions.
//
// Throws IncompatibleGenerator when a generator does not carry Q onto a tile
// (side mismatch or off-lattice translation), when no collision-free
// translation step exists, or when the resulting group misses tiles.
inline OrthotopicGroup make_orthotopic_group(
    Vec sides, std::vector<AffineSignedIsometry> point_gens) {
  OrthotopicGroup g;
  g.n = static_cast<int>(sides.size());
  for (const Rat& a : sides)
    if (a <= 0) throw error(Error::Code::BadInput, "sides must be positive");
  g.sides = std::move(sides);
  g.domain = Box::corner(g.sides);
  for (const AffineSignedIsometry& p : point_gens) {
    if (p.dim() != g.n)
      throw error(Error::Code::DimensionMismatch, "generator dimension");
    if (!g.tile_of(p))
      throw error(Error::Code::IncompatibleGenerator,
                  "generator does not carry the base tile onto a tile: " +
                      p.to_string());
  }
  g.point_generators = std::move(point_gens);
  g.period.assign(static_cast<std::size_t>(g.n), 0);

  constexpr long kMaxStep = 16;
  std::vector<AffineSignedIsometry> gens = g.point_generators;
  long max_period = 1;
  for (int axis = 0; axis < g.n; ++axis) {
    bool found = false;
    for (long k = 1; k <= kMaxStep; ++k) {
      Vec t = zero_vec(g.n);
      t[axis] = Rat(k) * g.sides[axis];
      std::vector<AffineSignedIsometry> candidate = gens;
      candidate.push_back(AffineSignedIsometry::make_translation(t));
      long radius = 2 * std::max(k, max_period) + 2;
      detail::TileExploration probe = detail::explore_tiles(g, candidate, radius);
      if (probe.collision) continue;
      gens = std::move(candidate);
      g.period[axis] = k;
      max_period = std::max(max_period, k);
      found = true;
      break;
    }
    if (!found)
      throw error(Error::Code::IncompatibleGenerator,
                  "no collision-free translation step on axis " +
                      std::to_string(axis));
  }

  detail::TileExploration closure =
      detail::explore_tiles(g, gens, max_period + 2);
  if (closure.collision)
    throw error(Error::Code::IncompatibleGenerator, closure.collision_note);
  std::vector<long> res(static_cast<std::size_t>(g.n), 0);
  while (true) {
    auto it = closure.by_tile.find(res);
    if (it == closure.by_tile.end())
      throw error(Error::Code::IncompatibleGenerator,
                  "group does not reach every tile");
    g.coset_reps.emplace(res, it->second);
    int t = 0;
    for (; t < g.n; ++t) {
      if (++res[t] < g.period[t]) break;
      res[t] = 0;
    }
    if (t == g.n) break;
  }
  return g;
}

// The pure translation group with base tile [0,a_1] x ... x [0,a_n].
inline OrthotopicGroup torus_group(Vec sides) {
  return make_orthotopic_group(std::move(sides), {});
}

namespace detail {

// F == the face of C cut out by the constraints of C tight on F.
inline bool is_face_of(const ConvexCell& f, const ConvexCell& c) {
  if (!c.contains_cell(f)) return false;
  std::vector<Constraint> eqs = c.hull_equations();
  std::vector<Constraint> ineqs;
  for (const Constraint& r : c.facet_inequalities()) {
    bool tight = true;
    for (const Point& v : f.verts())
      if (dot(r.a, v) != r.b) {
        tight = false;
        break;
      }
    (tight ? eqs : ineqs).push_back(r);
  }
  std::optional<ConvexCell> cut =
      ConvexCell::from_hrep(c.ambient(), ineqs, eqs);
  return cut && *cut == f;
}

}  // namespace detail

// Checks that the domain (default: the base tile Q) is a normal fundamental
// domain: its translates have pairwise disjoint interiors, cover a
// neighborhood of the origin, and meet each other in common faces.
inline VerificationReport verify_normal_fundamental_domain(
    const OrthotopicGroup& g, std::optional<ConvexCell> domain = std::nullopt,
    long radius = 2) {
  VerificationReport report;
  ConvexCell d = domain ? *std::move(domain) : g.domain.to_cell();
  std::vector<AffineSignedIsometry> elems = g.shell(radius + 1);
  std::vector<ConvexCell> translates;
  translates.reserve(elems.size());
  for (const AffineSignedIsometry& e : elems) translates.push_back(d.transformed(e));

  {
    std::vector<std::string> fail(elems.size());
    parallel_for(elems.size(), [&](std::size_t i) {
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        Point p;
        if (!relative_interiors_disjoint(translates[i], translates[j], &p)) {
          fail[i] = elems[i].to_string() + " and " + elems[j].to_string() +
                    " overlap at " + vec_to_string(p);
          return;
        }
      }
    });
    std::size_t bad = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (!fail[i].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("translates have disjoint interiors", fail[i]);
    if (bad == 0) report.add_pass("translates have disjoint interiors");
  }

  {
    Vec lo(static_cast<std::size_t>(g.n)), hi(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
      lo[i] = Rat(-radius) * g.sides[i];
      hi[i] = Rat(radius) * g.sides[i];
    }
    ConvexCell window = ConvexCell::box(lo, hi);
    Volume total{};
    bool any = false;
    for (const ConvexCell& t : translates) {
      if (detail::bbox_disjoint(t, window)) continue;
      std::optional<ConvexCell> meet = intersect_cells(t, window);
      if (!meet || meet->dim() < g.n) continue;
      total = any ? total + meet->volume() : meet->volume();
      any = true;
    }
    if (any && total == window.volume())
      report.add_pass("translates cover a neighborhood of the origin");
    else
      report.add_fail("translates cover a neighborhood of the origin",
                      "window volume " + window.volume().to_string() +
                          ", translate volume " +
                          (any ? total.to_string() : std::string("0")));
  }

  {
    std::vector<std::string> fail(elems.size());
    parallel_for(elems.size(), [&](std::size_t i) {
      if (elems[i].is_identity()) return;
      if (detail::bbox_disjoint(d, translates[i])) return;
      std::optional<ConvexCell> meet = intersect_cells(d, translates[i]);
      if (!meet) return;
      if (!detail::is_face_of(*meet, d) || !detail::is_face_of(*meet, translates[i]))
        fail[i] = elems[i].to_string() + ": intersection " + meet->to_string() +
                  " is not a common face";
    });
    std::size_t bad = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (!fail[i].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("translates meet the domain in common faces", fail[i]);
    if (bad == 0) report.add_pass("translates meet the domain in common faces");
  }

  return report;
}

// The unique non-identity element whose tile meets Q exactly in the given
// face.  NotFound when no shell element matches, NotUnique when several do.
inline AffineSignedIsometry adjacency_transformation(const OrthotopicGroup& g,
                                                     const ConvexCell& face) {
  ConvexCell q = g.domain.to_cell();
  std::optional<AffineSignedIsometry> found;
  for (const AffineSignedIsometry& e : g.shell(1)) {
    if (e.is_identity()) continue;
    ConvexCell t = q.transformed(e);
    if (detail::bbox_disjoint(q, t)) continue;
    std::optional<ConvexCell> meet = intersect_cells(q, t);
    if (!meet || *meet != face) continue;
    if (found)
      throw error(Error::Code::NotUnique,
                  "both " + found->to_string() + " and " + e.to_string() +
                      " meet the base tile in " + face.to_string());
    found = e;
  }
  if (!found)
    throw error(Error::Code::NotFound,
                "no element meets the base tile exactly in " + face.to_string());
  return *found;
}

namespace detail {

template <class PointsForCell>
VerificationReport orbit_scan(const OrthotopicGroup& g, const CellComplex& k,
                              const std::string& label,
                              PointsForCell&& points_for_cell) {
  VerificationReport report;
  std::vector<AffineSignedIsometry> elems;
  for (AffineSignedIsometry& e : g.shell(1))
    if (!e.is_identity()) elems.push_back(std::move(e));
  std::vector<std::string> fail(k.size());
  parallel_for(k.size(), [&](std::size_t ci) {
    const ConvexCell& h = k.cell(ci);
    std::vector<Point> pts = points_for_cell(ci, h);
    for (const AffineSignedIsometry& e : elems)
      for (const Point& x : pts) {
        Point y = e.apply(x);
        if (h.contains_point(y) && y != x) {
          fail[ci] = e.to_string() + " moves " + vec_to_string(x) + " to " +
                     vec_to_string(y) + " inside " + cell_label(k, ci);
          return;
        }
      }
  });
  std::size_t bad = 0;
  for (std::size_t ci = 0; ci < k.size(); ++ci)
    if (!fail[ci].empty() && bad++ < kMaxWitnesses)
      report.add_fail(label, fail[ci]);
  if (bad == 0) report.add_pass(label);
  return report;
}

}  // namespace detail

// Checks that no group element identifies two distinct points of the same
// cell (sampled variant: vertices plus seeded interior samples).  Only
// radius-1 shell elements can map a point of Q back into Q.
inline VerificationReport orbit_intersection_check_sampled(
    const OrthotopicGroup& g, const CellComplex& k, const SampleConfig& cfg = {}) {
  return detail::orbit_scan(
      g, k, "orbit intersection (sampled)",
      [&](std::size_t ci, const ConvexCell& h) {
        std::vector<Point> pts = h.verts();
        std::vector<Point> extra = sample_relint_points(
            h, cfg.count, cfg.seed + static_cast<std::uint64_t>(ci),
            cfg.max_weight);
        pts.insert(pts.end(), extra.begin(), extra.end());
        return pts;
      });
}

// Exact variant: for each cell H and shell element e, every vertex of the
// intersection of H with e^-1(H) must be fixed by e.
inline VerificationReport orbit_intersection_check_exact(
    const OrthotopicGroup& g, const CellComplex& k) {
  VerificationReport report;
  std::vector<AffineSignedIsometry> elems;
  for (AffineSignedIsometry& e : g.shell(1))
    if (!e.is_identity()) elems.push_back(std::move(e));
  std::vector<std::string> fail(k.size());
  parallel_for(k.size(), [&](std::size_t ci) {
    const ConvexCell& h = k.cell(ci);
    for (const AffineSignedIsometry& e : elems) {
      ConvexCell pre = h.transformed(e.inverse());
      if (detail::bbox_disjoint(h, pre)) continue;
      std::optional<ConvexCell> meet = intersect_cells(h, pre);
      if (!meet) continue;
      for (const Point& v : meet->verts())
        if (e.apply(v) != v) {
          fail[ci] = e.to_string() + " moves " + vec_to_string(v) +
                     " inside " + detail::cell_label(k, ci);
          return;
        }
    }
  });
  std::size_t bad = 0;
  for (std::size_t ci = 0; ci < k.size(); ++ci)
    if (!fail[ci].empty() && bad++ < detail::kMaxWitnesses)
      report.add_fail("orbit intersection (exact)", fail[ci]);
  if (bad == 0) report.add_pass("orbit intersection (exact)");
  return report;
}

}  // namespace orthocell
