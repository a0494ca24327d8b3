#pragma once

// Finite complexes of convex cells and the verification routines for them.
//
// A CellComplex stores a sorted, duplicate-free family of canonical cells
// together with "space pieces": convex cells whose union is the underlying
// space.  Verification reduces the set-level conditions to exact convex
// primitives:
//
//  * coverage: every cell lies in a piece, and inside each piece the cells of
//    matching dimension account for its full volume.  Since cells are closed
//    and (by the disjointness check) have pairwise disjoint relative
//    interiors, a volume match forces the uncovered part of the piece to be a
//    measure-zero open subset, hence empty.
//  * disjoint interiors: relint(s) meets relint(t) iff s.t is nonempty and
//    the barycenter of s.t lies in both relative interiors (relint(s.t) =
//    relint(s).relint(t) whenever the right side is nonempty).
//  * closure: for every cell, each of its facets is volume-covered by member
//    cells contained in it.  A convex subset of the relative boundary of a
//    cell always lies inside a single facet, so facet-by-facet accounting is
//    exhaustive.
//
// The coverage check requires each cell to sit inside a single space piece.
// All constructions in this library produce piece-aligned complexes; a
// straddling cell is reported as a failure rather than silently accepted.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthocell/convex_cell.hpp"
#include "orthocell/error.hpp"
#include "orthocell/isometry.hpp"
#include "orthocell/parallel.hpp"
#include "orthocell/rational.hpp"
#include "orthocell/report.hpp"
#include "orthocell/volume.hpp"

namespace orthocell {

namespace detail {

inline bool bbox_disjoint(const ConvexCell& a, const ConvexCell& b) {
  for (int i = 0; i < a.ambient(); ++i)
    if (a.bbox_hi()[i] < b.bbox_lo()[i] || b.bbox_hi()[i] < a.bbox_lo()[i])
      return true;
  return false;
}

inline bool bbox_within(const ConvexCell& inner, const ConvexCell& outer) {
  for (int i = 0; i < inner.ambient(); ++i)
    if (inner.bbox_lo()[i] < outer.bbox_lo()[i] ||
        inner.bbox_hi()[i] > outer.bbox_hi()[i])
      return false;
  return true;
}

// Sound one-sided separation: some facet inequality or hull equation of a
// puts every vertex of b weakly outside, so the relative interiors cannot
// meet.
inline bool separated_by_constraints(const ConvexCell& a, const ConvexCell& b) {
  for (const Constraint& c : a.facet_inequalities()) {
    bool all_outside = true;
    for (const Point& v : b.verts())
      if (dot(c.a, v) > c.b) {
        all_outside = false;
        break;
      }
    if (all_outside) return true;
  }
  for (const Constraint& c : a.hull_equations()) {
    bool all_below = true, all_above = true;
    for (const Point& v : b.verts()) {
      Rat d = dot(c.a, v) - c.b;
      if (d >= 0) all_below = false;
      if (d <= 0) all_above = false;
      if (!all_below && !all_above) break;
    }
    if (all_below || all_above) return true;
  }
  return false;
}

}  // namespace detail

// Decides whether relint(a) and relint(b) are disjoint.  When they are not,
// writes a common relative-interior point to *common if given.
inline bool relative_interiors_disjoint(const ConvexCell& a,
                                        const ConvexCell& b,
                                        Point* common = nullptr) {
  if (a.ambient() != b.ambient())
    throw error(Error::Code::DimensionMismatch, "ambient mismatch");
  if (detail::bbox_disjoint(a, b)) return true;
  if (detail::separated_by_constraints(a, b)) return true;
  if (detail::separated_by_constraints(b, a)) return true;
  std::optional<ConvexCell> meet = intersect_cells(a, b);
  if (!meet) return true;
  Point p = meet->relative_interior_point();
  if (a.relint_contains(p) && b.relint_contains(p)) {
    if (common) *common = std::move(p);
    return false;
  }
  return true;
}

// True iff relint(inner) is a subset of relint(outer).
inline bool relint_within(const ConvexCell& inner, const ConvexCell& outer) {
  if (!outer.contains_cell(inner)) return false;
  return outer.relint_contains(inner.relative_interior_point());
}

class CellComplex {
 public:
  CellComplex() = default;

  // Builds a complex from a cell family.  Cells are sorted and deduplicated.
  // The pieces describe the underlying space as a union of convex cells; when
  // omitted, the space is taken to be the union of the cells themselves.
  static CellComplex from_cells(int ambient, std::vector<ConvexCell> cells,
                                std::vector<ConvexCell> pieces = {}) {
    CellComplex k;
    k.ambient_ = ambient;
    for (const ConvexCell& c : cells)
      if (c.ambient() != ambient)
        throw error(Error::Code::DimensionMismatch, "cell ambient mismatch");
    for (const ConvexCell& p : pieces)
      if (p.ambient() != ambient)
        throw error(Error::Code::DimensionMismatch, "piece ambient mismatch");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    if (pieces.empty()) pieces = cells;
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    k.cells_ = std::move(cells);
    k.pieces_ = std::move(pieces);
    return k;
  }

  int ambient() const { return ambient_; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<ConvexCell>& cells() const { return cells_; }
  const ConvexCell& cell(std::size_t i) const { return cells_[i]; }
  const std::vector<ConvexCell>& space_pieces() const { return pieces_; }

  int dim() const {
    int d = -1;
    for (const ConvexCell& c : cells_) d = std::max(d, c.dim());
    return d;
  }

  // Cell counts per dimension, index = dimension.
  std::vector<std::size_t> count_by_dim() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(dim() + 1), 0);
    for (const ConvexCell& c : cells_) ++out[static_cast<std::size_t>(c.dim())];
    return out;
  }

  std::size_t count_of_dim(int k) const {
    std::size_t n = 0;
    for (const ConvexCell& c : cells_)
      if (c.dim() == k) ++n;
    return n;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (const ConvexCell& c : cells_) chi += (c.dim() % 2 == 0) ? 1 : -1;
    return chi;
  }

  std::optional<std::size_t> find(const ConvexCell& c) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if (it != cells_.end() && *it == c)
      return static_cast<std::size_t>(it - cells_.begin());
    return std::nullopt;
  }

  bool has_cell(const ConvexCell& c) const { return find(c).has_value(); }

  // Subcomplex of all cells of dimension <= k; its space is their union.
  CellComplex skeleton(int k) const {
    std::vector<ConvexCell> kept;
    for (const ConvexCell& c : cells_)
      if (c.dim() <= k) kept.push_back(c);
    return from_cells(ambient_, std::move(kept));
  }

  // Subcomplex of the cells contained in at least one of the given pieces.
  CellComplex restricted_to_union(std::vector<ConvexCell> new_pieces) const {
    std::vector<ConvexCell> kept;
    for (const ConvexCell& c : cells_)
      for (const ConvexCell& p : new_pieces)
        if (detail::bbox_within(c, p) && p.contains_cell(c)) {
          kept.push_back(c);
          break;
        }
    return from_cells(ambient_, std::move(kept), std::move(new_pieces));
  }

  CellComplex transformed(const AffineSignedIsometry& g) const {
    std::vector<ConvexCell> cells, pieces;
    cells.reserve(cells_.size());
    pieces.reserve(pieces_.size());
    for (const ConvexCell& c : cells_) cells.push_back(c.transformed(g));
    for (const ConvexCell& p : pieces_) pieces.push_back(p.transformed(g));
    return from_cells(ambient_, std::move(cells), std::move(pieces));
  }

  CellComplex transformed(const AffineMap& f) const {
    std::vector<ConvexCell> cells, pieces;
    cells.reserve(cells_.size());
    pieces.reserve(pieces_.size());
    for (const ConvexCell& c : cells_) cells.push_back(c.transformed(f));
    for (const ConvexCell& p : pieces_) pieces.push_back(p.transformed(f));
    return from_cells(ambient_, std::move(cells), std::move(pieces));
  }

 private:
  int ambient_ = 0;
  std::vector<ConvexCell> cells_;   // sorted, unique
  std::vector<ConvexCell> pieces_;  // sorted, unique; union = underlying space
};

namespace detail {

inline std::string cell_label(const CellComplex& k, std::size_t i) {
  return "cell#" + std::to_string(i) + " " + k.cell(i).to_string();
}

// Caps witness spam on badly broken inputs.
constexpr std::size_t kMaxWitnesses = 8;

inline std::vector<Volume> all_volumes(const CellComplex& k) {
  std::vector<Volume> vols(k.size(), Volume{});
  parallel_for(k.size(), [&](std::size_t i) { vols[i] = k.cell(i).volume(); });
  return vols;
}

}  // namespace detail

// Checks that the cell family is a cell decomposition of the union of the
// space pieces: the cells cover that union, have pairwise disjoint relative
// interiors, and the relative boundary of every cell is a union of cells.
inline VerificationReport verify_cell_decomposition(const CellComplex& k) {
  VerificationReport report;
  const std::size_t m = k.size();
  if (m == 0) {
    report.add_fail("nonempty", "complex has no cells");
    return report;
  }
  report.add_pass("nonempty");

  std::vector<Volume> vols = detail::all_volumes(k);

  // Coverage, part 1: every cell sits inside a single space piece.
  {
    std::vector<uint8_t> placed(m, 0);
    parallel_for(m, [&](std::size_t i) {
      for (const ConvexCell& p : k.space_pieces())
        if (detail::bbox_within(k.cell(i), p) && p.contains_cell(k.cell(i))) {
          placed[i] = 1;
          return;
        }
    });
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (!placed[i] && bad++ < detail::kMaxWitnesses)
        report.add_fail("cell inside a space piece",
                        detail::cell_label(k, i) +
                            " is not contained in any space piece");
    if (bad == 0)
      report.add_pass("cells inside space pieces");
    else if (bad > detail::kMaxWitnesses)
      report.add_fail("cells inside space pieces",
                      std::to_string(bad) + " cells escape all pieces");
  }

  // Coverage, part 2: inside each piece, cells of the piece's dimension
  // account for its full volume.
  {
    const std::vector<ConvexCell>& pieces = k.space_pieces();
    std::vector<std::string> piece_fail(pieces.size());
    parallel_for(pieces.size(), [&](std::size_t pi) {
      const ConvexCell& p = pieces[pi];
      Volume total{};  // zero
      bool any = false;
      for (std::size_t i = 0; i < m; ++i) {
        const ConvexCell& c = k.cell(i);
        if (c.dim() != p.dim()) continue;
        if (!detail::bbox_within(c, p) || !p.contains_cell(c)) continue;
        total = any ? total + vols[i] : vols[i];
        any = true;
      }
      Volume want = p.volume();
      if (!any || total != want)
        piece_fail[pi] = "piece " + p.to_string() + " has top-cell volume " +
                         (any ? total.to_string() : std::string("0")) +
                         ", expected " + want.to_string();
    });
    std::size_t bad = 0;
    for (std::size_t pi = 0; pi < pieces.size(); ++pi)
      if (!piece_fail[pi].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("piece volume coverage", piece_fail[pi]);
    if (bad == 0) report.add_pass("piece volume coverage");
  }

  // Pairwise disjoint relative interiors.
  {
    std::vector<std::string> row_fail(m);
    parallel_for(m, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        Point p;
        if (!relative_interiors_disjoint(k.cell(i), k.cell(j), &p)) {
          row_fail[i] = detail::cell_label(k, i) + " and " +
                        detail::cell_label(k, j) +
                        " share interior point " + vec_to_string(p);
          return;
        }
      }
    });
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (!row_fail[i].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("disjoint relative interiors", row_fail[i]);
    if (bad == 0) report.add_pass("disjoint relative interiors");
  }

  // Closure: every facet of every cell is volume-covered by member cells
  // contained in it.
  {
    std::vector<std::string> cell_fail(m);
    parallel_for(m, [&](std::size_t i) {
      const ConvexCell& c = k.cell(i);
      if (c.dim() == 0) return;
      for (const ConvexCell& f : c.facets()) {
        Volume total{};
        bool any = false;
        for (std::size_t j = 0; j < m; ++j) {
          const ConvexCell& d = k.cell(j);
          if (d.dim() != f.dim()) continue;
          if (!detail::bbox_within(d, f) || !f.contains_cell(d)) continue;
          total = any ? total + vols[j] : vols[j];
          any = true;
        }
        if (!any || total != f.volume()) {
          cell_fail[i] = "facet " + f.to_string() + " of " +
                         detail::cell_label(k, i) +
                         " is not a union of member cells";
          return;
        }
      }
    });
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (!cell_fail[i].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("boundaries are unions of cells", cell_fail[i]);
    if (bad == 0) report.add_pass("boundaries are unions of cells");
  }

  return report;
}

// Checks that `fine` refines `coarse`: every fine cell lies in a coarse cell
// and every coarse cell is exactly covered by the fine cells inside it.
inline VerificationReport verify_refinement(const CellComplex& fine,
                                            const CellComplex& coarse) {
  VerificationReport report;
  if (fine.ambient() != coarse.ambient()) {
    report.add_fail("same ambient space",
                    std::to_string(fine.ambient()) + " vs " +
                        std::to_string(coarse.ambient()));
    return report;
  }
  std::vector<Volume> fine_vols = detail::all_volumes(fine);

  {
    std::vector<uint8_t> placed(fine.size(), 0);
    parallel_for(fine.size(), [&](std::size_t i) {
      for (const ConvexCell& c : coarse.cells())
        if (detail::bbox_within(fine.cell(i), c) &&
            c.contains_cell(fine.cell(i))) {
          placed[i] = 1;
          return;
        }
    });
    std::size_t bad = 0;
    for (std::size_t i = 0; i < fine.size(); ++i)
      if (!placed[i] && bad++ < detail::kMaxWitnesses)
        report.add_fail("fine cell inside a coarse cell",
                        detail::cell_label(fine, i) +
                            " is not contained in any coarse cell");
    if (bad == 0) report.add_pass("fine cells inside coarse cells");
  }

  {
    std::vector<std::string> fail(coarse.size());
    parallel_for(coarse.size(), [&](std::size_t ci) {
      const ConvexCell& c = coarse.cell(ci);
      Volume total{};
      bool any = false;
      for (std::size_t i = 0; i < fine.size(); ++i) {
        const ConvexCell& d = fine.cell(i);
        if (d.dim() != c.dim()) continue;
        if (!detail::bbox_within(d, c) || !c.contains_cell(d)) continue;
        total = any ? total + fine_vols[i] : fine_vols[i];
        any = true;
      }
      if (!any || total != c.volume())
        fail[ci] = detail::cell_label(coarse, ci) +
                   " is not a union of fine cells";
    });
    std::size_t bad = 0;
    for (std::size_t ci = 0; ci < coarse.size(); ++ci)
      if (!fail[ci].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("coarse cell covered by fine cells", fail[ci]);
    if (bad == 0) report.add_pass("coarse cells covered by fine cells");
  }

  return report;
}

// Index of the unique cell whose relative interior contains p.
inline std::size_t minimal_containing_cell(const CellComplex& k,
                                           const Point& p) {
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k.cell(i).relint_contains(p)) return i;
  throw error(Error::Code::NoContainingCell,
              "no cell's relative interior contains " + vec_to_string(p));
}

// Merges per-piece refinements into one complex.  The pieces must pairwise
// intersect in common faces, and the two refinements meeting at a shared face
// must induce the same cell family on it; otherwise the union would not be a
// decomposition and IncompatibleOnSharedFace is thrown.
inline CellComplex glue_refinements(
    int ambient, const std::vector<std::pair<ConvexCell, CellComplex>>& parts) {
  for (const auto& [piece, part] : parts) {
    if (piece.ambient() != ambient || part.ambient() != ambient)
      throw error(Error::Code::DimensionMismatch, "glue ambient mismatch");
    for (const ConvexCell& c : part.cells())
      if (!piece.contains_cell(c))
        throw error(Error::Code::BadInput,
                    "refinement cell escapes its piece: " + c.to_string());
  }
  auto cells_inside = [](const CellComplex& part, const ConvexCell& f) {
    std::vector<ConvexCell> out;
    for (const ConvexCell& c : part.cells())
      if (detail::bbox_within(c, f) && f.contains_cell(c)) out.push_back(c);
    return out;  // already sorted (part.cells() is)
  };
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (detail::bbox_disjoint(parts[i].first, parts[j].first)) continue;
      std::optional<ConvexCell> shared =
          intersect_cells(parts[i].first, parts[j].first);
      if (!shared) continue;
      if (cells_inside(parts[i].second, *shared) !=
          cells_inside(parts[j].second, *shared))
        throw error(Error::Code::IncompatibleOnSharedFace,
                    "refinements disagree on " + shared->to_string());
    }
  std::vector<ConvexCell> cells, pieces;
  for (const auto& [piece, part] : parts) {
    pieces.push_back(piece);
    for (const ConvexCell& c : part.cells()) cells.push_back(c);
  }
  return CellComplex::from_cells(ambient, std::move(cells), std::move(pieces));
}

// A cellular map is given per source cell: the index of the image cell in the
// target complex and an affine map realizing the restriction.
struct CellMapEntry {
  std::size_t target = 0;
  AffineMap map;
};

struct CellularMapTable {
  std::vector<CellMapEntry> entries;  // entries[i] belongs to source cell i
};

// Checks that the table defines a cellular map src -> dst: each source cell
// maps affinely onto its assigned target cell, and entries of nested cells
// agree pointwise, so the union of the restrictions is a single continuous
// map.  With require_homeomorphic, each restriction must also preserve
// dimension, making it a bijection onto its image cell.
inline VerificationReport verify_cellular_map(const CellComplex& src,
                                              const CellComplex& dst,
                                              const CellularMapTable& table,
                                              bool require_homeomorphic) {
  VerificationReport report;
  if (table.entries.size() != src.size()) {
    report.add_fail("table covers every cell",
                    std::to_string(table.entries.size()) + " entries for " +
                        std::to_string(src.size()) + " cells");
    return report;
  }
  report.add_pass("table covers every cell");

  const std::size_t m = src.size();
  std::vector<std::string> fail(m);
  parallel_for(m, [&](std::size_t i) {
    const CellMapEntry& e = table.entries[i];
    if (e.target >= dst.size()) {
      fail[i] = detail::cell_label(src, i) + " maps to missing index " +
                std::to_string(e.target);
      return;
    }
    const ConvexCell& image = dst.cell(e.target);
    ConvexCell mapped = src.cell(i).affine_image(e.map);
    if (mapped != image) {
      fail[i] = detail::cell_label(src, i) + " maps to " + mapped.to_string() +
                ", table claims " + image.to_string();
      return;
    }
    if (require_homeomorphic && mapped.dim() != src.cell(i).dim())
      fail[i] = detail::cell_label(src, i) + " collapses from dim " +
                std::to_string(src.cell(i).dim()) + " to " +
                std::to_string(mapped.dim());
  });
  std::size_t bad = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (!fail[i].empty() && bad++ < detail::kMaxWitnesses)
      report.add_fail("cells map onto their image cells", fail[i]);
  if (bad == 0) report.add_pass("cells map onto their image cells");

  // Consistency across shared faces: whenever one cell contains another, the
  // two affine maps must agree on the smaller cell's vertices.
  std::vector<std::string> pair_fail(m);
  parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (!detail::bbox_within(src.cell(j), src.cell(i))) continue;
      if (!src.cell(i).contains_cell(src.cell(j))) continue;
      for (const Point& v : src.cell(j).verts())
        if (table.entries[i].map.apply(v) != table.entries[j].map.apply(v)) {
          pair_fail[i] = "maps of " + detail::cell_label(src, i) + " and " +
                         detail::cell_label(src, j) + " disagree at " +
                         vec_to_string(v);
          return;
        }
    }
  });
  bad = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (!pair_fail[i].empty() && bad++ < detail::kMaxWitnesses)
      report.add_fail("restrictions agree on shared faces", pair_fail[i]);
  if (bad == 0) report.add_pass("restrictions agree on shared faces");

  return report;
}

// Markov condition for a self-map presented on a refinement: `fine` refines
// `coarse` and the table maps every fine cell homeomorphically onto a coarse
// cell, consistently across shared faces.
inline VerificationReport verify_cellular_markov(const CellComplex& fine,
                                                 const CellComplex& coarse,
                                                 const CellularMapTable& table) {
  VerificationReport report;
  report.merge(verify_refinement(fine, coarse), "refinement: ");
  report.merge(verify_cellular_map(fine, coarse, table, true), "map: ");
  return report;
}

}  // namespace orthocell
