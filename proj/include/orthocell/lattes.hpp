#pragma once

// Quotients of cube decompositions by crystallographic groups, and the
// expanding self-maps induced by integer scaling.
//
// Cells live in the base tile Q; the group identifies boundary cells.  An
// orbit class is addressed by its canonical representative, the
// lexicographically smallest group image inside Q (only radius-1 shell
// elements can map a subset of Q back into Q, so that shell is scanned).
//
// For an expansion factor lambda, scaling a cell of the subdivided complex
// lands inside one tile; pulling it back by that tile's element yields a cell
// of the coarse complex.  The induced map on orbit classes is recorded as a
// table (class -> class, plus the isometry making the composition exact) and
// verified mechanically: exactness on representatives, independence of the
// class member, compatibility on faces, and the expected local degree.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthocell/cell_complex.hpp"
#include "orthocell/convex_cell.hpp"
#include "orthocell/crystallographic.hpp"
#include "orthocell/error.hpp"
#include "orthocell/isometry.hpp"
#include "orthocell/parallel.hpp"
#include "orthocell/rational.hpp"
#include "orthocell/report.hpp"
#include "orthocell/symmetric_decomposition.hpp"

namespace orthocell {

// The canonical representative of the orbit of c (a cell inside Q) under the
// group.  If witness is given, it receives the element carrying c onto the
// representative.
inline ConvexCell orbit_canonical_cell(const OrthotopicGroup& g,
                                       const ConvexCell& c,
                                       AffineSignedIsometry* witness = nullptr) {
  ConvexCell q = g.domain.to_cell();
  ConvexCell best = c;
  AffineSignedIsometry best_g = AffineSignedIsometry::identity(g.n);
  for (const AffineSignedIsometry& e : g.shell(1)) {
    ConvexCell img = c.transformed(e);
    if (!detail::bbox_within(img, q) || !q.contains_cell(img)) continue;
    if (img < best) {
      best = std::move(img);
      best_g = e;
    }
  }
  if (witness) *witness = best_g;
  return best;
}

// Checks that the complex on Q is compatible with the group: whenever a
// group element carries a member cell back into Q, the image is again a
// member cell.
inline VerificationReport check_quotient_compatibility(const OrthotopicGroup& g,
                                                       const CellComplex& k) {
  VerificationReport report;
  ConvexCell q = g.domain.to_cell();
  std::vector<AffineSignedIsometry> elems = g.shell(1);
  std::vector<std::string> fail(k.size());
  parallel_for(k.size(), [&](std::size_t ci) {
    for (const AffineSignedIsometry& e : elems) {
      ConvexCell img = k.cell(ci).transformed(e);
      if (!detail::bbox_within(img, q) || !q.contains_cell(img)) continue;
      if (!k.has_cell(img)) {
        fail[ci] = e.to_string() + " carries " + detail::cell_label(k, ci) +
                   " to non-member " + img.to_string();
        return;
      }
    }
  });
  std::size_t bad = 0;
  for (std::size_t ci = 0; ci < k.size(); ++ci)
    if (!fail[ci].empty() && bad++ < detail::kMaxWitnesses)
      report.add_fail("group compatibility", fail[ci]);
  if (bad == 0) report.add_pass("group compatibility");
  return report;
}

struct QuotientComplex {
  CellComplex plane;                    // cells inside Q
  std::vector<ConvexCell> class_reps;   // sorted canonical representatives
  std::vector<std::size_t> class_of;    // plane cell index -> class index

  std::size_t class_count() const { return class_reps.size(); }

  std::size_t class_count_of_dim(int d) const {
    std::size_t n = 0;
    for (const ConvexCell& r : class_reps)
      if (r.dim() == d) ++n;
    return n;
  }

  std::vector<std::size_t> class_counts_by_dim() const {
    int top = -1;
    for (const ConvexCell& r : class_reps) top = std::max(top, r.dim());
    std::vector<std::size_t> out(static_cast<std::size_t>(top + 1), 0);
    for (const ConvexCell& r : class_reps)
      ++out[static_cast<std::size_t>(r.dim())];
    return out;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (const ConvexCell& r : class_reps) chi += (r.dim() % 2 == 0) ? 1 : -1;
    return chi;
  }

  std::optional<std::size_t> class_of_cell(const ConvexCell& c) const {
    std::optional<std::size_t> i = plane.find(c);
    if (!i) return std::nullopt;
    return class_of[*i];
  }
};

// Groups the cells of a complex on Q into orbit classes.  Requires the
// complex to be group-compatible; otherwise some orbit representative is not
// a member and NotAUnionOfCells is thrown.
inline QuotientComplex build_quotient(const OrthotopicGroup& g,
                                      CellComplex plane) {
  QuotientComplex out;
  std::vector<ConvexCell> reps(plane.size(), ConvexCell());
  parallel_for(plane.size(), [&](std::size_t i) {
    reps[i] = orbit_canonical_cell(g, plane.cell(i));
  });
  std::vector<ConvexCell> unique_reps = reps;
  std::sort(unique_reps.begin(), unique_reps.end());
  unique_reps.erase(std::unique(unique_reps.begin(), unique_reps.end()),
                    unique_reps.end());
  for (const ConvexCell& r : unique_reps)
    if (!plane.has_cell(r))
      throw error(Error::Code::NotAUnionOfCells,
                  "orbit representative " + r.to_string() +
                      " is not a member cell; the complex is not "
                      "group-compatible");
  out.class_of.resize(plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    auto it = std::lower_bound(unique_reps.begin(), unique_reps.end(), reps[i]);
    out.class_of[i] = static_cast<std::size_t>(it - unique_reps.begin());
  }
  out.class_reps = std::move(unique_reps);
  out.plane = std::move(plane);
  return out;
}

// Conjugating a group element by the scaling x -> lambda*x multiplies its
// translation part by lambda.  The scaling descends to the quotient iff the
// conjugate of every generator is again a group element.
inline VerificationReport verify_conjugation(const OrthotopicGroup& g,
                                             long lambda) {
  VerificationReport report;
  if (lambda < 1) {
    report.add_fail("expansion factor", "lambda must be >= 1");
    return report;
  }
  for (const AffineSignedIsometry& gen : g.generators()) {
    AffineSignedIsometry conj{gen.linear, scale(Rat(lambda), gen.translation)};
    if (g.is_element(conj))
      report.add_pass("conjugate of " + gen.to_string() + " is an element");
    else
      report.add_fail("conjugate of " + gen.to_string() + " is an element",
                      conj.to_string() + " is not in the group");
  }
  return report;
}

namespace detail {

// Finds a group element carrying `big` into the base tile Q, returning the
// element and the image.  Searches the tiles meeting the cell's bounding box.
inline std::optional<std::pair<AffineSignedIsometry, ConvexCell>>
reduce_into_domain(const OrthotopicGroup& g, const ConvexCell& big) {
  ConvexCell q = g.domain.to_cell();
  std::vector<long> lo(static_cast<std::size_t>(g.n)),
      hi(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    Int fl = rat_floor(big.bbox_lo()[i] / g.sides[i]);
    Int fh = rat_floor(big.bbox_hi()[i] / g.sides[i]);
    if (!fl.fits_slong_p() || !fh.fits_slong_p())
      throw error(Error::Code::BadInput, "cell too far from the origin");
    lo[i] = fl.get_si() - 1;
    hi[i] = fh.get_si() + 1;
  }
  std::vector<long> v = lo;
  while (true) {
    AffineSignedIsometry e = g.gamma_for_tile(v).inverse();
    ConvexCell img = big.transformed(e);
    if (detail::bbox_within(img, q) && q.contains_cell(img))
      return std::make_pair(std::move(e), std::move(img));
    int t = 0;
    for (; t < g.n; ++t) {
      if (++v[t] <= hi[t]) break;
      v[t] = lo[t];
    }
    if (t == g.n) break;
  }
  return std::nullopt;
}

}  // namespace detail

// One row of the induced map: class `i` of the subdivided quotient maps onto
// class `target` of the coarse quotient, exactly realized by deck . scaling.
struct LattesEntry {
  std::size_t target = 0;
  AffineSignedIsometry deck;
};

struct LattesSystem {
  OrthotopicGroup group;
  long lambda = 1;
  QuotientComplex coarse;   // from k(n) on Q
  QuotientComplex fine;     // from k_subdivided(n, lambda) on Q
  std::vector<LattesEntry> entries;  // indexed by fine class

  AffineMap realized_map(std::size_t fine_class) const {
    return AffineMap::from_isometry(entries[fine_class].deck)
        .compose(AffineMap::scaling(Rat(lambda), group.n));
  }
};

// Builds the quotients of k(n) and k_subdivided(n, lambda) on the group's
// base tile and the induced-map table between them.
inline LattesSystem build_lattes(const OrthotopicGroup& g, long lambda) {
  if (lambda < 1)
    throw error(Error::Code::BadInput, "expansion factor must be >= 1");
  LattesSystem s;
  s.group = g;
  s.lambda = lambda;
  s.coarse = build_quotient(g, build_k_stretched(g.domain));
  s.fine = build_quotient(
      g, build_k_subdivided_stretched(g.domain, static_cast<int>(lambda)));

  AffineMap expand = AffineMap::scaling(Rat(lambda), g.n);
  s.entries.resize(s.fine.class_count());
  std::vector<std::string> failure(s.fine.class_count());
  parallel_for(s.fine.class_count(), [&](std::size_t ci) {
    ConvexCell big = s.fine.class_reps[ci].transformed(expand);
    auto red = detail::reduce_into_domain(g, big);
    if (!red) {
      failure[ci] = "cannot reduce scaled class " + std::to_string(ci) +
                    " into the base tile";
      return;
    }
    auto& [into_q, img] = *red;
    std::optional<std::size_t> idx = s.coarse.plane.find(img);
    if (!idx) {
      failure[ci] = "scaled image " + img.to_string() +
                    " is not a coarse member cell";
      return;
    }
    AffineSignedIsometry to_rep;
    orbit_canonical_cell(g, img, &to_rep);
    s.entries[ci] =
        LattesEntry{s.coarse.class_of[*idx], to_rep.compose(into_q)};
  });
  for (const std::string& f : failure)
    if (!f.empty()) throw error(Error::Code::NotFound, f);
  return s;
}

// Mechanical verification of the induced map:
//  * the table has one entry per class, each carrying its representative
//    exactly onto the target representative with no dimension collapse;
//  * reducing the scaled image of any class member yields the same target
//    class (the map is well defined on orbits);
//  * faces of a class map to the classes assigned to the faces;
//  * every top coarse class has exactly lambda^n top preimage classes.
inline VerificationReport verify_markov(const LattesSystem& s) {
  VerificationReport report;
  const OrthotopicGroup& g = s.group;
  const std::size_t m = s.fine.class_count();
  if (s.entries.size() != m) {
    report.add_fail("table covers every class",
                    std::to_string(s.entries.size()) + " entries for " +
                        std::to_string(m) + " classes");
    return report;
  }
  report.add_pass("table covers every class");

  {
    std::vector<std::string> fail(m);
    parallel_for(m, [&](std::size_t ci) {
      const LattesEntry& e = s.entries[ci];
      if (e.target >= s.coarse.class_count()) {
        fail[ci] = "class " + std::to_string(ci) + " targets missing class " +
                   std::to_string(e.target);
        return;
      }
      const ConvexCell& rep = s.fine.class_reps[ci];
      ConvexCell mapped = rep.affine_image(s.realized_map(ci));
      if (mapped != s.coarse.class_reps[e.target]) {
        fail[ci] = "class " + std::to_string(ci) + " rep " + rep.to_string() +
                   " maps to " + mapped.to_string() + ", table claims " +
                   s.coarse.class_reps[e.target].to_string();
        return;
      }
      if (mapped.dim() != rep.dim())
        fail[ci] = "class " + std::to_string(ci) + " collapses dimension";
    });
    std::size_t bad = 0;
    for (std::size_t ci = 0; ci < m; ++ci)
      if (!fail[ci].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("classes map onto their targets", fail[ci]);
    if (bad == 0) report.add_pass("classes map onto their targets");
  }

  {
    AffineMap expand = AffineMap::scaling(Rat(s.lambda), g.n);
    std::vector<std::string> fail(s.fine.plane.size());
    parallel_for(s.fine.plane.size(), [&](std::size_t i) {
      ConvexCell big = s.fine.plane.cell(i).transformed(expand);
      auto red = detail::reduce_into_domain(g, big);
      if (!red) {
        fail[i] = "member " + detail::cell_label(s.fine.plane, i) +
                  " cannot be reduced into the base tile after scaling";
        return;
      }
      std::optional<std::size_t> cls = s.coarse.class_of_cell(red->second);
      if (!cls) {
        fail[i] = "scaled member " + detail::cell_label(s.fine.plane, i) +
                  " reduces to non-member " + red->second.to_string();
        return;
      }
      if (*cls != s.entries[s.fine.class_of[i]].target)
        fail[i] = "member " + detail::cell_label(s.fine.plane, i) +
                  " maps into class " + std::to_string(*cls) +
                  " but its orbit class is tabled to " +
                  std::to_string(s.entries[s.fine.class_of[i]].target);
    });
    std::size_t bad = 0;
    for (std::size_t i = 0; i < s.fine.plane.size(); ++i)
      if (!fail[i].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("map well defined on every member", fail[i]);
    if (bad == 0) report.add_pass("map well defined on every member");
  }

  {
    std::vector<std::string> fail(m);
    parallel_for(m, [&](std::size_t ci) {
      const ConvexCell& rep = s.fine.class_reps[ci];
      AffineMap f = s.realized_map(ci);
      for (std::size_t j = 0; j < s.fine.plane.size(); ++j) {
        const ConvexCell& sub = s.fine.plane.cell(j);
        if (sub == rep) continue;
        if (!detail::bbox_within(sub, rep) || !rep.contains_cell(sub)) continue;
        ConvexCell img = sub.affine_image(f);
        std::optional<std::size_t> cls = s.coarse.class_of_cell(img);
        if (!cls) {
          fail[ci] = "face " + sub.to_string() + " of class " +
                     std::to_string(ci) + " maps to non-member " +
                     img.to_string();
          return;
        }
        if (*cls != s.entries[s.fine.class_of[j]].target) {
          fail[ci] = "face " + sub.to_string() + " of class " +
                     std::to_string(ci) + " maps into class " +
                     std::to_string(*cls) + ", its own table row says " +
                     std::to_string(s.entries[s.fine.class_of[j]].target);
          return;
        }
      }
    });
    std::size_t bad = 0;
    for (std::size_t ci = 0; ci < m; ++ci)
      if (!fail[ci].empty() && bad++ < detail::kMaxWitnesses)
        report.add_fail("faces map compatibly", fail[ci]);
    if (bad == 0) report.add_pass("faces map compatibly");
  }

  {
    long long expect = 1;
    for (int t = 0; t < g.n; ++t) expect *= s.lambda;
    bool ok = true;
    for (std::size_t t0 = 0; t0 < s.coarse.class_count(); ++t0) {
      if (s.coarse.class_reps[t0].dim() != g.n) continue;
      long long count = 0;
      for (std::size_t ci = 0; ci < m; ++ci)
        if (s.fine.class_reps[ci].dim() == g.n && s.entries[ci].target == t0)
          ++count;
      if (count != expect) {
        report.add_fail("local degree",
                        "coarse top class " + std::to_string(t0) + " has " +
                            std::to_string(count) + " top preimages, expected " +
                            std::to_string(expect));
        ok = false;
      }
    }
    if (ok) report.add_pass("local degree " + std::to_string(expect));

    std::size_t fine_top = s.fine.class_count_of_dim(g.n);
    std::size_t coarse_top = s.coarse.class_count_of_dim(g.n);
    if (fine_top == static_cast<std::size_t>(expect) * coarse_top)
      report.add_pass("top class count");
    else
      report.add_fail("top class count",
                      std::to_string(fine_top) + " fine top classes vs " +
                          std::to_string(expect) + " x " +
                          std::to_string(coarse_top));
  }

  return report;
}

// Subdivision matrix on top classes: entry (r, c) counts the fine top classes
// lying in coarse top class c and mapping onto coarse top class r.
inline std::vector<std::vector<long long>> subdivision_matrix(
    const LattesSystem& s) {
  std::vector<std::size_t> top;  // coarse class indices of top dimension
  for (std::size_t i = 0; i < s.coarse.class_count(); ++i)
    if (s.coarse.class_reps[i].dim() == s.group.n) top.push_back(i);
  std::vector<std::size_t> col_of(s.coarse.class_count(), 0);
  for (std::size_t c = 0; c < top.size(); ++c) col_of[top[c]] = c;

  std::vector<std::vector<long long>> mat(
      top.size(), std::vector<long long>(top.size(), 0));
  for (std::size_t ci = 0; ci < s.fine.class_count(); ++ci) {
    const ConvexCell& rep = s.fine.class_reps[ci];
    if (rep.dim() != s.group.n) continue;
    std::optional<std::size_t> host;  // coarse plane top cell containing rep
    for (std::size_t j = 0; j < s.coarse.plane.size(); ++j) {
      const ConvexCell& c = s.coarse.plane.cell(j);
      if (c.dim() != s.group.n) continue;
      if (detail::bbox_within(rep, c) && c.contains_cell(rep)) {
        host = j;
        break;
      }
    }
    if (!host)
      throw error(Error::Code::NoContainingCell,
                  "fine top class lies in no coarse top cell");
    mat[col_of[s.entries[ci].target]][col_of[s.coarse.class_of[*host]]] += 1;
  }
  return mat;
}

}  // namespace orthocell
