#pragma once

// Independent reference computations the tests compare against. These avoid
// the library's construction paths on purpose:
//
//  * strata_counts scans a rational grid on [-1,1]^d and classifies points by
//    the sign vector of the reflection-arrangement functionals x_i, x_i-x_j,
//    x_i+x_j together with the cube bounds.  Distinct sign vectors are the
//    open strata; their closures are the cells of k(d), and the strata not
//    touching the cube boundary are the cells of ko(d).  A stratum's dimension
//    is d minus the rank of its tight normals.  Grid denominator 4 realizes
//    every stratum for d <= 4 (at most five distinct coordinate levels are
//    needed); the tests also cross-check denominator 8.
//
//  * exhaustive_fundamental_cells enumerates every subset of the halfspace
//    specs (all 4^pairs * ... of them, not just the minimal ones) and keeps
//    the fundamental subsets' intersections.  No closure step: the union of
//    two fundamental subsets is fundamental, so this family is already closed
//    under pairwise intersection.
//
//  * orbit_classes_bruteforce identifies plane cells under a group by
//    union-find over pairwise image comparisons, using a wide translate shell
//    rather than canonical representatives.

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "orthocell/orthocell.hpp"

namespace oracle {

using namespace orthocell;

struct StrataCounts {
  std::vector<std::size_t> all_by_dim;       // cells of k(d)
  std::vector<std::size_t> interior_by_dim;  // cells of ko(d)
};

inline StrataCounts strata_counts(int d, int denom) {
  struct Functional {
    Vec normal;
    Rat offset;  // sign of normal . x + offset
    bool cube;
  };
  std::vector<Functional> fs;
  for (int i = 0; i < d; ++i) {
    Vec v = zero_vec(d);
    v[i] = 1;
    fs.push_back({v, Rat(0), false});
    fs.push_back({v, Rat(-1), true});
    fs.push_back({v, Rat(1), true});
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vec m = zero_vec(d), p = zero_vec(d);
      m[i] = 1;
      m[j] = -1;
      p[i] = 1;
      p[j] = 1;
      fs.push_back({m, Rat(0), false});
      fs.push_back({p, Rat(0), false});
    }

  std::map<std::vector<int>, int> stratum_dim;  // sign vector -> dim
  std::vector<int> idx(d, 0);
  const int steps = 2 * denom + 1;
  while (true) {
    Point x(d);
    for (int t = 0; t < d; ++t) x[t] = rat(idx[t] - denom, denom);
    std::vector<int> sv;
    Mat tight;
    for (const Functional& f : fs) {
      int s = sign(dot(f.normal, x) + f.offset);
      sv.push_back(s);
      if (s == 0) tight.push_back(f.normal);
    }
    stratum_dim.emplace(std::move(sv), d - rank(std::move(tight)));
    int t = 0;
    for (; t < d; ++t) {
      if (++idx[t] < steps) break;
      idx[t] = 0;
    }
    if (t == d || d == 0) break;
  }

  StrataCounts out;
  out.all_by_dim.assign(d + 1, 0);
  out.interior_by_dim.assign(d + 1, 0);
  for (const auto& [sv, dim] : stratum_dim) {
    out.all_by_dim[dim]++;
    bool interior = true;
    for (std::size_t f = 0; f < fs.size(); ++f)
      if (fs[f].cube && sv[f] == 0) interior = false;
    if (interior) out.interior_by_dim[dim]++;
  }
  return out;
}

inline std::vector<ConvexCell> exhaustive_fundamental_cells(int d) {
  std::vector<HalfspaceSpec> specs = all_halfspace_specs(d);
  std::set<ConvexCell> cells;
  for (std::size_t code = 0; code < (std::size_t{1} << specs.size()); ++code) {
    std::vector<HalfspaceSpec> subset;
    for (std::size_t s = 0; s < specs.size(); ++s)
      if (code & (std::size_t{1} << s)) subset.push_back(specs[s]);
    if (!is_fundamental(d, subset)) continue;
    std::vector<Constraint> ineqs;
    for (int t = 0; t < d; ++t) {
      Vec lo = zero_vec(d), hi = zero_vec(d);
      lo[t] = 1;
      hi[t] = -1;
      ineqs.push_back({std::move(lo), Rat(-1)});
      ineqs.push_back({std::move(hi), Rat(-1)});
    }
    for (const HalfspaceSpec& h : subset)
      if (!h.vacuous()) ineqs.push_back(h.row(d));
    auto c = ConvexCell::from_hrep(d, ineqs);
    if (c) cells.insert(*std::move(c));
  }
  return {cells.begin(), cells.end()};
}

// Class counts by dimension of plane cells identified under the group, by
// exhaustive pairwise comparison over a translate shell.
inline std::vector<std::size_t> orbit_classes_bruteforce(
    const OrthotopicGroup& g, const CellComplex& plane, int radius = 2) {
  std::vector<std::size_t> parent(plane.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const AffineSignedIsometry& e : g.shell(radius)) {
    for (std::size_t i = 0; i < plane.size(); ++i) {
      ConvexCell img = plane.cell(i).transformed(e);
      std::optional<std::size_t> j = plane.find(img);
      if (j && find(*j) != find(i)) parent[find(*j)] = find(i);
    }
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(plane.dim()) + 1, 0);
  for (std::size_t i = 0; i < plane.size(); ++i)
    if (find(i) == i) counts[static_cast<std::size_t>(plane.cell(i).dim())]++;
  return counts;
}

}  // namespace oracle
