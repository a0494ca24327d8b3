#pragma once

// JSON and OFF serialization.
//
// JSON keeps every coordinate as an exact "p/q" string, so a complex survives
// a round trip bit for bit (cells are rebuilt from their vertex sets, which
// determine the canonical form).  OFF output is for viewers only and renders
// coordinates as fixed 12-digit decimals.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "orthocell/cell_complex.hpp"
#include "orthocell/convex_cell.hpp"
#include "orthocell/error.hpp"
#include "orthocell/isometry.hpp"
#include "orthocell/lattes.hpp"
#include "orthocell/linalg.hpp"
#include "orthocell/rational.hpp"
#include "orthocell/report.hpp"

namespace orthocell {

using nlohmann::json;

inline json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const Rat& q : v) a.push_back(rat_to_string(q));
  return a;
}

inline Vec vec_from_json(const json& a) {
  Vec v;
  for (const json& e : a) v.push_back(rat_from_string(e.get<std::string>()));
  return v;
}

inline json cell_to_json(const ConvexCell& c) {
  json verts = json::array();
  for (const Point& p : c.verts()) verts.push_back(vec_to_json(p));
  return json{{"dim", c.dim()}, {"vertices", verts}};
}

inline ConvexCell cell_from_json(int ambient, const json& j) {
  std::vector<Point> pts;
  for (const json& v : j.at("vertices")) pts.push_back(vec_from_json(v));
  ConvexCell c = ConvexCell::from_points(ambient, std::move(pts));
  if (j.contains("dim") && j.at("dim").get<int>() != c.dim())
    throw error(Error::Code::BadInput,
                "cell dimension does not match its vertex set");
  return c;
}

inline json complex_to_json(const CellComplex& k) {
  json cells = json::array();
  for (std::size_t i = 0; i < k.size(); ++i) {
    json c = cell_to_json(k.cell(i));
    c["id"] = i;
    cells.push_back(std::move(c));
  }
  // Incidence: (cell, member cell one dimension down contained in it).
  json incidence = json::array();
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (k.cell(j).dim() != k.cell(i).dim() - 1) continue;
      if (!detail::bbox_within(k.cell(j), k.cell(i))) continue;
      if (k.cell(i).contains_cell(k.cell(j)))
        incidence.push_back(json::array({i, j}));
    }
  json pieces = json::array();
  for (const ConvexCell& p : k.space_pieces()) pieces.push_back(cell_to_json(p));
  return json{{"schema", "orthocell-complex"},
              {"version", 1},
              {"ambient_dim", k.ambient()},
              {"cells", cells},
              {"incidence", incidence},
              {"space_pieces", pieces}};
}

inline CellComplex complex_from_json(const json& j) {
  if (j.value("schema", "") != std::string("orthocell-complex"))
    throw error(Error::Code::BadInput, "not a complex document");
  int ambient = j.at("ambient_dim").get<int>();
  std::vector<ConvexCell> cells, pieces;
  for (const json& c : j.at("cells")) cells.push_back(cell_from_json(ambient, c));
  for (const json& p : j.value("space_pieces", json::array()))
    pieces.push_back(cell_from_json(ambient, p));
  return CellComplex::from_cells(ambient, std::move(cells), std::move(pieces));
}

inline json report_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const CheckEntry& e : r.entries()) {
    json c{{"name", e.name}, {"pass", e.pass}};
    if (!e.witness.empty()) c["witness"] = e.witness;
    checks.push_back(std::move(c));
  }
  return json{{"passed", r.passed()}, {"checks", checks}};
}

inline json isometry_to_json(const AffineSignedIsometry& g) {
  json perm = json::array(), signs = json::array();
  for (int p : g.linear.perm) perm.push_back(p);
  for (int s : g.linear.signs) signs.push_back(s);
  return json{{"perm", perm},
              {"signs", signs},
              {"translation", vec_to_json(g.translation)}};
}

inline AffineSignedIsometry isometry_from_json(const json& j) {
  AffineSignedIsometry g;
  for (const json& p : j.at("perm")) g.linear.perm.push_back(p.get<int>());
  for (const json& s : j.at("signs")) g.linear.signs.push_back(s.get<int>());
  g.translation = vec_from_json(j.at("translation"));
  if (g.linear.perm.size() != g.linear.signs.size() ||
      g.linear.perm.size() != g.translation.size())
    throw error(Error::Code::BadInput, "inconsistent isometry fields");
  for (int s : g.linear.signs)
    if (s != 1 && s != -1)
      throw error(Error::Code::BadInput, "signs must be +-1");
  std::vector<int> seen(g.linear.perm.size(), 0);
  for (int p : g.linear.perm) {
    if (p < 0 || p >= static_cast<int>(seen.size()) || seen[p]++)
      throw error(Error::Code::BadInput, "bad permutation");
  }
  return g;
}

inline json quotient_to_json(const QuotientComplex& q) {
  json reps = json::array();
  for (const ConvexCell& r : q.class_reps) reps.push_back(cell_to_json(r));
  return json{{"classes", reps},
              {"member_cells", q.plane.size()},
              {"euler_characteristic", q.euler_characteristic()}};
}

inline json lattes_to_json(const LattesSystem& s) {
  auto classes = [](const QuotientComplex& q) { return quotient_to_json(q); };
  json table = json::array();
  for (std::size_t i = 0; i < s.entries.size(); ++i)
    table.push_back(json{{"source", i},
                         {"target", s.entries[i].target},
                         {"deck", isometry_to_json(s.entries[i].deck)}});
  json sides = vec_to_json(s.group.sides);
  return json{{"schema", "orthocell-expanding-map"},
              {"version", 1},
              {"ambient_dim", s.group.n},
              {"sides", sides},
              {"lambda", s.lambda},
              {"coarse", classes(s.coarse)},
              {"fine", classes(s.fine)},
              {"map", table}};
}

// Fixed 12-digit decimal rendering (presentation only; rounding to nearest,
// ties away from zero).
inline std::string format_decimal(const Rat& q) {
  static const Int kScale = [] {
    Int s = 1;
    for (int i = 0; i < 12; ++i) s *= 10;
    return s;
  }();
  Int num = q.get_num(), den = q.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  Int scaled = (2 * num * kScale + den) / (2 * den);  // round(num*scale/den)
  Int whole = scaled / kScale, frac = scaled % kScale;
  std::string f = frac.get_str();
  f.insert(f.begin(), 12 - f.size(), '0');
  return (neg && scaled != 0 ? "-" : "") + whole.get_str() + "." + f;
}

// OFF export for ambient dimension <= 3: all cell vertices, then one polygon
// line per two-dimensional cell, corners in cyclic order.  The header counts
// vertices, polygons, and one-dimensional cells.
inline std::string complex_to_off(const CellComplex& k) {
  if (k.ambient() > 3)
    throw error(Error::Code::BadInput, "OFF output needs ambient dimension <= 3");
  std::vector<Point> verts;
  for (const ConvexCell& c : k.cells())
    for (const Point& v : c.verts()) verts.push_back(v);
  std::sort(verts.begin(), verts.end(), lex_less);
  verts.erase(std::unique(verts.begin(), verts.end(),
                          [](const Point& a, const Point& b) {
                            return cmp_vec(a, b) == 0;
                          }),
              verts.end());
  auto vertex_index = [&](const Point& p) {
    auto it = std::lower_bound(verts.begin(), verts.end(), p, lex_less);
    return static_cast<std::size_t>(it - verts.begin());
  };

  std::vector<std::vector<std::size_t>> polygons;
  for (const ConvexCell& c : k.cells()) {
    if (c.dim() != 2) continue;
    // Project the polygon's plane onto two independent coordinate axes; an
    // affine chart preserves the cyclic order of the corners.
    Mat diffs;
    for (std::size_t i = 1; i < c.verts().size(); ++i)
      diffs.push_back(sub(c.verts()[i], c.verts()[0]));
    std::vector<int> piv = row_reduce(diffs);
    Point center = c.relative_interior_point();
    struct Corner {
      Rat x, y;
      std::size_t idx;
    };
    std::vector<Corner> corners;
    for (const Point& v : c.verts())
      corners.push_back({v[static_cast<std::size_t>(piv[0])] -
                             center[static_cast<std::size_t>(piv[0])],
                         v[static_cast<std::size_t>(piv[1])] -
                             center[static_cast<std::size_t>(piv[1])],
                         vertex_index(v)});
    std::sort(corners.begin(), corners.end(), [](const Corner& a, const Corner& b) {
      auto half = [](const Corner& c) {
        return (c.y > 0 || (c.y == 0 && c.x > 0)) ? 0 : 1;
      };
      if (half(a) != half(b)) return half(a) < half(b);
      return a.x * b.y - b.x * a.y > 0;
    });
    std::vector<std::size_t> poly;
    for (const Corner& c2 : corners) poly.push_back(c2.idx);
    polygons.push_back(std::move(poly));
  }

  std::string out = "OFF\n";
  out += std::to_string(verts.size()) + " " + std::to_string(polygons.size()) +
         " " + std::to_string(k.count_of_dim(1)) + "\n";
  for (const Point& v : verts) {
    for (int i = 0; i < 3; ++i) {
      if (i) out += " ";
      out += i < k.ambient() ? format_decimal(v[static_cast<std::size_t>(i)])
                             : format_decimal(Rat(0));
    }
    out += "\n";
  }
  for (const std::vector<std::size_t>& p : polygons) {
    out += std::to_string(p.size());
    for (std::size_t i : p) out += " " + std::to_string(i);
    out += "\n";
  }
  return out;
}

}  // namespace orthocell
