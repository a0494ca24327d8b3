#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include "orthocell/convex_cell.hpp"
#include "orthocell/error.hpp"
#include "orthocell/isometry.hpp"

using namespace orthocell;

namespace {

Point pt(long x) { return Point{rat(x)}; }
Point pt(long x, long y) { return Point{rat(x), rat(y)}; }
Point pt(long x, long y, long z) { return Point{rat(x), rat(y), rat(z)}; }

}  // namespace

TEST_CASE("from_points canonicalizes away duplicates and interior points") {
  ConvexCell seg = ConvexCell::from_points(
      2, {pt(2, 2), pt(0, 0), pt(1, 1), pt(0, 0)});
  CHECK(seg.dim() == 1);
  REQUIRE(seg.verts().size() == 2);
  CHECK(seg.verts()[0] == pt(0, 0));
  CHECK(seg.verts()[1] == pt(2, 2));
  CHECK(seg == ConvexCell::from_points(2, {pt(0, 0), pt(2, 2)}));
  CHECK(seg.to_string() == "cell(dim 1: (0, 0) (2, 2))");
}

TEST_CASE("point and box constructors") {
  ConvexCell p = ConvexCell::point(pt(3, -1));
  CHECK(p.dim() == 0);
  CHECK(p.ambient() == 2);

  ConvexCell b = ConvexCell::box(Vec{rat(-1), rat(0)}, Vec{rat(1), rat(2)});
  CHECK(b.dim() == 2);
  CHECK(b.verts().size() == 4);
  CHECK(b == ConvexCell::from_points(2, {pt(-1, 0), pt(1, 0), pt(-1, 2), pt(1, 2)}));

  ConvexCell flat = ConvexCell::box(Vec{rat(0), rat(1)}, Vec{rat(2), rat(1)});
  CHECK(flat.dim() == 1);
}

TEST_CASE("from_hrep recovers vertices of a triangle") {
  // x >= 0, y >= 0, x + y <= 1
  std::vector<Constraint> ineqs{{{rat(1), rat(0)}, rat(0)},
                                {{rat(0), rat(1)}, rat(0)},
                                {{rat(-1), rat(-1)}, rat(-1)}};
  auto tri = ConvexCell::from_hrep(2, ineqs);
  REQUIRE(tri.has_value());
  CHECK(tri->dim() == 2);
  CHECK(*tri == ConvexCell::from_points(2, {pt(0, 0), pt(1, 0), pt(0, 1)}));
  CHECK(tri->is_simplex());
}

TEST_CASE("from_hrep handles equalities, emptiness, unboundedness") {
  std::vector<Constraint> cube{{{rat(1), rat(0)}, rat(-1)},
                               {{rat(-1), rat(0)}, rat(-1)},
                               {{rat(0), rat(1)}, rat(-1)},
                               {{rat(0), rat(-1)}, rat(-1)}};
  auto diag = ConvexCell::from_hrep(
      2, cube, {Constraint{{rat(1), rat(-1)}, rat(0)}});
  REQUIRE(diag.has_value());
  CHECK(diag->dim() == 1);
  CHECK(*diag == ConvexCell::from_points(2, {pt(-1, -1), pt(1, 1)}));

  auto empty = ConvexCell::from_hrep(
      1, {Constraint{{rat(1)}, rat(1)}, Constraint{{rat(-1)}, rat(0)}});
  CHECK(!empty.has_value());

  CHECK_THROWS_AS(ConvexCell::from_hrep(2, {Constraint{{rat(1), rat(0)}, rat(0)}}),
                  Error);
}

TEST_CASE("intersection of two triangles is a segment") {
  ConvexCell a = ConvexCell::from_points(2, {pt(0, 0), pt(2, 0), pt(0, 2)});
  ConvexCell b = ConvexCell::from_points(2, {pt(0, 0), pt(2, 0), pt(1, -2)});
  auto meet = intersect_cells(a, b);
  REQUIRE(meet.has_value());
  CHECK(*meet == ConvexCell::from_points(2, {pt(0, 0), pt(2, 0)}));

  ConvexCell far = ConvexCell::from_points(2, {pt(5, 5), pt(6, 5), pt(5, 6)});
  CHECK(intersect_cells(a, far) == std::nullopt);
}

TEST_CASE("cone over a segment is a triangle") {
  ConvexCell cone = ConvexCell::from_points(2, {pt(0, 0), pt(1, -1), pt(1, 1)});
  CHECK(cone.dim() == 2);
  CHECK(cone.verts().size() == 3);
  CHECK(cone.contains_point(Point{rat(1, 2), rat(0)}));
  CHECK(cone.relint_contains(Point{rat(1, 2), rat(0)}));
  CHECK(!cone.relint_contains(pt(0, 0)));
  CHECK(cone.contains_cell(ConvexCell::from_points(2, {pt(0, 0), pt(1, 0)})));
}

TEST_CASE("relative interior point lies strictly inside") {
  ConvexCell seg = ConvexCell::from_points(3, {pt(0, 0, 0), pt(2, 4, 0)});
  Point m = seg.relative_interior_point();
  CHECK(seg.relint_contains(m));
  CHECK(m == Point{rat(1), rat(2), rat(0)});
}

TEST_CASE("isometry transforms are exact") {
  // Quarter turn: e_0 -> e_1 and e_1 -> -e_0, i.e. (x, y) -> (-y, x), then
  // shift by (1, 0).
  AffineSignedIsometry g;
  g.linear.perm = {1, 0};
  g.linear.signs = {1, -1};
  g.translation = {rat(1), rat(0)};
  ConvexCell quad = ConvexCell::from_points(2, {pt(0, 0), pt(1, 0), pt(1, 1)});
  ConvexCell img = quad.transformed(g);
  CHECK(img == ConvexCell::from_points(2, {pt(1, 0), pt(1, 1), pt(0, 1)}));
  CHECK(quad.transformed(g.inverse()).transformed(g) == quad);
  CHECK(img.volume() == quad.volume());
}

TEST_CASE("affine transforms and degenerate images") {
  AffineMap stretch = AffineMap::diagonal(Vec{rat(2), rat(3)});
  ConvexCell sq = ConvexCell::box(Vec{rat(0), rat(0)}, Vec{rat(1), rat(1)});
  ConvexCell img = sq.transformed(stretch);
  CHECK(img == ConvexCell::box(Vec{rat(0), rat(0)}, Vec{rat(2), rat(3)}));
  CHECK(img.volume() == Volume::rational(rat(6)));

  // Projection onto the x-axis is not invertible; affine_image still works.
  AffineMap proj{Mat{{rat(1), rat(0)}, {rat(0), rat(0)}}, zero_vec(2)};
  ConvexCell shadow = sq.affine_image(proj);
  CHECK(shadow.dim() == 1);
  CHECK(shadow == ConvexCell::from_points(2, {pt(0, 0), pt(1, 0)}));
}

TEST_CASE("facets of a square are its four edges") {
  ConvexCell sq = ConvexCell::box(Vec{rat(-1), rat(-1)}, Vec{rat(1), rat(1)});
  std::vector<ConvexCell> fs = sq.facets();
  REQUIRE(fs.size() == 4);
  for (const ConvexCell& f : fs) CHECK(f.dim() == 1);

  CHECK_THROWS_AS(ConvexCell::point(pt(0)).facets(), Error);
}

TEST_CASE("volumes of segments, triangles, boxes") {
  CHECK(ConvexCell::point(pt(7)).volume() == Volume::rational(rat(1)));
  ConvexCell seg = ConvexCell::from_points(1, {pt(-1), pt(1)});
  CHECK(seg.volume() == Volume::rational(rat(2)));

  // The long diagonal of the centered square: length 2*sqrt(2).
  ConvexCell diag = ConvexCell::from_points(2, {pt(-1, -1), pt(1, 1)});
  CHECK(diag.volume() == Volume(rat(2), 2));
  CHECK(!diag.volume().is_rational());

  ConvexCell tri = ConvexCell::from_points(2, {pt(0, 0), pt(1, 0), pt(0, 1)});
  CHECK(tri.volume() == Volume::rational(rat(1, 2)));

  ConvexCell cube = ConvexCell::box(Vec{rat(-1), rat(-1), rat(-1)},
                                    Vec{rat(1), rat(1), rat(1)});
  CHECK(cube.volume() == Volume::rational(rat(8)));

  // Pentagon assembled from a square and a triangle.
  ConvexCell pent = ConvexCell::from_points(
      2, {pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2), pt(3, 1)});
  CHECK(pent.volume() == Volume::rational(rat(5)));
}

TEST_CASE("volume is invariant under signed permutation isometries") {
  ConvexCell tet =
      ConvexCell::from_points(3, {pt(0, 0, 0), pt(1, 0, 0), pt(1, 1, 0), pt(1, 1, 1)});
  CHECK(tet.volume() == Volume::rational(rat(1, 6)));
  AffineSignedIsometry g;
  g.linear.perm = {2, 0, 1};
  g.linear.signs = {-1, 1, -1};
  g.translation = {rat(5), rat(-7), rat(1, 3)};
  CHECK(tet.transformed(g).volume() == tet.volume());

  ConvexCell slant = ConvexCell::from_points(3, {pt(0, 0, 0), pt(1, 1, 0), pt(1, 1, 1), pt(0, 0, 1)});
  CHECK(slant.volume() == Volume(rat(1), 2));
  CHECK(slant.transformed(g).volume() == slant.volume());
}

TEST_CASE("cells are totally ordered") {
  ConvexCell a = ConvexCell::point(pt(0, 0));
  ConvexCell b = ConvexCell::point(pt(0, 1));
  ConvexCell c = ConvexCell::from_points(2, {pt(0, 0), pt(0, 1)});
  CHECK(a < b);
  CHECK(!(b < a));
  CHECK(a != b);
  CHECK((a < c) != (c < a));
}
