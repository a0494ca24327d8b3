#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "orthocell/orthocell.hpp"

using namespace orthocell;
using nlohmann::json;

TEST_CASE("vectors serialize as exact rational strings") {
  Vec v{rat(1, 2), rat(-3), rat(0), rat(22, 7)};
  json j = vec_to_json(v);
  CHECK(j == json::array({"1/2", "-3", "0", "22/7"}));
  CHECK(cmp_vec(vec_from_json(j), v) == 0);
}

TEST_CASE("cells round-trip through json") {
  ConvexCell tri = ConvexCell::from_points(
      2, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}, {rat(1, 2), rat(0)}});
  json j = cell_to_json(tri);
  CHECK(j["dim"] == 2);
  CHECK(j["vertices"].size() == 3);  // canonical form drops the midpoint
  CHECK(cell_from_json(2, j) == tri);

  j["dim"] = 1;
  CHECK_THROWS_AS(cell_from_json(2, j), Error);
}

TEST_CASE("complexes round-trip through json") {
  CellComplex k = build_k(2);
  json j = complex_to_json(k);
  CHECK(j["schema"] == "orthocell-complex");
  CHECK(j["ambient_dim"] == 2);
  CHECK(j["cells"].size() == 33);
  CHECK(j["space_pieces"].size() == 1);

  // Incidence pairs list (cell, contained cell one dimension down).
  CHECK(!j["incidence"].empty());
  for (const json& pair : j["incidence"]) {
    const ConvexCell& hi = k.cell(pair[0].get<std::size_t>());
    const ConvexCell& lo = k.cell(pair[1].get<std::size_t>());
    CHECK(lo.dim() == hi.dim() - 1);
    CHECK(hi.contains_cell(lo));
  }

  CellComplex back = complex_from_json(j);
  REQUIRE(back.size() == k.size());
  for (std::size_t i = 0; i < k.size(); ++i) CHECK(back.cell(i) == k.cell(i));
  REQUIRE(back.space_pieces().size() == 1);
  CHECK(back.space_pieces()[0] == k.space_pieces()[0]);

  json bad = j;
  bad["schema"] = "something-else";
  CHECK_THROWS_AS(complex_from_json(bad), Error);
}

TEST_CASE("reports serialize with witnesses") {
  VerificationReport r;
  r.add_pass("first");
  r.add_fail("second", "cell(dim 0: (0))");
  json j = report_to_json(r);
  CHECK(j["passed"] == false);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0] == json{{"name", "first"}, {"pass", true}});
  CHECK(j["checks"][1]["witness"] == "cell(dim 0: (0))");
}

TEST_CASE("isometries round-trip and are validated") {
  AffineSignedIsometry g = AffineSignedIsometry::identity(3);
  g.linear.perm = {2, 0, 1};
  g.linear.signs = {-1, 1, -1};
  g.translation = Vec{rat(5), rat(-7), rat(1, 3)};
  json j = isometry_to_json(g);
  CHECK(isometry_from_json(j) == g);

  json bad = j;
  bad["signs"][1] = 2;
  CHECK_THROWS_AS(isometry_from_json(bad), Error);
  bad = j;
  bad["perm"] = json::array({0, 0, 1});
  CHECK_THROWS_AS(isometry_from_json(bad), Error);
  bad = j;
  bad["translation"] = json::array({"1", "2"});
  CHECK_THROWS_AS(isometry_from_json(bad), Error);
}

TEST_CASE("quotient and map documents carry the expected shape") {
  OrthotopicGroup tor = torus_group(Vec{rat(1)});
  LattesSystem s = build_lattes(tor, 2);
  json j = lattes_to_json(s);
  CHECK(j["schema"] == "orthocell-expanding-map");
  CHECK(j["ambient_dim"] == 1);
  CHECK(j["lambda"] == 2);
  CHECK(j["sides"] == json::array({"1"}));
  CHECK(j["coarse"]["classes"].size() == 4);
  CHECK(j["coarse"]["euler_characteristic"] == 0);
  CHECK(j["fine"]["classes"].size() == 8);
  REQUIRE(j["map"].size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(j["map"][i]["source"] == i);
    CHECK(j["map"][i]["target"] == s.entries[i].target);
    CHECK(isometry_from_json(j["map"][i]["deck"]) == s.entries[i].deck);
  }
}

TEST_CASE("decimal formatting rounds half away from zero") {
  CHECK(format_decimal(rat(1, 2)) == "0.500000000000");
  CHECK(format_decimal(rat(0)) == "0.000000000000");
  CHECK(format_decimal(rat(5, 4)) == "1.250000000000");
  CHECK(format_decimal(rat(1, 3)) == "0.333333333333");
  CHECK(format_decimal(rat(2, 3)) == "0.666666666667");
  CHECK(format_decimal(rat(-1, 3)) == "-0.333333333333");
  Rat tie = rat(1) / (rat(2) * rat(1000000000000L));
  CHECK(format_decimal(tie) == "0.000000000001");
  CHECK(format_decimal(-tie) == "-0.000000000001");
  CHECK(format_decimal(tie / 10) == "0.000000000000");
}

TEST_CASE("off export of an interval decomposition") {
  std::string off = complex_to_off(build_k(1));
  CHECK(off ==
        "OFF\n"
        "3 0 2\n"
        "-1.000000000000 0.000000000000 0.000000000000\n"
        "0.000000000000 0.000000000000 0.000000000000\n"
        "1.000000000000 0.000000000000 0.000000000000\n");
}

TEST_CASE("off export renders polygons in cyclic corner order") {
  CellComplex f =
      box_face_complex(Box::bounds(Vec{rat(0), rat(0)}, Vec{rat(1), rat(1)}));
  std::string off = complex_to_off(f);
  REQUIRE(off.rfind("OFF\n4 1 4\n", 0) == 0);
  std::string last = off.substr(off.rfind('\n', off.size() - 2) + 1);
  REQUIRE(last.rfind("4 ", 0) == 0);
  // Vertices are indexed in lexicographic order: 0=(0,0) 1=(0,1) 2=(1,0)
  // 3=(1,1).  Any cyclic rotation or reversal of the boundary walk 0,1,3,2
  // is a valid polygon line.
  std::vector<std::string> ok = {"4 0 1 3 2\n", "4 1 3 2 0\n", "4 3 2 0 1\n",
                                 "4 2 0 1 3\n", "4 0 2 3 1\n", "4 2 3 1 0\n",
                                 "4 3 1 0 2\n", "4 1 0 2 3\n"};
  CHECK(std::find(ok.begin(), ok.end(), last) != ok.end());

  ConvexCell hyper = ConvexCell::point(Vec{rat(0), rat(0), rat(0), rat(0)});
  CHECK_THROWS_AS(complex_to_off(CellComplex::from_cells(4, {hyper})), Error);
}
