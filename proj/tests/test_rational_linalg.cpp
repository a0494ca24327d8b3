#include <catch2/catch_amalgamated.hpp>

#include "orthocell/linalg.hpp"
#include "orthocell/rational.hpp"
#include "orthocell/volume.hpp"

using namespace orthocell;

TEST_CASE("rational construction and serialization") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-3, -6) == rat(1, 2));
  CHECK(rat(3, -6) == rat(-1, 2));
  CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);

  CHECK(rat_to_string(rat(7)) == "7");
  CHECK(rat_to_string(rat(-10, 4)) == "-5/2");
  CHECK(rat_from_string("-5/2") == rat(-5, 2));
  CHECK(rat_from_string("0") == 0);
  CHECK_THROWS_AS(rat_from_string("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("x"), std::invalid_argument);

  for (long num : {-7L, 0L, 5L, 123456789L})
    for (long den : {1L, 2L, 3L, 97L}) {
      Rat q = rat(num, den);
      CHECK(rat_from_string(rat_to_string(q)) == q);
    }
}

TEST_CASE("floor and integrality") {
  CHECK(rat_floor(rat(7, 2)) == 3);
  CHECK(rat_floor(rat(-7, 2)) == -4);
  CHECK(rat_floor(rat(4)) == 4);
  CHECK(is_integer(rat(4)));
  CHECK(!is_integer(rat(1, 3)));
}

TEST_CASE("vector order is total and lexicographic") {
  Vec a{rat(1), rat(2)};
  Vec b{rat(1), rat(3)};
  CHECK(cmp_vec(a, a) == 0);
  CHECK(cmp_vec(a, b) < 0);
  CHECK(cmp_vec(b, a) > 0);
  CHECK(lex_less(Vec{rat(1)}, Vec{rat(1), rat(0)}));  // shorter first
  CHECK(vec_to_string(Vec{rat(1, 2), rat(-3)}) == "(1/2, -3)");
}

TEST_CASE("row reduction and rank") {
  Mat m{{rat(1), rat(2), rat(3)}, {rat(2), rat(4), rat(6)}, {rat(0), rat(1), rat(1)}};
  CHECK(rank(m) == 2);
  std::vector<int> piv = row_reduce(m);
  REQUIRE(piv == std::vector<int>{0, 1});
  CHECK(m.size() == 2);
  CHECK(m[0] == Vec{rat(1), rat(0), rat(1)});
  CHECK(m[1] == Vec{rat(0), rat(1), rat(1)});
}

TEST_CASE("nullspace spans the kernel") {
  Mat m{{rat(1), rat(1), rat(0)}, {rat(0), rat(0), rat(1)}};
  std::vector<Vec> basis = nullspace(m);
  REQUIRE(basis.size() == 1);
  CHECK(is_zero(mat_apply(m, basis[0])));
  CHECK(!is_zero(basis[0]));
}

TEST_CASE("solve finds a particular solution or reports inconsistency") {
  Mat m{{rat(2), rat(0)}, {rat(0), rat(4)}};
  auto x = solve(m, Vec{rat(1), rat(1)});
  REQUIRE(x.has_value());
  CHECK(*x == Vec{rat(1, 2), rat(1, 4)});

  Mat sing{{rat(1), rat(1)}, {rat(2), rat(2)}};
  CHECK(solve(sing, Vec{rat(0), rat(1)}) == std::nullopt);
  auto y = solve(sing, Vec{rat(3), rat(6)});
  REQUIRE(y.has_value());
  CHECK(dot((sing)[0], *y) == 3);
}

TEST_CASE("inverse and determinant") {
  Mat m{{rat(2), rat(1)}, {rat(1), rat(1)}};
  CHECK(det(m) == 1);
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(mat_mul(m, *inv) == identity_mat(2));

  Mat sing{{rat(1), rat(2)}, {rat(2), rat(4)}};
  CHECK(det(sing) == 0);
  CHECK(inverse(sing) == std::nullopt);

  Mat swapped{{rat(0), rat(1)}, {rat(1), rat(0)}};
  CHECK(det(swapped) == -1);
}

TEST_CASE("affine rank of point sets") {
  std::vector<Point> seg{{rat(0), rat(0)}, {rat(2), rat(2)}};
  CHECK(affine_rank(seg) == 1);
  std::vector<Point> tri{{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}};
  CHECK(affine_rank(tri) == 2);
  CHECK(affine_rank({{rat(5)}}) == 0);
}

TEST_CASE("volumes combine square roots exactly") {
  CHECK(Volume::rational(rat(1, 2)) + Volume::rational(rat(1, 2)) ==
        Volume::rational(rat(1)));
  // sqrt(2) + sqrt(8) = 3 sqrt(2)
  Volume s2(rat(1), 2), s8(rat(1), 8);
  CHECK(s2 + s8 == Volume(rat(3), 2));
  CHECK(s2 != Volume(rat(1), 3));
  CHECK((s2 + s2).to_string() == "2*sqrt(2)");
  CHECK(Volume().is_rational());
  CHECK(Volume::rational(rat(3, 4)).rational_value() == rat(3, 4));
  CHECK(s2.scaled(rat(0)) == Volume::zero());
}
