#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "subbary/convex_body.hpp"
#include "subbary/verifier.hpp"
#include "test_support.hpp"

using namespace subbary;
using namespace subbary::testing;

TEST_CASE("build reduces to extreme vertices") {
  const ConvexBody tri = corner_triangle();
  CHECK(tri.vertices().size() == 3);

  const ConvexBody with_interior =
      body2({{0, 0}, {1, 0}, {0, 1}, {Rat(1, 4), Rat(1, 4)}});
  CHECK(with_interior.vertices().size() == 3);
  CHECK(with_interior.volume() == tri.volume());

  // midpoint of an edge is not extreme either
  const ConvexBody with_edge_point =
      body2({{0, 0}, {1, 0}, {0, 1}, {Rat(1, 2), Rat(0)}});
  CHECK(with_edge_point.vertices().size() == 3);
}

TEST_CASE("build rejects degenerate input") {
  CHECK_THROWS_AS(body2({{0, 0}, {1, 0}, {2, 0}}), DegenerateBody);
  CHECK_THROWS_AS(ConvexBody::build({}, 2), EmptyInput);
  CHECK_THROWS_AS(body2({{0, 0}, {1, 0}}), DegenerateBody);
  // duplicated points collapse before the count check
  CHECK_THROWS_AS(body2({{0, 0}, {1, 0}, {1, 0}}), DegenerateBody);
}

TEST_CASE("exact volumes") {
  CHECK(unit_cube(3).volume() == Rat(1));
  CHECK(standard_simplex(2).volume() == Rat(1, 2));
  CHECK(standard_simplex(3).volume() == Rat(1, 6));
  CHECK(standard_simplex(4).volume() == Rat(1, 24));
  CHECK(eckardt_quadrilateral().volume() == Rat(3));
}

TEST_CASE("exact barycenters") {
  const ConvexBody tri = corner_triangle();
  CHECK(tri.barycenter() == RatVec{Rat(1, 3), Rat(1, 3)});

  const ConvexBody cube = unit_cube(4);
  CHECK(cube.barycenter() == RatVec(4, Rat(1, 2)));

  CHECK(eckardt_quadrilateral().barycenter() == RatVec{Rat(4, 3), Rat(0)});
}

TEST_CASE("support values") {
  const auto eck = eckardt_quadrilateral();
  const auto [lo, hi] = eck.support(Direction::coordinate(0));
  CHECK(lo == Rat(0));
  CHECK(hi == Rat(3));

  const auto [a, b] = unit_square().support(Direction::coordinate(1));
  CHECK(a == Rat(0));
  CHECK(b == Rat(1));

  const auto [c, d] = corner_triangle().support(Direction::coordinate(0));
  CHECK(c == Rat(0));
  CHECK(d == Rat(1));

  // general rational direction
  const auto [e, f] =
      unit_square().support(Direction::vector({Rat(1), Rat(1)}));
  CHECK(e == Rat(0));
  CHECK(f == Rat(2));
}

TEST_CASE("clip basic slices") {
  const Direction x = Direction::coordinate(0);

  auto rect = clip(unit_square(), SliceSpec{x, Rat(1, 2), Side::Ge});
  REQUIRE(rect.has_value());
  CHECK(rect->volume() == Rat(1, 2));
  CHECK(rect->vertices().size() == 4);

  auto tri = clip(corner_triangle(), SliceSpec{x, Rat(1, 2), Side::Ge});
  REQUIRE(tri.has_value());
  CHECK(tri->volume() == Rat(1, 8));
  const std::vector<RatVec> expected = {
      {Rat(1, 2), Rat(0)}, {Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(0)}};
  CHECK(tri->vertices() == expected);

  auto eck = clip(eckardt_quadrilateral(), SliceSpec{x, Rat(2), Side::Ge});
  REQUIRE(eck.has_value());
  CHECK(eck->volume() == Rat(1, 2));
  const std::vector<RatVec> eck_expected = {
      {Rat(2), Rat(-1, 2)}, {Rat(2), Rat(1, 2)}, {Rat(3), Rat(0)}};
  CHECK(eck->vertices() == eck_expected);
}

TEST_CASE("clip at and beyond the support") {
  const Direction x = Direction::coordinate(0);
  const ConvexBody square = unit_square();

  CHECK_FALSE(clip(square, SliceSpec{x, Rat(1), Side::Ge}).has_value());
  CHECK_FALSE(clip(square, SliceSpec{x, Rat(2), Side::Ge}).has_value());
  CHECK_FALSE(clip(square, SliceSpec{x, Rat(0), Side::Le}).has_value());

  auto whole = clip(square, SliceSpec{x, Rat(0), Side::Ge});
  REQUIRE(whole.has_value());
  CHECK(whole->volume() == square.volume());
}

TEST_CASE("sub-barycenter matches the similar-triangle formula") {
  const Direction x = Direction::coordinate(0);
  const ConvexBody tri = corner_triangle();
  for (const Rat& t : {Rat(0), Rat(1, 10), Rat(1, 2), Rat(9, 10)}) {
    const RatVec bc = sub_barycenter(tri, SliceSpec{x, t, Side::Ge});
    CHECK(bc[0] == (2 * t + 1) / 3);  // t + (1-t)/3
  }

  // the full slice reproduces the barycenter
  const RatVec full = sub_barycenter(tri, SliceSpec{x, Rat(0), Side::Ge});
  CHECK(full == tri.barycenter());

  const RatVec eck =
      sub_barycenter(eckardt_quadrilateral(), SliceSpec{x, Rat(1), Side::Ge});
  CHECK(eck[0] == Rat(5, 3));

  CHECK_THROWS_AS(sub_barycenter(tri, SliceSpec{x, Rat(1), Side::Ge}),
                  EmptySlice);
}

TEST_CASE("quantile threshold endpoints and golden values") {
  const Direction x = Direction::coordinate(0);
  const ConvexBody eck = eckardt_quadrilateral();

  CHECK(quantile_threshold(eck, x, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(quantile_threshold(eck, x, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(quantile_threshold(eck, x, 1.0 / 6.0) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(quantile_threshold(eck, x, 2.0 / 3.0) ==
        doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(quantile_threshold(eck, x, -0.1), DomainError);
  CHECK_THROWS_AS(quantile_threshold(eck, x, 1.1), DomainError);
}

TEST_CASE("exact partition identities on random bodies") {
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 6; ++i) {
      const ConvexBody body = gen_body(1000 * n + i, n, n + 3);
      for (int di = 0; di < 2; ++di) {
        const Direction d = di == 0
                                ? Direction::coordinate(0)
                                : Direction::vector([&] {
                                    RatVec v(static_cast<std::size_t>(n), Rat(1));
                                    v[0] = Rat(2 + i);
                                    return v;
                                  }());
        const auto [lo, hi] = body.support(d);
        Rat prev_upper = body.volume() + 1;
        for (int j = 1; j <= 3; ++j) {
          const Rat t = lo + (hi - lo) * Rat(j, 4);
          const auto below = clip(body, SliceSpec{d, t, Side::Le});
          const auto above = clip(body, SliceSpec{d, t, Side::Ge});
          REQUIRE(below.has_value());
          REQUIRE(above.has_value());

          CHECK(below->volume() + above->volume() == body.volume());
          for (int c = 0; c < n; ++c) {
            CHECK(below->volume() * below->barycenter()[static_cast<std::size_t>(c)] +
                      above->volume() * above->barycenter()[static_cast<std::size_t>(c)] ==
                  body.volume() * body.barycenter()[static_cast<std::size_t>(c)]);
          }
          // strict monotonicity of the upper volume
          CHECK(above->volume() < prev_upper);
          prev_upper = above->volume();
        }
      }
    }
  }
}

TEST_CASE("hull is stable under adding interior points") {
  for (int i = 0; i < 5; ++i) {
    const ConvexBody body = gen_body(777 + i, 3, 7);
    std::vector<RatVec> pts = body.vertices();
    pts.push_back(body.barycenter());
    pts.push_back(body.star_point());
    const ConvexBody again = ConvexBody::build(std::move(pts), 3);
    CHECK(again.vertices() == body.vertices());
    CHECK(again.volume() == body.volume());
  }
}

TEST_CASE("membership tests") {
  const ConvexBody eck = eckardt_quadrilateral();
  CHECK(eck.contains(eck.barycenter()));
  CHECK(eck.contains({Rat(1), Rat(1)}));   // vertex
  CHECK(eck.contains({Rat(2), Rat(0)}));   // interior
  CHECK_FALSE(eck.contains({Rat(2), Rat(1)}));
  CHECK_FALSE(eck.contains({Rat(-1, 100), Rat(0)}));
}

TEST_CASE("translated body shifts support and barycenter") {
  const ConvexBody eck = eckardt_quadrilateral();
  const ConvexBody moved = eck.translated({Rat(2), Rat(5)});
  CHECK(moved.volume() == eck.volume());
  CHECK(moved.barycenter() == RatVec{Rat(4, 3) + 2, Rat(5)});
  const auto [lo, hi] = moved.support(Direction::coordinate(0));
  CHECK(lo == Rat(2));
  CHECK(hi == Rat(5));
}

TEST_CASE("monte carlo oracle agrees with the exact volume") {
  const McEstimate square = mc_volume_oracle(unit_square(), 100000, 7);
  CHECK(square.estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(square.std_error == 0.0);

  const McEstimate tri = mc_volume_oracle(corner_triangle(), 1000000, 11);
  CHECK(std::fabs(tri.estimate - 0.5) <= 3 * tri.std_error);

  const McEstimate eck = mc_volume_oracle(eckardt_quadrilateral(), 1000000, 13);
  CHECK(std::fabs(eck.estimate - 3.0) <= 3 * eck.std_error);

  const McEstimate cube4 = mc_volume_oracle(unit_cube(4), 200000, 17);
  CHECK(cube4.estimate == doctest::Approx(1.0).epsilon(1e-12));
}
