#include <doctest.h>

#include <cmath>

#include "subbary/moment_curve.hpp"
#include "subbary/verifier.hpp"
#include "test_support.hpp"

using namespace subbary;
using namespace subbary::testing;

TEST_CASE("cumulative volume and moment match direct clips exactly") {
  // the defining dual-route identity: spline accumulation vs hull clipping
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 5; ++i) {
      const ConvexBody body = gen_body(42000 + 10 * n + i, n, n + 3);
      const Direction d = Direction::coordinate(0);
      const MomentCurve curve(body, d);
      const auto [lo, hi] = body.support(d);

      for (int j = 1; j <= 6; ++j) {
        const Rat t = lo + (hi - lo) * Rat(j, 7);
        const auto below = clip(body, SliceSpec{d, t, Side::Le});
        REQUIRE(below.has_value());
        CHECK(curve.volume_below(t) == below->volume());
        CHECK(curve.moment_below(t) ==
              below->volume() * d.value(below->barycenter()));
      }
    }
  }
}

TEST_CASE("curve totals equal body volume and first moment") {
  const ConvexBody eck = eckardt_quadrilateral();
  const MomentCurve curve(eck, Direction::coordinate(0));
  CHECK(curve.total_volume() == Rat(3));
  CHECK(curve.total_moment() == Rat(4));  // volume * barycenter_x = 3 * 4/3
  CHECK(curve.min_value() == Rat(0));
  CHECK(curve.max_value() == Rat(3));
}

TEST_CASE("eckardt cumulative area follows the piecewise law") {
  const MomentCurve curve(eckardt_quadrilateral(), Direction::coordinate(0));
  // vol_above(t) = 3 - t^2 on [0,1], (3-t)^2/2 on [1,3]
  CHECK(curve.volume_above(Rat(1, 2)) == Rat(3) - Rat(1, 4));
  CHECK(curve.volume_above(Rat(1)) == Rat(2));
  CHECK(curve.volume_above(Rat(2)) == Rat(1, 2));
  CHECK(curve.volume_above(Rat(5, 2)) == Rat(1, 8));
  // tau * S_tau * |body| = int_t^3 s w(s) ds = 4/3 - 2/9 t^3 (times |body|=3)
  CHECK(curve.moment_above(Rat(1, 2)) == (Rat(4, 3) - Rat(2, 9) / 8) * 3);
  CHECK(curve.moment_above(Rat(2)) == Rat(7, 18) * 3);  // (3-t)^2(2t+3)/18
}

TEST_CASE("upper and lower barycenter values") {
  const MomentCurve curve(eckardt_quadrilateral(), Direction::coordinate(0));
  CHECK(curve.upper_barycenter_value(Rat(1)) == Rat(5, 3));
  CHECK_THROWS_AS(curve.upper_barycenter_value(Rat(3)), EmptySlice);
  CHECK_THROWS_AS(curve.lower_barycenter_value(Rat(0)), EmptySlice);

  const MomentCurve square(unit_square(), Direction::coordinate(0));
  CHECK(square.upper_barycenter_value(Rat(1, 2)) == Rat(3, 4));
  CHECK(square.lower_barycenter_value(Rat(1, 2)) == Rat(1, 4));
}

TEST_CASE("quantile bisection is exact at probe hits and tight otherwise") {
  const MomentCurve curve(eckardt_quadrilateral(), Direction::coordinate(0));
  CHECK(curve.quantile(0.0) == doctest::Approx(3.0));
  CHECK(curve.quantile(1.0) == doctest::Approx(0.0));
  CHECK(curve.quantile(1.0 / 6.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(curve.quantile(2.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-10));
  // bracket width contract: 1e-12 relative to the support oscillation
  const double t = curve.quantile(0.37);
  const Rat above = curve.volume_above(rat_from_double(t));
  CHECK(to_double(above) / 3.0 == doctest::Approx(0.37).epsilon(1e-10));
}

TEST_CASE("curves along general directions") {
  const ConvexBody body = gen_body(909, 3, 6);
  const Direction d = Direction::vector({Rat(1), Rat(-2), Rat(1, 3)});
  const MomentCurve curve(body, d);
  const auto [lo, hi] = body.support(d);
  const Rat t = (lo + hi) / 2;
  const auto below = clip(body, SliceSpec{d, t, Side::Le});
  REQUIRE(below.has_value());
  CHECK(curve.volume_below(t) == below->volume());
}
