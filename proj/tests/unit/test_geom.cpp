#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pcity/errors.hpp"
#include "pcity/geom.hpp"
#include "pcity/rng.hpp"

using namespace pcity;
using namespace pcity::geom;
using std::numbers::pi;

TEST_SUITE("geom") {
  TEST_CASE("side_of fixtures") {
    CHECK(side_of(Line(0.0, 0.0), {0.0, 1.0}) == 1);
    CHECK(side_of(Line(0.0, 0.0), {5.0, 0.0}) == 0);
    CHECK(side_of(Line(1.0, pi / 2.0), {0.0, 0.0}) == -1);
  }

  TEST_CASE("crosses fixtures") {
    const Line x_axis(0.0, 0.0);
    CHECK(crosses(x_axis, Segment({0.0, -1.0}, {0.0, 1.0})));
    CHECK_FALSE(crosses(x_axis, Segment({0.0, 1.0}, {1.0, 2.0})));
    CHECK(crosses(Line::through({0.0, 0.0}, pi / 4.0), Segment({1.0, 0.0}, {0.0, 1.0})));
  }

  TEST_CASE("separates fixtures") {
    const Segment s({-1.0, 2.0}, {1.0, 2.0});
    CHECK(separates(Line::through({0.0, 1.0}, 0.0), {0.0, 0.0}, s));
    CHECK_FALSE(separates(Line::through({0.0, 3.0}, 0.0), {0.0, 0.0}, s));
    CHECK(separates(Line::through({0.5, 0.0}, pi / 2.0), {0.0, 0.0}, Segment({1.0, -1.0}, {1.0, 1.0})));
    // p on the line is never separated.
    CHECK_FALSE(separates(Line(0.0, 0.0), {0.0, 0.0}, s));
  }

  TEST_CASE("clip_halfplane fixtures") {
    const auto sq = ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0);
    const auto upper = clip_halfplane(sq, Line::through({0.0, 0.5}, 0.0), {0.5, 0.75});
    CHECK(polygon_stats(upper).area == doctest::Approx(0.5));
    CHECK(polygon_stats(upper).max_y_vertex.y == doctest::Approx(1.0));
    const auto same = clip_halfplane(sq, Line::through({0.0, 5.0}, 0.0), {0.5, 0.5});
    CHECK(polygon_stats(same).area == doctest::Approx(1.0));
    CHECK(same.size() == 4);
    const auto tri = clip_halfplane(sq, Line::through_points({1.0, 0.0}, {0.0, 1.0}), {0.2, 0.2});
    CHECK(polygon_stats(tri).area == doctest::Approx(0.5));
    CHECK(tri.size() == 3);
    CHECK_THROWS_AS(clip_halfplane(sq, Line::through({0.0, 5.0}, 0.0), {0.5, 6.0}), EmptyIntersection);
  }

  TEST_CASE("polygon_stats fixtures") {
    const auto sq = polygon_stats(ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0));
    CHECK(sq.perimeter == doctest::Approx(4.0));
    CHECK(sq.area == doctest::Approx(1.0));
    CHECK(polygon_stats(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}})).area == doctest::Approx(0.5));
    CHECK(polygon_stats(ConvexPolygon::regular({0.0, 0.0}, 1.0, 6)).perimeter == doctest::Approx(6.0));
    // Tie on max y broken by the smaller x.
    const auto tie = polygon_stats(ConvexPolygon::rectangle(-2.0, 0.0, 3.0, 1.0));
    CHECK(tie.max_y_vertex.x == doctest::Approx(-2.0));
  }

  TEST_CASE("intersect") {
    const auto p = intersect(Line::through({0.0, 1.0}, 0.0), Line::through({2.0, 0.0}, pi / 2.0));
    REQUIRE(p);
    CHECK(p->x == doctest::Approx(2.0));
    CHECK(p->y == doctest::Approx(1.0));
    CHECK_FALSE(intersect(Line(0.0, 0.3), Line(1.0, 0.3)));
  }

  TEST_CASE("property: side_of flips under reflection across the line") {
    RngStream rng(1, 0);
    for (int i = 0; i < 1000; ++i) {
      const Line l(rng.uniform(-3.0, 3.0), rng.uniform(0.0, pi));
      const Point p{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
      const double d = l.signed_distance(p);
      const Point q = p - 2.0 * d * l.normal();
      CHECK(l.signed_distance(q) == doctest::Approx(-d).epsilon(1e-9));
      if (std::fabs(d) > 1e-9) CHECK(side_of(l, q) == -side_of(l, p));
    }
  }

  TEST_CASE("property: separates implies crossing to the segment midpoint") {
    RngStream rng(2, 0);
    int seen = 0;
    for (int i = 0; i < 5000; ++i) {
      const Line l(rng.uniform(-2.0, 2.0), rng.uniform(0.0, pi));
      const Point p{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
      const Segment s({rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)}, {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)});
      if (separates(l, p, s)) {
        ++seen;
        CHECK(crosses(l, Segment(p, midpoint(s.a, s.b))));
      }
    }
    CHECK(seen > 100);
  }

  TEST_CASE("property: clipping never grows area or perimeter; fan area matches") {
    RngStream rng(3, 0);
    for (int i = 0; i < 500; ++i) {
      const auto poly = ConvexPolygon::regular({0.0, 0.0}, rng.uniform(0.5, 3.0), 3 + static_cast<int>(rng.uniform() * 9));
      const Line l(rng.uniform(-1.0, 1.0), rng.uniform(0.0, pi));
      const Point keep = l.signed_distance({0.0, 0.0}) < 0.0 ? Point{0.0, 0.0} : Point{0.0, 0.0} - 2.0 * l.normal();
      if (side_of(l, keep) == 0) continue;
      const auto before = polygon_stats(poly);
      try {
        const auto clipped = clip_halfplane(poly, l, keep);
        const auto after = polygon_stats(clipped);
        CHECK(after.area <= before.area * (1.0 + 1e-12));
        CHECK(after.perimeter <= before.perimeter * (1.0 + 1e-12));
        Point c{0.0, 0.0};
        for (const auto& v : clipped.vertices()) c = c + (1.0 / clipped.size()) * v;
        double fan = 0.0;
        for (std::size_t k = 0; k < clipped.size(); ++k) {
          fan += 0.5 * std::fabs(cross(clipped[k] - c, clipped[(k + 1) % clipped.size()] - c));
        }
        CHECK(fan == doctest::Approx(after.area).epsilon(1e-9));
      } catch (const EmptyIntersection&) {
      }
    }
  }
}
