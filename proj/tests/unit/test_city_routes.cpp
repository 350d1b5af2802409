#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pcity/city_routes.hpp"
#include "pcity/errors.hpp"
#include "pcity/experiments.hpp"
#include "pcity/numerics.hpp"
#include "pcity/rng.hpp"

using namespace pcity;
using namespace pcity::routes;
using geom::Line;
using geom::Point;
using std::numbers::pi;

namespace {

// Rigid motion: rotation by `angle` then translation by `shift`.
struct Motion {
  double angle;
  Point shift;
  Point operator()(Point p) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return Point{c * p.x - s * p.y, s * p.x + c * p.y} + shift;
  }
  Line operator()(const Line& l) const { return Line::through_points((*this)(l.foot()), (*this)(l.foot() + l.direction())); }
};

std::vector<Line> random_lines(double radius, RngStream& rng) {
  const auto count = rng.poisson(pi * radius);
  std::vector<Line> out;
  for (std::uint64_t i = 0; i < count; ++i) out.emplace_back(rng.uniform(-radius, radius), rng.uniform(0.0, pi));
  return out;
}

bool contains(const geom::ConvexPolygon& poly, Point p, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (geom::cross(poly[(i + 1) % n] - poly[i], p - poly[i]) < -tol) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("city_routes") {
  TEST_CASE("square cell: each route has excess 6") {
    const double n = 10.0;
    const std::vector<Line> lines{Line::through_points({-1, -1}, {-1, 1}), Line::through_points({n + 1, -1}, {n + 1, 1}),
                                  Line::through_points({-1, 1}, {n + 1, 1}), Line::through_points({-1, -1}, {n + 1, -1})};
    const Cell cell = build_cell_from_lines({0, 0}, {n, 0}, lines, 20.0);
    REQUIRE(cell.bounded);
    const auto rp = semi_perimeter_routes(cell);
    CHECK(rp.upper.excess == doctest::Approx(6.0));
    CHECK(rp.lower.excess == doctest::Approx(6.0));
    CHECK(rp.ray_back.x == doctest::Approx(-1.0));
    CHECK(rp.ray_forward.x == doctest::Approx(n + 1.0));
    CHECK(rp.upper.polyline[2].y > 0.0);
  }

  TEST_CASE("quadrilateral fixture and unbounded cells") {
    const std::vector<Point> quad{{-2, -1}, {5, -2}, {6, 2}, {-1, 3}};
    std::vector<Line> lines;
    for (std::size_t i = 0; i < 4; ++i) lines.push_back(Line::through_points(quad[i], quad[(i + 1) % 4]));
    // A separating line is discarded.
    lines.push_back(Line::through_points({2, -5}, {2, 5}));
    const Cell cell = build_cell_from_lines({0, 0}, {4, 0}, lines, 30.0);
    REQUIRE(cell.bounded);
    REQUIRE(cell.polygon.size() == 4);
    for (const Point& q : quad) {
      const bool found = std::any_of(cell.polygon.vertices().begin(), cell.polygon.vertices().end(),
                                     [&](Point v) { return geom::distance(v, q) < 1e-9; });
      CHECK(found);
    }
    CHECK_THROWS_AS(build_cell_from_lines({0, 0}, {4, 0}, std::vector<Line>{}, 30.0), UnboundedAtMaxWindow);
    lines.pop_back();
    lines.pop_back();
    CHECK_THROWS_AS(build_cell_from_lines({0, 0}, {4, 0}, lines, 30.0), UnboundedAtMaxWindow);
  }

  TEST_CASE("apex readout") {
    // Cell of (0,0), (4,0) with its highest vertex at (n/2, 3 sqrt n).
    const std::vector<Line> lines{Line::through_points({2, 6}, {-2, 0}), Line::through_points({2, 6}, {6, 0}),
                                  Line::through_points({-5, -1}, {9, -1})};
    const auto apex = max_lateral_displacement(build_cell_from_lines({0, 0}, {4, 0}, lines, 12.0));
    CHECK(apex.u == doctest::Approx(0.5));
    CHECK(apex.v == doctest::Approx(3.0));
    CHECK(apex.n == doctest::Approx(4.0));
  }

  TEST_CASE("lateral limit density") {
    const numerics::QuadratureSpec semi{1e-9, 1e-13, 18, numerics::RangeMap::semi_infinite};
    for (double u : {0.1, 0.5, 0.83}) {
      CHECK(numerics::integrate([&](double v) { return lateral_limit_density(u, v); }, 0.0, 0.0, semi).value ==
            doctest::Approx(1.0).epsilon(1e-7));
    }
    const double m2 = numerics::integrate(
                          [&](double u) {
                            return numerics::integrate([&](double v) { return v * v * lateral_limit_density(u, v); },
                                                       0.0, 0.0, semi)
                                .value;
                          },
                          0.0 + 1e-12, 1.0 - 1e-12, {1e-8, 1e-12})
                          .value;
    CHECK(m2 == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    CHECK(lateral_limit_density(0.5, 0.0) == 0.0);
    CHECK_THROWS_AS(lateral_limit_density(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(lateral_limit_density(0.5, -1.0), DomainError);
  }

  TEST_CASE("separation probability") {
    CHECK(separation_probability({1, 0}, {0, 1}, {0, 0}) == doctest::Approx(std::exp(-(2.0 - std::sqrt(2.0)) / 2.0)));
    CHECK(separation_probability({1, 0}, {0, 1}, {0, 0}) == doctest::Approx(0.746102).epsilon(1e-6));
    CHECK(separation_probability({1, 0}, {1, 0}, {0, 0}) == doctest::Approx(std::exp(-1.0)));
    CHECK(separation_probability({-1, 0}, {2, 0}, {0, 0}) == doctest::Approx(1.0));
  }

  TEST_CASE("property: routes cover the boundary, have nonnegative excess, apex on a pattern line") {
    for (std::uint64_t i = 0; i < 200; ++i) {
      RngStream rng(31, i);
      const double n = 5.0 + 45.0 * rng.uniform();
      const Cell cell = build_cell({0, 0}, {n, 0}, rng);
      REQUIRE(cell.bounded);
      const auto rp = semi_perimeter_routes(cell);
      CHECK(rp.upper.excess >= -1e-9);
      CHECK(rp.lower.excess >= -1e-9);
      std::size_t interior = 0;
      for (const auto* r : {&rp.upper, &rp.lower}) interior += r->polyline.size() - 4;
      for (const Point& v : cell.polygon.vertices()) {
        bool found = false;
        for (const auto* r : {&rp.upper, &rp.lower}) {
          for (std::size_t k = 2; k + 2 < r->polyline.size(); ++k) found = found || geom::distance(r->polyline[k], v) < 1e-9;
        }
        CHECK(found);
      }
      CHECK(interior >= cell.polygon.size());
      CHECK(interior <= cell.polygon.size() + 2);
      const auto apex = max_lateral_displacement(cell);
      const bool on_line = std::any_of(cell.lines.begin(), cell.lines.end(),
                                       [&](const Line& l) { return std::fabs(l.signed_distance(apex.vertex)) < 1e-8; });
      CHECK(on_line);
      CHECK(std::all_of(cell.edge_line.begin(), cell.edge_line.end(), [](int e) { return e != kBoxEdge; }));
    }
  }

  TEST_CASE("property: route excess is invariant under rigid motions") {
    for (std::uint64_t i = 0; i < 100; ++i) {
      RngStream rng(32, i);
      const Point a{0, 0}, b{8, 0};
      const auto lines = random_lines(40.0, rng);
      const Cell cell = build_cell_from_lines(a, b, lines, 40.0);
      if (!cell.bounded) continue;
      const Motion m{rng.uniform(0.0, 2.0 * pi), {rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0)}};
      std::vector<Line> moved;
      for (const auto& l : lines) moved.push_back(m(l));
      const Cell cell2 = build_cell_from_lines(m(a), m(b), moved, 40.0);
      REQUIRE(cell2.bounded);
      const auto r1 = semi_perimeter_routes(cell);
      const auto r2 = semi_perimeter_routes(cell2);
      CHECK(r1.upper.excess + r1.lower.excess == doctest::Approx(r2.upper.excess + r2.lower.excess).epsilon(1e-9));
      CHECK(std::max(r1.upper.excess, r1.lower.excess) ==
            doctest::Approx(std::max(r2.upper.excess, r2.lower.excess)).epsilon(1e-9));
    }
  }

  TEST_CASE("property: superposing more lines can only shrink the cell") {
    for (std::uint64_t i = 0; i < 100; ++i) {
      RngStream rng(33, i);
      const Point a{0, 0}, b{6, 0};
      auto lines = random_lines(30.0, rng);
      const Cell before = build_cell_from_lines(a, b, lines, 30.0);
      if (!before.bounded) continue;
      const auto extra = random_lines(60.0, rng);
      lines.insert(lines.end(), extra.begin(), extra.end());
      const Cell after = build_cell_from_lines(a, b, lines, 60.0);
      REQUIRE(after.bounded);
      for (const Point& v : after.polygon.vertices()) CHECK(contains(before.polygon, v, 1e-9));
      CHECK(geom::polygon_stats(after.polygon).area <= geom::polygon_stats(before.polygon).area + 1e-9);
    }
  }

  TEST_CASE("separation frequency matches the formula") {
    const auto t = experiments::separation_trial({0, 0}, {2, 0}, {1, 1.5}, 10000, 34, 0);
    const double p = t.formula;
    CHECK(std::fabs(t.frequency() - p) < 3.0 * std::sqrt(p * (1.0 - p) / t.replicates));
  }

  TEST_CASE("route excess at 2n is close to twice the growth passage time at n") {
    // Each route's excess to the far end of the cell splits into two halves,
    // one per endpoint, each behaving like the growth process started at pi.
    const double level = 256.0;
    const auto excess = experiments::excess_samples(2.0 * level, 2000, 35);
    const std::vector<double> levels{level};
    const auto sig = experiments::growth_sigma(levels, 4000, growth::Initial::theta0_pi, 36);
    std::vector<double> s;
    for (const auto& row : sig) s.push_back(row[0]);
    const double e = numerics::mean_stats(excess).mean;
    const double g = 2.0 * numerics::mean_stats(s).mean;
    CHECK(std::fabs(e - g) / g < 0.15);
  }
}
