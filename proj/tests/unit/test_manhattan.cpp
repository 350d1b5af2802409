#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pcity/errors.hpp"
#include "pcity/manhattan.hpp"
#include "pcity/numerics.hpp"

using namespace pcity;
using namespace pcity::grid;
using std::numbers::pi;

TEST_SUITE("manhattan") {
  TEST_CASE("through-origin fixtures") {
    CHECK(through_origin_rational({1, 1, 1, 1}) == Rational(2, 3));
    CHECK(through_origin_rational({2, 1, 1, 2}) == Rational(9, 20));
    CHECK(through_origin_rational({1, 0, 0, 1}) == Rational(1, 2));
    CHECK(through_origin_rational({0, 1, 1, 0}) == Rational(1, 2));
    CHECK(through_origin_prob({0, 0, 3, 4}) == doctest::Approx(1.0));
    CHECK(through_origin_prob({1, 1, 1, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    const auto c = brute_force_count({1, 1, 1, 1});
    CHECK(c.total == 6);
    CHECK(c.through_origin == 4);
    CHECK_THROWS_AS(brute_force_count({7, 6, 6, 6}), TooLarge);
  }

  TEST_CASE("property: closed form equals path enumeration for every total <= 16") {
    int checked = 0;
    for (std::int64_t u = 0; u <= 16; ++u)
      for (std::int64_t v = 0; u + v <= 16; ++v)
        for (std::int64_t x = 0; u + v + x <= 16; ++x)
          for (std::int64_t y = 0; u + v + x + y <= 16; ++y) {
            const QuadrantPair q{u, v, x, y};
            if (q.total() == 0) continue;
            const auto c = brute_force_count(q);
            CHECK(Rational(c.through_origin, c.total) == through_origin_rational(q));
            ++checked;
          }
    CHECK(checked == 4844);
  }

  TEST_CASE("property: binomial route gives the same value for any p") {
    for (const QuadrantPair q : {QuadrantPair{3, 5, 2, 7}, QuadrantPair{10, 0, 4, 9}, QuadrantPair{40, 31, 22, 50}}) {
      const double ref = through_origin_prob(q);
      for (double p : {0.3, 0.5, 0.7}) CHECK(std::fabs(through_origin_prob_binomial(q, p) - ref) < 1e-12);
    }
  }

  TEST_CASE("Stirling approximation") {
    int compared = 0;
    for (std::int64_t u : {20, 30, 45})
      for (std::int64_t v : {20, 30, 45})
        for (std::int64_t x : {20, 30, 45})
          for (std::int64_t y : {20, 30, 45}) {
            const QuadrantPair q{u, v, x, y};
            const double scale = std::sqrt(static_cast<double>((u + v) * (x + y) * (u + x) * (v + y)) / q.total());
            if (std::abs(u * y - x * v) > scale) continue;  // keep the exponent O(1)
            CHECK(stirling_prob(q) == doctest::Approx(through_origin_prob(q)).epsilon(0.05));
            CHECK(stirling_prob(q) == doctest::Approx(stirling_prob({v, u, y, x})).epsilon(1e-14));
            ++compared;
          }
    CHECK(compared > 20);
    CHECK_THROWS_AS(stirling_prob({0, 0, 3, 4}), DomainError);
  }

  TEST_CASE("uniform protocol: small-n oracles") {
    const double exact = uniform_quadrant_sum_exact(5).convert_to<double>();
    CHECK(exact == doctest::Approx(304.718198468198).epsilon(1e-13));
    CHECK(uniform_quadrant_sum_brute(5) == doctest::Approx(exact).epsilon(1e-13));
    const auto r = uniform_protocol_flow(5);
    CHECK(r.quadrant_sum == doctest::Approx(exact).epsilon(1e-12));
    CHECK(r.total_flow == doctest::Approx(2.0 * exact).epsilon(1e-12));
    CHECK(r.bond_flow == doctest::Approx(exact).epsilon(1e-12));
    CHECK(r.scaled == doctest::Approx(2.0 * exact / 125.0).epsilon(1e-12));
  }

  TEST_CASE("property: the quadrant sum is symmetric under swapping the axes") {
    // Reflecting across the diagonal maps (u,v,x,y) to (v,u,y,x).
    for (std::int64_t u = 0; u <= 8; ++u)
      for (std::int64_t v = 0; v <= 8; ++v)
        for (std::int64_t x = 0; x <= 8; ++x)
          for (std::int64_t y = 0; y <= 8; ++y) {
            if (u + v + x + y == 0) continue;
            CHECK(through_origin_rational({u, v, x, y}) == through_origin_rational({v, u, y, x}));
            CHECK(through_origin_rational({u, v, x, y}) == through_origin_rational({x, y, u, v}));
          }
  }

  TEST_CASE("uniform protocol approaches 2 n^3") {
    std::vector<double> gap;
    for (std::int64_t n : {20, 40, 80}) gap.push_back(uniform_protocol_flow(n).quadrant_sum / std::pow(n, 3.0) - 2.0);
    CHECK(gap[0] > gap[1]);
    CHECK(gap[1] > gap[2]);
    CHECK(gap[2] > 0.0);
    CHECK(gap[2] < 0.05);
  }

  TEST_CASE("extreme protocol") {
    CHECK(positive_quarter_disk_count(1) == 0);
    CHECK(positive_quarter_disk_count(2) == 1);
    CHECK(positive_quarter_disk_count(5) == 15);
    double prev = 0.0;
    for (std::int64_t n : {10, 20, 40, 80, 160}) {
      const auto r = extreme_protocol_flow(n);
      CHECK(r.total_flow > prev);
      prev = r.total_flow;
    }
    const double n = 300.0;
    const double single = 2.0 * positive_quarter_disk_count(300) * n / 2.0 / (n * n * n);
    CHECK(single == doctest::Approx(pi / 4.0).epsilon(0.01));
    CHECK(extreme_protocol_flow(300).scaled == doctest::Approx(4.0 * single).epsilon(1e-12));
  }

  TEST_CASE("comparison report") {
    const auto c = comparison_report();
    CHECK(c.segment_length == doctest::Approx(4.0 / pi));
    CHECK(c.uniform_comparable == doctest::Approx(8.0 / pi));
    CHECK(c.uniform_over_poisson == doctest::Approx(4.0 / pi));
    CHECK(c.extreme_comparable == doctest::Approx(c.poisson_centre));
    CHECK(c.distance_factor == doctest::Approx(4.0 / pi).epsilon(1e-10));
  }
}
