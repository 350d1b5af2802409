#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "pcity/errors.hpp"
#include "pcity/numerics.hpp"
#include "pcity/rng.hpp"

using namespace pcity;
using namespace pcity::numerics;
using std::numbers::pi;

TEST_SUITE("numerics") {
  TEST_CASE("quadrature") {
    const QuadratureSpec semi{1e-10, 1e-14, 18, RangeMap::semi_infinite};
    CHECK(integrate([](double s) { return std::exp(-s); }, 0.0, 0.0, semi).value == doctest::Approx(1.0).epsilon(1e-10));
    const QuadratureSpec root{1e-10, 1e-14, 18, RangeMap::sqrt_lower};
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, root).value ==
          doctest::Approx(2.0).epsilon(1e-10));
    // int_0^inf ((sqrt(v^2+4)-v)/(sqrt(v^2+4)+3v))^2 v dv = log 4 - 5/4
    auto g = [](double v) {
      const double w = std::sqrt(v * v + 4.0);
      const double r = (w - v) / (w + 3.0 * v);
      return r * r * v;
    };
    CHECK(integrate(g, 0.0, 0.0, semi).value == doctest::Approx(std::log(4.0) - 1.25).epsilon(1e-8));
    auto f1 = [](double x) { return std::sin(x); };
    auto f2 = [](double x) { return x * x; };
    const double lhs = integrate([&](double x) { return 2.0 * f1(x) - 3.0 * f2(x); }, 0.0, 2.0).value;
    CHECK(lhs == doctest::Approx(2.0 * integrate(f1, 0.0, 2.0).value - 3.0 * integrate(f2, 0.0, 2.0).value).epsilon(1e-9));
    const std::vector<double> breaks{0.0, 0.5, 1.0};
    CHECK(integrate_pieces([](double x) { return std::fabs(x - 0.5); }, breaks).value == doctest::Approx(0.25));
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, {1e-10, 1e-14, 4, RangeMap::finite}),
                    QuadratureFailure);
  }

  TEST_CASE("Mills ratio") {
    CHECK(mills_ratio(0.0) == doctest::Approx(std::sqrt(pi / 2.0)));
    const auto m = mills_bounds(10.0);
    CHECK(m.upper == doctest::Approx(m.exact).epsilon(0.01));
    CHECK(m.lower == doctest::Approx(m.exact).epsilon(0.01));
    CHECK(mills_ratio(3.0) == doctest::Approx(std::exp(4.5) * std::sqrt(pi / 2.0) * std::erfc(3.0 / std::sqrt(2.0))));
  }

  TEST_CASE("Kolmogorov-Smirnov") {
    // Midpoints of 20 equal bins shifted by 0.1: the largest gap is 0.025 + 0.1.
    std::vector<double> xs;
    for (int i = 0; i < 20; ++i) xs.push_back((i + 0.5) / 20.0 + 0.1);
    const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_test(xs, uniform).statistic == doctest::Approx(0.125));
    CHECK_THROWS_AS(ks_test(std::span(xs).first(5), uniform), DomainError);
    CHECK(kolmogorov_q(0.0) == doctest::Approx(1.0));
    CHECK(kolmogorov_q(1.36) == doctest::Approx(0.0494).epsilon(0.01));
    RngStream rng(81, 0);
    std::vector<double> u, w, e;
    for (int i = 0; i < 4000; ++i) {
      u.push_back(rng.uniform());
      w.push_back(rng.uniform());
      e.push_back(std::pow(rng.uniform(), 0.8));
    }
    CHECK(ks_test(u, uniform).p_value > 1e-3);
    CHECK(ks_test(e, uniform).p_value < 1e-6);
    CHECK(ks_two_sample(u, w).p_value > 1e-3);
    CHECK(ks_two_sample(u, e).p_value < 1e-6);
  }

  TEST_CASE("binomials") {
    CHECK(log_choose(4, 2) == doctest::Approx(std::log(6.0)));
    CHECK(log_choose(17, 0) == 0.0);
    CHECK(log_choose(17, 17) == 0.0);
    using boost::multiprecision::cpp_int;
    cpp_int c = 1;
    for (int i = 1; i <= 300; ++i) c = c * (300 + i) / i;
    CHECK(log_choose(600, 300) == doctest::Approx(std::log(c.convert_to<double>())).epsilon(1e-13));
    CHECK(choose_u64(67, 33) == 14226520737620288370ull);
    CHECK_THROWS_AS(log_choose(3, 4), DomainError);
  }

  TEST_CASE("distributions and summaries") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021).epsilon(1e-6));
    CHECK(chi_square_sf(3.0, 2.0) == doctest::Approx(std::exp(-1.5)));
    CompensatedSum s;
    s += 1e16;
    s += 1.0;
    s += -1e16;
    CHECK(s.value() == 1.0);
    const std::vector<double> x{1, 2, 3, 4, 5}, y{3, 5, 7, 9, 11};
    const auto fit = least_squares(x, y);
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.slope_std_error == doctest::Approx(0.0));
    CHECK(covariance(x, y) == doctest::Approx(5.0));
    const auto st = mean_stats(x);
    CHECK(st.mean == 3.0);
    CHECK(st.variance == doctest::Approx(2.5));
    CHECK(st.std_error == doctest::Approx(std::sqrt(0.5)));
  }

  TEST_CASE("rng streams") {
    RngStream a(82, 7), b(82, 7), c(82, 8);
    std::vector<double> ua, uc;
    for (int i = 0; i < 100000; ++i) {
      const double x = a.uniform();
      CHECK(x == b.uniform());
      REQUIRE(x > 0.0);
      REQUIRE(x < 1.0);
      ua.push_back(x - 0.5);
      uc.push_back(c.uniform() - 0.5);
    }
    // Correlation of independent uniforms has s.e. 1/sqrt(N).
    CHECK(std::fabs(covariance(ua, uc) * 12.0) < 3.0 / std::sqrt(100000.0));
    CHECK(a.position() == 100000);
    RngStream d = a.derive(1, 0), e = a.derive(1, 1);
    CHECK(d.next_u64() != e.next_u64());
    CHECK(stream_id(1, 0, 0) != stream_id(2, 0, 0));
    CHECK(stream_id(1, 0, 1) != stream_id(1, 1, 0));
    RngStream p(83, 0);
    std::vector<double> counts;
    for (int i = 0; i < 20000; ++i) counts.push_back(static_cast<double>(p.poisson(7.5)));
    const auto ps = mean_stats(counts);
    CHECK(std::fabs(ps.mean - 7.5) < 3.0 * ps.std_error);
    CHECK(ps.variance == doctest::Approx(7.5).epsilon(0.05));
  }
}
