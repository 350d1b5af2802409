#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pcity/errors.hpp"
#include "pcity/experiments.hpp"
#include "pcity/growth_levy.hpp"
#include "pcity/numerics.hpp"
#include "pcity/rng.hpp"

using namespace pcity;
using namespace pcity::growth;
using std::numbers::pi;

TEST_SUITE("growth") {
  TEST_CASE("theta jumps") {
    CHECK(theta_after_jump(pi / 2.0, 0.5) == doctest::Approx(pi / 6.0));
    CHECK(theta_after_jump(pi / 2.0, 1e-14) == doctest::Approx(pi / 2.0));
    CHECK(theta_after_jump(pi / 2.0, 1.0) == doctest::Approx(0.0).epsilon(1e-7));
    std::vector<double> delta;
    RngStream rng(41, 0);
    for (int i = 0; i < 5000; ++i) delta.push_back(pi - sample_theta_jump(pi, rng));
    const auto ks = numerics::ks_test(delta, [](double p) { return 0.5 * (1.0 - std::cos(std::clamp(p, 0.0, pi))); });
    CHECK(ks.p_value > 1e-3);
  }

  TEST_CASE("drift at the pi start and path bookkeeping") {
    CHECK(progress_rate(pi) == doctest::Approx(-0.5));
    CHECK(height_rate(pi) == doctest::Approx(0.0));
    CHECK(progress_rate(pi / 2.0) == doctest::Approx(0.0));
    CHECK(height_rate(pi / 2.0) == doctest::Approx(1.0));
    RngStream rng(42, 0);
    const auto path = simulate_growth(50.0, Initial::theta0_pi, rng);
    REQUIRE(path.sigma.has_value());
    CHECK(path.events.front().theta == pi);
    CHECK(path.events.front().x == 0.0);
    CHECK(*path.sigma >= path.events.back().t);
    for (std::size_t k = 1; k < path.events.size(); ++k) {
      CHECK(path.events[k].t > path.events[k - 1].t);
      CHECK(path.events[k].theta <= path.events[k - 1].theta);
      // Arc length s = t + x along the path.
      CHECK(path.events[k].s == doctest::Approx(path.events[k].t + path.events[k].x));
    }
    RngStream r2(42, 1);
    CHECK_THROWS_AS(simulate_growth(0.0, Initial::theta0_pi, r2), DomainError);
  }

  TEST_CASE("property: arc-length and excess-time clocks give the same jump chain") {
    for (std::size_t k : {1u, 5u, 10u}) {
      std::vector<double> th_s, th_t, x_s, x_t;
      for (std::uint64_t i = 0; i < 3000; ++i) {
        RngStream a(43, i), b(44, i);
        const auto ps = simulate_growth_arclength(k, Initial::theta0_cosine, a);
        const auto pt = simulate_growth_jumps(k, Initial::theta0_cosine, b);
        th_s.push_back(ps.back().theta);
        th_t.push_back(pt.back().theta);
        x_s.push_back(ps.back().x);
        x_t.push_back(pt.back().x);
      }
      CHECK(numerics::ks_two_sample(th_s, th_t).p_value > 1e-3);
      CHECK(numerics::ks_two_sample(x_s, x_t).p_value > 1e-3);
    }
  }

  TEST_CASE("initial segment") {
    const auto m = initial_segment_moments();
    CHECK(m.mean == doctest::Approx(8.0 * (1.0 + pi / (3.0 * std::sqrt(3.0)))));
    CHECK(m.mean == doctest::Approx(12.8368).epsilon(1e-5));
    CHECK(m.second == doctest::Approx(32.0 * (3.0 + 2.0 / std::sqrt(3.0) * (pi + std::log(2.0 + std::sqrt(3.0))))));
    CHECK(m.mean >= 12.0);
    std::vector<double> xs, sq;
    RngStream rng(45, 0);
    for (int i = 0; i < 1000000; ++i) {
      xs.push_back(sample_initial_segment(rng));
      sq.push_back(xs.back() * xs.back());
    }
    const auto s1 = numerics::mean_stats(xs);
    const auto s2 = numerics::mean_stats(sq);
    CHECK(std::fabs(s1.mean - m.mean) < 3.0 * s1.std_error);
    CHECK(std::fabs(s2.mean - m.second) < 3.0 * s2.std_error);
  }

  TEST_CASE("subordinators: jump law, coupling, Laplace exponent") {
    const auto jumps = experiments::xi_jump_samples(200000, 46);
    const auto js = numerics::mean_stats(jumps);
    CHECK(std::fabs(js.mean - 1.5) < 3.0 * js.std_error);
    CHECK(js.variance == doctest::Approx(1.25).epsilon(0.03));
    // max of two unit exponentials
    CHECK(numerics::ks_test(std::span(jumps).first(5000), [](double x) {
            const double f = 1.0 - std::exp(-std::max(x, 0.0));
            return f * f;
          }).p_value > 1e-3);
    for (std::uint64_t i = 0; i < 200; ++i) {
      RngStream rng(47, i);
      const auto p = simulate_subordinators(20.0, rng);
      for (std::size_t k = 0; k < p.xi_after.size(); ++k) {
        CHECK(p.eta_jumps[k] <= p.xi_jumps[k]);
        CHECK(p.eta_after[k] <= p.xi_after[k]);
      }
    }
    CHECK(laplace_exponent(0.0) == 0.0);
    CHECK(laplace_exponent(1.0) == doctest::Approx(1.0 / 3.0));
    const double h = 1e-6;
    CHECK((laplace_exponent(h) - laplace_exponent(-h)) / (2.0 * h) == doctest::Approx(0.75).epsilon(1e-8));
    CHECK_THROWS_AS(laplace_exponent(-1.0), DomainError);
    const auto xi = experiments::xi_endpoints(4.0, 100000, 48);
    std::vector<double> e;
    for (double v : xi) e.push_back(std::exp(-v));
    const auto es = numerics::mean_stats(e);
    const double phi_hat = -std::log(es.mean) / 4.0;
    CHECK(std::fabs(phi_hat - 1.0 / 3.0) < 3.0 * es.std_error / es.mean / 4.0);
  }

  TEST_CASE("martingale M = xi - (3/4) t") {
    // Compound Poisson with rate 1/2 and jumps of mean 3/2, second moment 7/2:
    // E[xi_t] = (3/4) t and Var xi_t = (1/2)(7/2) t = (7/4) t.
    const double t = 8.0;
    const auto xi = experiments::xi_endpoints(t, 100000, 49);
    std::vector<double> m, q;
    for (double v : xi) {
      m.push_back(v - 0.75 * t);
      q.push_back(m.back() * m.back() - 1.75 * t);
    }
    const auto ms = numerics::mean_stats(m);
    const auto qs = numerics::mean_stats(q);
    CHECK(std::fabs(ms.mean) < 3.0 * ms.std_error);
    CHECK(std::fabs(qs.mean) < 3.0 * qs.std_error);
  }

  TEST_CASE("tau first passage") {
    SubordinatorPath flat;
    flat.horizon = 10.0;
    CHECK(tau_first_passage(flat, 3.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(tau_first_passage(flat, 20.0), HorizonExceeded);
    std::vector<double> logn, mean_tau;
    for (int e = 4; e <= 12; e += 2) {
      const double n = std::ldexp(1.0, e);
      std::vector<double> taus;
      for (std::uint64_t i = 0; i < 3000; ++i) {
        RngStream rng(50 + e, i);
        const auto p = simulate_subordinators_to_integral(n, rng);
        const double tau = tau_first_passage(p, n);
        CHECK(tau <= n);
        // Rounding in tau is magnified by the integrand exp(2 xi) after a big overshoot.
        const double slack = 8.0 * std::exp(2.0 * p.xi_at(tau)) * tau * std::numeric_limits<double>::epsilon();
        CHECK(std::fabs(p.integral_exp2xi(tau) - n) <= 1e-10 * n + slack);
        CHECK(tau_representation(n, tau, p.xi_at(tau)) == doctest::Approx(tau).epsilon(1e-9));
        taus.push_back(tau);
      }
      logn.push_back(std::log(n));
      mean_tau.push_back(numerics::mean_stats(taus).mean);
    }
    const auto fit = numerics::least_squares(logn, mean_tau);
    CHECK(fit.slope == doctest::Approx(2.0 / 3.0).epsilon(0.1));
  }

  TEST_CASE("Lamperti inverse moment") {
    RngStream r0(60, 0);
    CHECK(lamperti_inverse_moment(1.0, 10, r0).formula == doctest::Approx(2.0 / 3.0));
    CHECK(lamperti_inverse_moment(200.0, 10, r0).formula == doctest::Approx(2.0 / 3.0));
    RngStream rng(61, 0);
    const auto est = lamperti_inverse_moment(5.0, 100000, rng);
    CHECK(est.formula == doctest::Approx(2.0 / 3.0 * (1.0 + 4.0 * std::exp(-2.5))));
    CHECK(std::fabs(est.mc_estimate - est.formula) < 3.0 * est.std_error);
    RngStream r2(62, 0);
    const auto p1 = lamperti_moment_mc(5.0, 1.0, 100000, r2);
    CHECK(std::fabs(p1.value - est.formula) < 3.0 * std::hypot(p1.std_error, est.std_error));
  }

  TEST_CASE("perpetuity multiplier") {
    const numerics::QuadratureSpec sq{1e-6, 1e-12, 20, numerics::RangeMap::sqrt_lower};
    CHECK(numerics::integrate(multiplier_density, 0.0, 1.0, sq).value == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(multiplier_moment(0) == doctest::Approx(1.0).epsilon(1e-10));
    // m = (1 - e^{-2J/pi})^2 with J ~ Exp(1): E[e^{-aJ}] = 1/(1+a).
    const double em = 1.0 - 2.0 / (1.0 + 2.0 / pi) + 1.0 / (1.0 + 4.0 / pi);
    CHECK(perpetuity_multiplier_mean() == doctest::Approx(em).epsilon(1e-8));
    CHECK(multiplier_moment(1) == doctest::Approx(em).epsilon(1e-8));
    CHECK(perpetuity_analytic().value == doctest::Approx(1.0 / (1.0 - em)).epsilon(1e-8));
    RngStream rng(63, 0);
    const auto mc = perpetuity(200000, rng);
    CHECK(std::fabs(mc.value - 1.0 / (1.0 - em)) < 3.0 * mc.std_error + mc.tail_bound);
    RngStream r2(63, 1);
    for (int i = 0; i < 1000; ++i) CHECK(sample_perpetuity(r2) >= 1.0);
  }
}
