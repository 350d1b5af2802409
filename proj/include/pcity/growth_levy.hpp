#ifndef PCITY_GROWTH_LEVY_HPP
#define PCITY_GROWTH_LEVY_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "pcity/rng.hpp"

namespace pcity::growth {

enum class Initial { theta0_pi, theta0_cosine };

// State of the growth process at an event time.
struct GrowthState {
  double theta = 0.0;
  double x = 0.0;
  double h = 0.0;
  double t = 0.0;  // excess time, t = s - x
  double s = 0.0;  // arc length
};

struct GrowthPath {
  std::vector<GrowthState> events;  // events[0] is the start; events[k] just after jump k
  std::optional<double> sigma;
  Initial initial = Initial::theta0_cosine;
};

inline constexpr std::size_t kMaxJumps = 1000000;

// Drift of X and H per unit excess time at angle theta:
// cos/(1-cos) and sin/(1-cos), evaluated through half angles.
double progress_rate(double theta);
double height_rate(double theta);

// theta - Delta with 1 - cos Delta = V (1 - cos theta).
double theta_after_jump(double theta, double v);
double sample_theta_jump(double theta, RngStream& rng);
double sample_initial_theta(Initial initial, RngStream& rng);

// Runs until X first reaches n. HorizonExceeded after kMaxJumps jumps.
GrowthPath simulate_growth(double n, Initial initial, RngStream& rng);

// One path, first passages of every level (levels ascending).
std::vector<double> simulate_sigma_levels(std::span<const double> levels, Initial initial, RngStream& rng);

// Same dynamics in arc-length time: jumps at rate (1 - cos theta)/2 per unit s.
// Returns the states just after each of the first `jumps` jumps.
std::vector<GrowthState> simulate_growth_arclength(std::size_t jumps, Initial initial, RngStream& rng);
// t-time version of the same record.
std::vector<GrowthState> simulate_growth_jumps(std::size_t jumps, Initial initial, RngStream& rng);

struct InitialSegmentMoments {
  double mean = 0.0;
  double second = 0.0;
};

// T1 + T2 + T1 sec U, T1,T2 ~ Exp(rate 1/4), U density (2/sqrt 3) cos u on (0, pi/3).
InitialSegmentMoments initial_segment_moments();
double sample_initial_segment(RngStream& rng);

struct SubordinatorPath {
  std::vector<double> jump_times;
  std::vector<double> marks;
  std::vector<double> xi_jumps;
  std::vector<double> eta_jumps;
  // Running values after each jump and the exact integral of exp(2 xi) up to
  // each jump time.
  std::vector<double> xi_after;
  std::vector<double> eta_after;
  std::vector<double> integral_at_jump;
  double horizon = 0.0;

  double xi_at(double t) const;
  double eta_at(double t) const;
  double integral_exp2xi(double t) const;
};

double xi_jump_from_mark(double j);
double eta_jump_from_mark(double j);

// Jumps at rate 1/2 up to time t_max.
SubordinatorPath simulate_subordinators(double t_max, RngStream& rng);
// Extends until the integral of exp(2 xi) reaches the target.
SubordinatorPath simulate_subordinators_to_integral(double integral_target, RngStream& rng);

double laplace_exponent(double q);

// inf{t : int_0^t exp(2 xi_s) ds >= n}. HorizonExceeded if the path stops short.
double tau_first_passage(const SubordinatorPath& path, double n);

// (2/3)(log n - 2 M + log(exp(2 xi)/n)) with M = xi - (3/4) tau, all at tau(n).
double tau_representation(double n, double tau, double xi_at_tau);

struct InverseMoment {
  double formula = 0.0;
  double mc_estimate = 0.0;
  double std_error = 0.0;
};

InverseMoment lamperti_inverse_moment(double n, std::size_t replicates, RngStream& rng);

// Printed closed form for E[Z_1^{-p} | Z_0 = 1/n]; kept only as a diagnostic.
double higher_moment_printed(double n, double p);
struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
};
// MC of E[(n exp(-2 xi_tau(n)))^p].
MomentEstimate lamperti_moment_mc(double n, double p, std::size_t replicates, RngStream& rng);

struct PerpetuityEstimate {
  double value = 0.0;
  std::size_t truncation_level = 0;
  double tail_bound = 0.0;
  double std_error = 0.0;
};

// E[m^k] for m = (1 - exp(-2J/pi))^2 by quadrature of its density.
double multiplier_moment(int k);
double perpetuity_multiplier_mean();
// 1 / (1 - E[m]).
PerpetuityEstimate perpetuity_analytic();
// One draw of 1 + m1 + m1 m2 + ..., truncated once the product drops below 1e-12.
double sample_perpetuity(RngStream& rng, std::size_t* terms = nullptr, double* tail = nullptr);
PerpetuityEstimate perpetuity(std::size_t replicates, RngStream& rng);

// Density of m on (0,1): (pi/4)(1 - sqrt x)^{pi/2 - 1} x^{-1/2}.
double multiplier_density(double x);

// CSV `t,theta,x,h` and `t,J,xi,eta`.
void write_growth_csv(std::ostream& out, const GrowthPath& path);
void write_subordinator_csv(std::ostream& out, const SubordinatorPath& path);

}  // namespace pcity::growth

#endif
