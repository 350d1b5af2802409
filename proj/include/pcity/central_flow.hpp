#ifndef PCITY_CENTRAL_FLOW_HPP
#define PCITY_CENTRAL_FLOW_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pcity/geom.hpp"
#include "pcity/line_process.hpp"
#include "pcity/rng.hpp"

namespace pcity::flow {

struct FlowEstimate {
  double value = 0.0;      // mean over outer replicates
  double std_error = 0.0;  // across outer replicates
  double n = 0.0;
  std::size_t outer_replicates = 0;
  std::size_t inner_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double bias_bound = 0.0;  // truncation certificate (limit flow only)
  std::vector<double> replicate_values;
  // Within-replicate sampling variance of each replicate value.
  std::vector<double> replicate_sampling_variance;
};

// Triple quadrature of int_0^pi int_0^n int_0^n exp(-(r+s-rho)/2) r s theta dr ds dtheta.
double mean_flow_quadrature(double n);

// Indicator of the centre-flow integrand for one ordered pair against a
// pattern whose conditioned line is the x-axis: both points strictly on one
// side of it, and no unconditioned line separates o from the segment.
class CenterSeparator {
 public:
  explicit CenterSeparator(std::span<const geom::Line> lines);
  bool unseparated(geom::Point p, geom::Point q) const;
  // Reference implementation using geom::separates over every line.
  bool unseparated_brute(geom::Point p, geom::Point q) const;

 private:
  std::vector<geom::Line> lines_;
  std::vector<double> r_;   // sorted offsets, all >= 0
  std::vector<double> nx_;  // normals oriented so that o is on the negative side
  std::vector<double> ny_;
};

bool center_indicator(const CenterSeparator& sep, geom::Point p, geom::Point q);

// Nested MC of E[T_n]/n^3; replicate value (1/4)(pi n^2)^2 * mean indicator / n^3.
FlowEstimate simulate_center_flow(double n, std::size_t outer, std::size_t inner, std::uint64_t seed,
                                  unsigned threads = 1);

struct LimitPair {
  double a = 1.0, b = 1.0;  // p = (-a, b)
  double u = 1.0, v = 1.0;  // q = (u, v)

  double height() const { return (b * u + a * v) / (a + u); }
};

double limit_pair_probability(const LimitPair& pair);
// Separating measure of the improper process for the pair, optionally with
// slopes restricted to |k| <= slope_cap.
double limit_separating_measure(const LimitPair& pair, double slope_cap = 0.0);

double limit_mean_quadrature();
// 2 int int (a+u) da du: inner t-integral done in closed form.
double limit_mean_closed_form();
// Measure of straddling pairs with a height above h_max: 2 - V(h_max).
double limit_height_cap_mass(double h_max);

// Acceptance rate of one pair against strip lines with positive height
// (sorted ascending by height).
bool limit_unseparated(std::span<const lines::StripLine> sorted_positive, const LimitPair& pair);

FlowEstimate simulate_limit_flow(double h_max, double y_bound, std::size_t pairs, std::size_t realizations,
                                 std::uint64_t seed, unsigned threads = 1);

struct DiskAverages {
  double network_length = 0.0;
  double mean_distance = 0.0;
  double flow_per_unit_length = 0.0;
};

DiskAverages disk_average_report(double n);

double excess_lower_bound(double n);
double lower_bound_constant();
// x g(x) limit with the exact Mills ratio in place of the Sampford bound.
double lower_bound_exact_slope();

}  // namespace pcity::flow

#endif
